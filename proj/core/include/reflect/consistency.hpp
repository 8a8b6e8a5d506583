#pragma once

// Brute-force cross-check of the prover against the comparator: no derived
// fact s ⟹ t may have the comparator place t strictly above s.

#include <cstddef>
#include <string>
#include <vector>

#include "reflect/comparator.hpp"
#include "reflect/rules.hpp"

namespace reflect {

struct ConsistencyOptions {
  std::size_t size_bound = 4;
  std::size_t budget = 1000000;
  // Checked in addition to the saturated facts; negative controls.
  std::vector<Fact> injected;
  const std::vector<Rule>* catalog = nullptr;  // defaults to rule_catalog()
};

struct Violation {
  enum class Kind {
    kGreater,       // compare(to, from) = Greater
    kStrictMutual,  // from ⟺ to derived but compare(from, to) is strict
  };
  Kind kind;
  Fact fact;
  Relation relation;  // the offending comparator answer
  std::string describe() const;
};

struct ConsistencyReport {
  std::vector<Violation> violations;
  std::size_t universe_size = 0;
  std::size_t facts = 0;
  std::size_t mutual_pairs = 0;
  std::size_t comparisons = 0;
  std::size_t unknown = 0;
  bool budget_exceeded = false;

  bool ok() const noexcept { return violations.empty(); }
};

// Saturates over all patterns of size <= size_bound; the comparator runs
// without proof search so the check stays independent of the prover.
ConsistencyReport check_consistency(const ConsistencyOptions& options = {});

}  // namespace reflect
