#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "reflect/rules.hpp"

namespace reflect {

struct SuiteResult {
  std::string name;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::vector<std::string> failures;  // first few only

  bool ok() const noexcept { return failed == 0; }
};

struct SelftestReport {
  std::vector<SuiteResult> suites;

  bool ok() const noexcept;
};

struct SelftestOptions {
  std::size_t size_bound = 4;
  std::size_t budget = 1000000;
  std::uint64_t seed = 20240611;
  const std::vector<Rule>* catalog = nullptr;  // defaults to rule_catalog()
};

// Known identities of the reflection order, fragment agreement of the two
// ordinal assignments, ordinal arithmetic laws, and the prover/comparator
// consistency check over patterns of size <= size_bound.
SelftestReport run_selftest(const SelftestOptions& options = {});

}  // namespace reflect
