#pragma once

// Directed implication schemas between reflection patterns and a bounded
// forward-chaining prover over a finite pattern universe. A fact s ⟹ t
// reads "every s-reflecting ordinal is t-reflecting", i.e. t ≤ s in the
// reflection order.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "reflect/pattern.hpp"

namespace reflect {

struct Fact {
  Pattern from;
  Pattern to;
  friend bool operator==(const Fact&, const Fact&) = default;
};

using SubstValue = std::variant<Pattern, std::uint64_t>;
using Substitution = std::map<std::string, SubstValue>;

// A rule instance: the conclusion holds whenever all premises hold.
struct Instance {
  Fact conclusion;
  std::vector<Fact> premises;
};

// A finite, canonical, duplicate-free pattern set in structural order.
class Universe {
 public:
  Universe() = default;
  explicit Universe(std::vector<Pattern> patterns);

  const std::vector<Pattern>& patterns() const noexcept { return patterns_; }
  std::size_t size() const noexcept { return patterns_.size(); }
  std::size_t max_pattern_size() const noexcept { return max_size_; }
  // Index of p, or -1 when p is not a member.
  std::ptrdiff_t index_of(const Pattern& p) const;
  bool contains(const Pattern& p) const { return index_of(p) >= 0; }

 private:
  std::vector<Pattern> patterns_;
  std::unordered_map<Pattern, std::ptrdiff_t, PatternHash> index_;
  std::size_t max_size_ = 0;
};

enum class RuleKind { kAxiom, kInference };

struct Rule {
  std::string id;
  std::string citation;
  std::string schema;
  std::string side_condition;  // empty when unconditional
  RuleKind kind = RuleKind::kAxiom;
  // Axioms only: every substitution under which `from` is the left side of
  // an instance whose right side has size <= universe.max_pattern_size().
  std::function<void(const Pattern& from, const Universe& universe,
                     std::vector<Substitution>& out)>
      match;
  // Instantiates the schema; nullopt when a variable is missing or the side
  // condition fails. This is the certificate checker's only view of a rule.
  std::function<std::optional<Instance>(const Substitution&)> build;
};

// R1a … R11, then W1 W2 W3 M1 M2 M3 T Refl.
const std::vector<Rule>& rule_catalog();
const Rule* find_rule(std::string_view id,
                      const std::vector<Rule>& catalog = rule_catalog());

struct Step {
  std::string rule;
  Substitution subst;
  Fact fact;
  std::vector<std::size_t> premises;  // indices of earlier steps
};

struct Derivation {
  Fact goal;
  std::vector<Step> steps;
};

// Replays every step through Rule::build. On failure returns false and
// describes the first bad step in *error when error is non-null.
bool verify_derivation(const Derivation& d, std::string* error = nullptr,
                       const std::vector<Rule>& catalog = rule_catalog());

struct SaturateOptions {
  std::size_t budget = 100000;  // maximum number of facts
  std::optional<Fact> stop_at;  // stop as soon as this fact is derived
  const std::vector<Rule>* catalog = nullptr;  // defaults to rule_catalog()
};

class FactBase {
 public:
  const Universe& universe() const noexcept { return universe_; }
  bool budget_exceeded() const noexcept { return budget_exceeded_; }
  std::size_t size() const noexcept { return records_.size(); }
  bool contains(const Fact& f) const;
  // All facts in derivation order.
  std::vector<Fact> facts() const;
  std::optional<Derivation> derivation(const Fact& f) const;
  // Number of facts produced by each rule id.
  std::map<std::string, std::size_t> rule_counts() const;

 private:
  friend class Saturator;
  struct Record {
    std::int32_t from;
    std::int32_t to;
    std::int32_t rule;
    std::int32_t a = -1;  // premise fact, or axiom substitution index
    std::int32_t b = -1;  // second premise fact
    std::int32_t c = -1;  // context pattern (M3)
  };
  static std::uint64_t key(std::int32_t from, std::int32_t to) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(from)) << 32) |
           static_cast<std::uint32_t>(to);
  }
  std::ptrdiff_t find(const Fact& f) const;
  Step make_step(const Record& r) const;

  Universe universe_;
  const std::vector<Rule>* catalog_ = nullptr;
  std::vector<Record> records_;
  std::unordered_map<std::uint64_t, std::int32_t> by_key_;
  std::vector<Substitution> substs_;
  std::vector<Pattern> contexts_;
  bool budget_exceeded_ = false;
};

// One-step consequences of a single rule (by id) not already in `facts`,
// restricted to facts whose both sides lie in the universe.
std::vector<Fact> apply_rule(std::string_view rule_id,
                             const std::vector<Fact>& facts,
                             const Universe& universe);

FactBase saturate(const Universe& universe, const SaturateOptions& options = {});

struct ProofResult {
  std::optional<Derivation> derivation;
  bool budget_exceeded = false;
  std::size_t facts = 0;
  std::size_t universe_size = 0;
};

// Saturates over all patterns of size <= size_bound plus the subterms of
// the goal. Absence of a derivation is not a refutation.
ProofResult prove(const Fact& goal, std::size_t size_bound,
                  std::size_t budget);

// The universe used by prove_focused: patterns of size <= min(size_bound, 3),
// subterms of both goal patterns, their sub-conjunctions, and one-step axiom
// images of those subterms of size <= size_bound (with their subterms).
Universe focused_universe(const Fact& goal, std::size_t size_bound);
ProofResult prove_focused(const Fact& goal, std::size_t size_bound,
                          std::size_t budget);

}  // namespace reflect
