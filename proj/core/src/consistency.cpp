#include "reflect/consistency.hpp"

#include <unordered_map>
#include <utility>

namespace reflect {

std::string Violation::describe() const {
  const std::string f = render(fact.from) + " ⟹ " + render(fact.to);
  if (kind == Kind::kGreater) {
    return "derived " + f + " but compare(" + render(fact.to) + ", " +
           render(fact.from) + ") = Greater";
  }
  return "derived mutual " + f + " but compare(" + render(fact.from) + ", " +
         render(fact.to) + ") = " + reflect::to_string(relation);
}

ConsistencyReport check_consistency(const ConsistencyOptions& options) {
  SaturateOptions sat;
  sat.budget = options.budget;
  sat.catalog = options.catalog;
  const Universe universe(enumerate_patterns(options.size_bound));
  const FactBase fb = saturate(universe, sat);

  ConsistencyReport report;
  report.universe_size = universe.size();
  report.facts = fb.size();
  report.budget_exceeded = fb.budget_exceeded();

  std::vector<Fact> facts = fb.facts();
  facts.insert(facts.end(), options.injected.begin(), options.injected.end());

  CompareOptions cmp;
  cmp.use_prover = false;
  auto relation = [&](const Pattern& x, const Pattern& y) {
    ++report.comparisons;
    Relation r = compare(x, y, cmp).relation;
    if (r == Relation::kUnknown) ++report.unknown;
    return r;
  };

  // Directed pairs present, for the mutual check.
  std::unordered_map<Pattern, std::vector<Pattern>, PatternHash> succ;
  for (const Fact& f : facts) succ[f.from].push_back(f.to);
  auto has = [&](const Pattern& x, const Pattern& y) {
    auto it = succ.find(x);
    if (it == succ.end()) return false;
    for (const Pattern& z : it->second) {
      if (z == y) return true;
    }
    return false;
  };

  for (const Fact& f : facts) {
    const Relation r = relation(f.to, f.from);
    if (r == Relation::kGreater) {
      report.violations.push_back({Violation::Kind::kGreater, f, r});
    }
    if (f.from < f.to && has(f.to, f.from)) {
      ++report.mutual_pairs;
      const Relation m = relation(f.from, f.to);
      if (m == Relation::kLess || m == Relation::kGreater) {
        report.violations.push_back({Violation::Kind::kStrictMutual, f, m});
      }
    }
  }
  return report;
}

}  // namespace reflect
