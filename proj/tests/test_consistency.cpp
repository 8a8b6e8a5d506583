#include <gtest/gtest.h>

#include "reflect/consistency.hpp"

namespace reflect {
namespace {

TEST(Consistency, CleanAtSizeFour) {
  const ConsistencyReport r = check_consistency({});
  EXPECT_TRUE(r.ok()) << (r.ok() ? "" : r.violations[0].describe());
  EXPECT_FALSE(r.budget_exceeded);
  EXPECT_EQ(r.universe_size, enumerate_patterns(4).size());
  EXPECT_GT(r.mutual_pairs, 0u);
  EXPECT_GE(r.comparisons, r.facts);
}

TEST(Consistency, KnownFactIsNotAViolation) {
  ConsistencyOptions opt;
  opt.size_bound = 2;
  opt.injected = {{parse("ss"), parse("s")}};
  EXPECT_TRUE(check_consistency(opt).ok());
}

TEST(Consistency, InjectedFactIsFlagged) {
  ConsistencyOptions opt;
  opt.injected = {{parse("p"), parse("s")}};
  const ConsistencyReport r = check_consistency(opt);
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations[0].kind, Violation::Kind::kGreater);
  EXPECT_EQ(r.violations[0].fact.from, parse("p"));
  EXPECT_NE(r.violations[0].describe().find("Greater"), std::string::npos);
}

TEST(Consistency, UnsoundRuleIsCaught) {
  // s ⟹ σ(s) would make every pattern imply its σ-image.
  std::vector<Rule> catalog = rule_catalog();
  Rule bogus = *find_rule("Refl");
  bogus.id = "Bogus";
  bogus.match = [](const Pattern& from, const Universe& u,
                   std::vector<Substitution>& out) {
    if (u.contains(sigma(from))) out.push_back({{"s", from}});
  };
  bogus.build = [](const Substitution& sub) -> std::optional<Instance> {
    const Pattern s = std::get<Pattern>(sub.at("s"));
    return Instance{{s, sigma(s)}, {}};
  };
  catalog.push_back(bogus);
  ConsistencyOptions opt;
  opt.size_bound = 3;
  opt.catalog = &catalog;
  const ConsistencyReport r = check_consistency(opt);
  EXPECT_FALSE(r.ok());
}

}  // namespace
}  // namespace reflect
