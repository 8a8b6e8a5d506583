#include <gtest/gtest.h>

#include "reflect/comparator.hpp"
#include "reflect/normal_form.hpp"

namespace reflect {
namespace {

Relation rel(const char* a, const char* b) {
  return compare(parse(a), parse(b)).relation;
}

CompareOptions no_prover() {
  CompareOptions o;
  o.use_prover = false;
  return o;
}

// Relation matrix over ps without proof search.
std::vector<std::vector<Relation>> matrix(const std::vector<Pattern>& ps) {
  std::vector<std::vector<Relation>> m(ps.size(),
                                       std::vector<Relation>(ps.size()));
  for (std::size_t i = 0; i < ps.size(); ++i) {
    for (std::size_t j = 0; j < ps.size(); ++j) {
      m[i][j] = compare(ps[i], ps[j], no_prover()).relation;
    }
  }
  return m;
}

std::vector<Pattern> filtered(std::size_t max_size, bool linear,
                              bool sigma_sigma_free) {
  std::vector<Pattern> out;
  for (const Pattern& p : enumerate_patterns(max_size, linear)) {
    if (!sigma_sigma_free || !contains_sigma_sigma(p)) out.push_back(p);
  }
  return out;
}

bool at_most(Relation r) { return r == Relation::kLess || r == Relation::kEqual; }

TEST(Compare, Examples) {
  EXPECT_EQ(rel("p", "s"), Relation::kLess);
  EXPECT_EQ(rel("s", "sp"), Relation::kEqual);
  EXPECT_EQ(rel("sps", "ss"), Relation::kLess);
  EXPECT_EQ(rel("p(s&p(s&p))", "ss"), Relation::kLess);
  EXPECT_EQ(rel("ss", "sss"), Relation::kLess);
  EXPECT_EQ(rel("ss&p", "sss"), Relation::kUnknown);
  EXPECT_EQ(rel("", ""), Relation::kEqual);
  EXPECT_EQ(rel("sps", "s&p"), Relation::kLess);
  EXPECT_EQ(rel("s&p", "ss"), Relation::kLess);
  EXPECT_EQ(rel("ps", "ps&pp"), Relation::kEqual);
  EXPECT_EQ(rel("ps", "ps&ppp"), Relation::kEqual);
}

TEST(Compare, PiChainBelowSigma) {
  for (std::size_t k = 1; k <= 4; ++k) {
    EXPECT_EQ(compare(pi_pow(k), pi_pow(k + 1)).relation, Relation::kLess);
    EXPECT_EQ(compare(sigma(), sigma(pi_pow(k))).relation, Relation::kEqual);
  }
  EXPECT_EQ(compare(pi_pow(4), sigma()).relation, Relation::kLess);
}

TEST(Compare, SigmaOfSigmaConjPiChainDeterminedByProofSearch) {
  for (std::size_t k = 1; k <= 3; ++k) {
    const Verdict v = compare(sigma(conjoin(sigma(), pi_pow(k))), sigma_pow(2));
    EXPECT_EQ(v.branch, Branch::kOpen);
    EXPECT_TRUE(v.prover_consulted);
    EXPECT_EQ(v.relation, Relation::kEqual) << v.explanation;
    ASSERT_TRUE(v.a_implies_b && v.b_implies_a);
    EXPECT_TRUE(verify_derivation(*v.a_implies_b));
    EXPECT_TRUE(verify_derivation(*v.b_implies_a));
  }
}

TEST(Compare, OpenBranchWithoutProverIsUnknown) {
  const Verdict v = compare(parse("s(s&p)"), parse("ss"), no_prover());
  EXPECT_EQ(v.relation, Relation::kUnknown);
  EXPECT_FALSE(v.prover_consulted);
  EXPECT_EQ(compare(parse("ss&p"), parse("ss&p"), no_prover()).relation,
            Relation::kEqual);
}

TEST(Compare, CanonicalizesArguments) {
  EXPECT_EQ(rel("(s&p)&s", "p&s"), Relation::kEqual);
  EXPECT_EQ(rel("s&(p&p)", "s&p"), Relation::kEqual);
}

TEST(CompareProperty, AntisymmetricSwap) {
  const std::vector<Pattern> ps = enumerate_patterns(4);
  for (const Pattern& a : ps) {
    for (const Pattern& b : ps) {
      const Relation ab = compare(a, b, no_prover()).relation;
      const Relation ba = compare(b, a, no_prover()).relation;
      ASSERT_EQ(ab, flip(ba)) << render(a) << " vs " << render(b);
    }
    ASSERT_EQ(compare(a, a).relation, Relation::kEqual);
  }
}

TEST(CompareProperty, AntisymmetricSwapWithProofSearch) {
  for (const char* a : {"s(s&p)", "ss&p", "s(s&pp)", "ss&s"}) {
    for (const char* b : {"ss", "sss", "ss&p"}) {
      ASSERT_EQ(rel(a, b), flip(rel(b, a))) << a << " vs " << b;
    }
  }
}

TEST(CompareProperty, TotalOnSigmaSigmaFreePatterns) {
  const std::vector<Pattern> ps = filtered(6, false, true);
  for (const Pattern& a : ps) {
    for (const Pattern& b : ps) {
      ASSERT_NE(compare(a, b, no_prover()).relation, Relation::kUnknown);
    }
    ASSERT_EQ(compare(a, sigma_pow(2), no_prover()).relation, Relation::kLess);
  }
}

TEST(CompareProperty, TotalOnLinearPatterns) {
  const std::vector<Pattern> ps = enumerate_patterns(8, true);
  ASSERT_EQ(ps.size(), 511u);
  for (const Pattern& a : ps) {
    for (const Pattern& b : ps) {
      ASSERT_NE(compare(a, b, no_prover()).relation, Relation::kUnknown);
    }
  }
}

TEST(CompareProperty, TransitiveOnDecidedTriples) {
  const std::vector<Pattern> ps = enumerate_patterns(4);
  const auto m = matrix(ps);
  for (std::size_t i = 0; i < ps.size(); ++i) {
    for (std::size_t j = 0; j < ps.size(); ++j) {
      if (!at_most(m[i][j])) continue;
      for (std::size_t k = 0; k < ps.size(); ++k) {
        if (!at_most(m[j][k])) continue;
        if (m[i][k] == Relation::kUnknown) continue;
        ASSERT_TRUE(at_most(m[i][k]))
            << render(ps[i]) << " " << render(ps[j]) << " " << render(ps[k]);
        if (m[i][j] == Relation::kLess || m[j][k] == Relation::kLess) {
          ASSERT_EQ(m[i][k], Relation::kLess);
        }
      }
    }
  }
}

TEST(CompareProperty, AbsorptionClasses) {
  for (std::size_t m = 1; m <= 3; ++m) {
    for (std::size_t n = 0; n < m; ++n) {
      for (const Pattern& s : enumerate_patterns(2, true)) {
        EXPECT_EQ(compare(sigma_pow(m, pi(s)),
                          sigma_pow(m, pi(sigma_pow(n, pi(s)))))
                      .relation,
                  Relation::kEqual);
      }
    }
  }
  for (std::size_t n = 1; n <= 4; ++n) {
    EXPECT_EQ(compare(sigma(pi_pow(n, sigma())), parse("sps")).relation,
              Relation::kEqual);
  }
}

TEST(CompareProperty, SigmaPowersAreCofinalAmongLinearPatterns) {
  for (const Pattern& p : enumerate_patterns(6, true)) {
    EXPECT_EQ(compare(p, sigma_pow(p.size() + 1)).relation, Relation::kLess)
        << render(p);
  }
}

TEST(Rank, Examples) {
  EXPECT_EQ(rank(parse("p")).to_string(), "1");
  EXPECT_EQ(rank(parse("pp")).to_string(), "2");
  EXPECT_EQ(rank(parse("s")).to_string(), "w");
  EXPECT_EQ(rank(parse("ps")).to_string(), "w + 1");
  EXPECT_EQ(rank(parse("s&p")).to_string(), "w^2");
  EXPECT_EQ(rank(parse("ss")).kind, Rank::Kind::kOmegaOmega);
  EXPECT_EQ(rank(parse("ss")).to_string(), "w^w");
  EXPECT_EQ(rank(parse("s(s&p)")).kind, Rank::Kind::kOmegaOmega);
  EXPECT_EQ(rank(parse("ssp")).kind, Rank::Kind::kOmegaOmega);
  EXPECT_EQ(rank(parse("sss")).kind, Rank::Kind::kUndetermined);
  EXPECT_EQ(rank(parse("ss&pss")).to_string(), "undetermined");
}

TEST(Rank, ClassesAgreeWithTwoNF) {
  EXPECT_EQ(rank_class(parse("p")).value, Ordinal::natural(1));
  EXPECT_EQ(rank_class(parse("s&p")).value, Ordinal::omega_pow(2));
  EXPECT_EQ(rank_class(parse("ssps")).kind,
            RankClass::Kind::kSigmaSigmaCeiling);
  EXPECT_EQ(rank_class(parse("ssps")).to_string(), ">= w^w");
  for (const Pattern& p : filtered(5, false, true)) {
    ASSERT_EQ(rank(p).value, two_nf_ordinal(to_two_nf(p).form));
  }
}

TEST(ExplainOrder, Branches) {
  const Verdict i = explain_order(parse("p"), parse("s"));
  EXPECT_EQ(i.branch, Branch::kSigmaSigmaFree);
  EXPECT_EQ(roman(i.branch), "i");
  EXPECT_EQ(i.ordinal_a, Ordinal::natural(1));
  EXPECT_EQ(i.ordinal_b, Ordinal::omega_pow(1));
  EXPECT_EQ(i.justification, justification(Branch::kSigmaSigmaFree));

  const Verdict ii = explain_order(parse("s&p"), parse("ss"));
  EXPECT_EQ(ii.branch, Branch::kMixed);
  EXPECT_EQ(ii.relation, Relation::kLess);
  EXPECT_FALSE(ii.ordinal_a);
  EXPECT_EQ(ii.rank_b.kind, RankClass::Kind::kSigmaSigmaCeiling);

  const Verdict iii = explain_order(parse("ss"), parse("sss"));
  EXPECT_EQ(iii.branch, Branch::kLinear);
  EXPECT_EQ(iii.ordinal_a, Ordinal::omega_pow(2));

  const Verdict iv = explain_order(parse("ss&p"), parse("sss"));
  EXPECT_EQ(iv.branch, Branch::kOpen);
  EXPECT_EQ(iv.relation, Relation::kUnknown);
  EXPECT_TRUE(iv.prover_consulted);

  const Verdict empty = explain_order(Pattern(), Pattern());
  EXPECT_EQ(empty.branch, Branch::kSigmaSigmaFree);
  EXPECT_EQ(empty.relation, Relation::kEqual);
}

TEST(Names, Strings) {
  EXPECT_EQ(to_string(Relation::kLess), "Less");
  EXPECT_EQ(symbol(Relation::kUnknown), "?");
  EXPECT_EQ(to_string(Branch::kOpen), "open");
  EXPECT_EQ(roman(Branch::kLinear), "iii");
  EXPECT_EQ(flip(Relation::kEqual), Relation::kEqual);
  EXPECT_EQ(flip(Relation::kLess), Relation::kGreater);
}

}  // namespace
}  // namespace reflect
