#include <gtest/gtest.h>

#include <set>
#include <unordered_set>

#include "oracles.hpp"
#include "reflect/pattern.hpp"

namespace reflect {
namespace {

Pattern S(Pattern a = {}) { return sigma(std::move(a)); }
Pattern P(Pattern a = {}) { return pi(std::move(a)); }

TEST(Parse, Words) {
  EXPECT_EQ(parse("sps"), S(P(S())));
  EXPECT_EQ(parse("s&p"), conjoin(S(), P()));
  EXPECT_EQ(parse("(s&p)(s&p)"), conjoin(S(), P(conjoin(S(), P()))));
  EXPECT_EQ(parse(""), Pattern());
  EXPECT_EQ(parse("e"), Pattern());
  EXPECT_EQ(parse("spp"), S(P(P())));
}

TEST(Parse, UnicodeAndWhitespace) {
  EXPECT_EQ(parse("σπσ"), parse("sps"));
  EXPECT_EQ(parse("σ ∧ π"), parse("s&p"));
  EXPECT_EQ(parse(" s ( s & p ) "), parse("s(s&p)"));
}

TEST(Parse, AmpersandIsLowestAndRightAssociative) {
  EXPECT_EQ(parse("sp&s&p"), conjoin({S(P()), S(), P()}));
  EXPECT_EQ(parse("s&pps"), conjoin(S(), P(P(S()))));
}

TEST(Parse, SyntaxErrorsCarryOffsets) {
  auto offset_of = [](std::string_view text) -> std::size_t {
    try {
      parse(text);
    } catch (const SyntaxError& e) {
      return e.offset();
    }
    ADD_FAILURE() << "no error for " << text;
    return 0;
  };
  EXPECT_EQ(offset_of("x"), 0u);
  EXPECT_EQ(offset_of("spx"), 2u);
  EXPECT_EQ(offset_of("s)"), 1u);
  EXPECT_THROW(parse("s(p"), SyntaxError);
  EXPECT_THROW(parse("(("), SyntaxError);
}

TEST(Render, Styles) {
  const Pattern ss = conjoin(S(), P(conjoin(S(), P())));
  EXPECT_EQ(render(ss), "s&p(s&p)");
  EXPECT_EQ(render(Pattern()), "");
  EXPECT_EQ(render(S(P(S())), RenderStyle::kFullForm), "σ¹₁(π¹₁(σ¹₁))");
  EXPECT_EQ(render(S(P(S())), RenderStyle::kUnicode), "σπσ");
  EXPECT_EQ(render(conjoin(S(), P()), RenderStyle::kUnicode), "σ∧π");
}

TEST(Render, RoundTripsEveryPatternUpToSizeEight) {
  for (const Pattern& p : enumerate_patterns(8)) {
    ASSERT_EQ(parse(render(p)), p) << render(p);
    ASSERT_EQ(parse(render(p, RenderStyle::kUnicode)), p) << render(p);
    if (is_linear(p)) {
      const std::string w = render(p);
      EXPECT_EQ(w.find_first_of("&()"), std::string::npos) << w;
    }
  }
}

TEST(Canonicalize, Examples) {
  const Pattern raw = Pattern::make_conj(
      {Pattern::make_conj({S(), P()}), S()});
  EXPECT_EQ(canonicalize(raw), conjoin(S(), P()));
  EXPECT_EQ(canonicalize(Pattern::make_conj(
                {S(), Pattern::make_conj({P(), P()})})),
            conjoin(S(), P()));
  EXPECT_EQ(canonicalize(Pattern::make_sigma(Pattern::make_conj({P(), P()}))),
            S(P()));
  // Empty conjuncts are units.
  EXPECT_EQ(canonicalize(Pattern::make_conj({Pattern(), P()})), P());
}

TEST(Canonicalize, IdempotentAndSizeNonIncreasing) {
  for (std::size_t n = 0; n <= 5; ++n) {
    for (const Pattern& raw : oracle::raw_terms(n)) {
      const Pattern c = canonicalize(raw);
      ASSERT_TRUE(is_canonical(c));
      ASSERT_EQ(canonicalize(c), c);
      ASSERT_LE(c.size(), raw.size());
    }
  }
}

TEST(Enumerate, MatchesRawTermOracle) {
  for (std::size_t n = 0; n <= 6; ++n) {
    std::set<Pattern> expected;
    for (std::size_t m = 0; m <= n; ++m) {
      for (const Pattern& raw : oracle::raw_terms(m)) {
        expected.insert(canonicalize(raw));
      }
    }
    const std::vector<Pattern> got = enumerate_patterns(n);
    std::set<Pattern> got_set(got.begin(), got.end());
    EXPECT_EQ(got_set.size(), got.size()) << "duplicates at " << n;
    EXPECT_EQ(got_set, expected) << "size bound " << n;
    EXPECT_TRUE(std::is_sorted(got.begin(), got.end()));
  }
}

TEST(Enumerate, CountsAndLinearExamples) {
  const std::size_t cumulative[] = {1, 3, 7, 16, 42, 116, 336};
  for (std::size_t n = 0; n < std::size(cumulative); ++n) {
    EXPECT_EQ(enumerate_patterns(n).size(), cumulative[n]) << n;
  }
  EXPECT_EQ(enumerate_patterns(1, true),
            (std::vector<Pattern>{Pattern(), S(), P()}));
  EXPECT_EQ(enumerate_patterns(2, true).size(), 7u);
  EXPECT_EQ(enumerate_patterns(4, true).size(), 31u);
  EXPECT_EQ(enumerate_patterns(8, true).size(), 511u);
}

TEST(Concat, Examples) {
  const Pattern sp = conjoin(S(), P());
  EXPECT_EQ(concat(sp, sp), parse("s&p(s&p)"));
  EXPECT_EQ(concat(Pattern(), P()), P());
  EXPECT_EQ(concat(S(P()), S()), S(P(S())));
}

TEST(Concat, AssociativeWithEmptyUnit) {
  const std::vector<Pattern> small = enumerate_patterns(3);
  for (const Pattern& a : small) {
    EXPECT_EQ(concat(a, Pattern()), a);
    EXPECT_EQ(concat(Pattern(), a), a);
    for (const Pattern& b : small) {
      for (const Pattern& c : small) {
        ASSERT_EQ(concat(a, concat(b, c)), concat(concat(a, b), c))
            << render(a) << " " << render(b) << " " << render(c);
      }
    }
  }
}

TEST(SigmaSigma, Examples) {
  EXPECT_TRUE(contains_sigma_sigma(parse("ss")));
  EXPECT_FALSE(contains_sigma_sigma(parse("sps")));
  EXPECT_TRUE(contains_sigma_sigma(parse("s(s&p)")));
  EXPECT_TRUE(contains_sigma_sigma(parse("s(p&s)")));
  EXPECT_FALSE(contains_sigma_sigma(parse("s&p(s&p)")));
  EXPECT_EQ(max_sigma_run(parse("ssps")), 2u);
  EXPECT_EQ(max_sigma_run(parse("s(ss&p)")), 3u);
  EXPECT_EQ(max_sigma_run(parse("pp")), 0u);
}

TEST(SigmaSigma, PreservedByConcat) {
  const std::vector<Pattern> small = enumerate_patterns(4);
  for (const Pattern& s : small) {
    for (const Pattern& t : small) {
      if (contains_sigma_sigma(s) || contains_sigma_sigma(t)) {
        ASSERT_TRUE(contains_sigma_sigma(concat(s, t)))
            << render(s) << " " << render(t);
      }
    }
  }
}

TEST(Linear, Examples) {
  EXPECT_TRUE(is_linear(parse("sps")));
  EXPECT_FALSE(is_linear(parse("s&p")));
  EXPECT_TRUE(is_linear(Pattern()));
}

TEST(Size, CountsSymbols) {
  EXPECT_EQ(parse("").size(), 0u);
  EXPECT_EQ(parse("sps").size(), 3u);
  EXPECT_EQ(parse("s&p").size(), 3u);
  EXPECT_EQ(parse("s&p&pp").size(), 6u);
}

TEST(Subterms, IncludesSelfAndEmpty) {
  const std::vector<Pattern> subs = subterms(parse("s(s&p)"));
  const std::vector<Pattern> expected{Pattern(), S(), P(), conjoin(S(), P()),
                                      parse("s(s&p)")};
  EXPECT_EQ(subs, expected);
}

TEST(Combinator, Examples) {
  EXPECT_EQ(expand_combinator(0, 3), parse("spspsp"));
  EXPECT_EQ(expand_combinator(2, 0, P()), P());
  EXPECT_EQ(expand_combinator(1, 1), parse("s&psp"));
  EXPECT_EQ(expand_combinator(1, 2), parse("s&psp(s&psp)"));
  EXPECT_EQ(expand_combinator(2, 1, P()), parse("s&ppspp"));
}

TEST(Hash, EqualPatternsHashEqual) {
  std::unordered_set<Pattern, PatternHash> seen;
  for (const Pattern& p : enumerate_patterns(6)) {
    EXPECT_TRUE(seen.insert(p).second);
    EXPECT_EQ(parse(render(p)).hash(), p.hash());
  }
}

}  // namespace
}  // namespace reflect
