#include "selftest.hpp"

#include <algorithm>
#include <random>

#include "reflect/comparator.hpp"
#include "reflect/consistency.hpp"
#include "reflect/normal_form.hpp"

namespace reflect {

bool SelftestReport::ok() const noexcept {
  for (const SuiteResult& s : suites) {
    if (!s.ok()) return false;
  }
  return true;
}

namespace {

constexpr std::size_t kMaxReportedFailures = 10;

class Suite {
 public:
  explicit Suite(std::string name) { result_.name = std::move(name); }

  void check(bool ok, const std::string& what) {
    if (ok) {
      ++result_.passed;
      return;
    }
    ++result_.failed;
    if (result_.failures.size() < kMaxReportedFailures) {
      result_.failures.push_back(what);
    }
  }

  void pass(std::size_t n) { result_.passed += n; }

  SuiteResult finish() { return std::move(result_); }

 private:
  SuiteResult result_;
};

Relation cmp(const char* a, const char* b) {
  return compare(parse(a), parse(b)).relation;
}

std::string words(const char* a, const char* b, Relation expected) {
  return std::string("compare(") + a + ", " + b + ") != " +
         to_string(expected);
}

SuiteResult identity_suite(std::size_t budget) {
  Suite s("identities");
  auto expect = [&](const std::string& a, const std::string& b, Relation r) {
    s.check(cmp(a.c_str(), b.c_str()) == r, words(a.c_str(), b.c_str(), r));
  };
  auto pis = [](std::size_t k) { return std::string(k, 'p'); };

  expect("p", "s", Relation::kLess);
  for (std::size_t k = 1; k <= 4; ++k) expect(pis(k), pis(k + 1), Relation::kLess);
  expect(pis(4), "s", Relation::kLess);
  for (std::size_t k = 1; k <= 4; ++k) expect("s", "s" + pis(k), Relation::kEqual);
  expect("sps", "s&p", Relation::kLess);
  expect("s&p", "ss", Relation::kLess);
  expect("ps", "ps&pp", Relation::kEqual);
  expect("ps", "ps&ppp", Relation::kEqual);
  expect("p(s&p(s&p))", "ss", Relation::kLess);
  for (std::size_t k = 1; k <= 3; ++k) {
    expect("s(s&" + pis(k) + ")", "ss", Relation::kEqual);
  }
  expect("ss", "sss", Relation::kLess);
  expect("ss&p", "sss", Relation::kUnknown);

  // Contraction holds as an implication; the ordinals ω·2 and ω show the
  // converse does not.
  ProofResult contraction = prove({parse("spsp"), parse("sp")}, 4, budget);
  s.check(contraction.derivation && verify_derivation(*contraction.derivation),
          "σπσπ ⟹ σπ not derived at size 4");
  ProofResult padding = prove({parse("s"), parse("spp")}, 5, budget);
  s.check(padding.derivation && verify_derivation(*padding.derivation),
          "σ ⟹ σππ not derived at size 5");

  const std::pair<const char*, const char*> ranks[] = {
      {"p", "1"}, {"pp", "2"}, {"s", "w"}, {"ps", "w + 1"},
      {"s&p", "w^2"}, {"ss", "w^w"}};
  for (const auto& [w, r] : ranks) {
    const std::string got = rank(parse(w)).to_string();
    s.check(got == r, std::string("rank(") + w + ") = " + got + ", want " + r);
  }
  return s.finish();
}

SuiteResult fragment_suite(std::size_t size_bound) {
  Suite s("fragments");
  std::vector<Pattern> free_linear;
  for (const Pattern& p : enumerate_patterns(size_bound)) {
    if (contains_sigma_sigma(p)) continue;
    try {
      const TwoNF w = to_two_nf(p).form;
      s.check(to_two_nf(two_nf_to_pattern(w)).form == w,
              "2-normal form of " + render(p) + " is not idempotent");
    } catch (const std::exception& e) {
      s.check(false, render(p) + ": " + e.what());
      continue;
    }
    s.check(compare(p, sigma_pow(2)).relation == Relation::kLess,
            render(p) + " is not below σσ");
    if (is_linear(p)) free_linear.push_back(p);
  }
  for (const Pattern& p : free_linear) {
    const Ordinal lp = linear_ordinal(p);
    const Ordinal np = two_nf_ordinal(to_two_nf(p).form);
    for (const Pattern& q : free_linear) {
      const bool agree = (lp <=> linear_ordinal(q)) ==
                         (np <=> two_nf_ordinal(to_two_nf(q).form));
      s.check(agree, "linear and 2-normal-form orders disagree on " +
                         render(p) + ", " + render(q));
    }
  }
  return s.finish();
}

Ordinal random_ordinal(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> len(0, 4);
  std::uniform_int_distribution<std::uint64_t> deg(0, 6);
  std::uniform_int_distribution<std::uint64_t> coeff(1, 5);
  std::vector<std::uint64_t> degrees;
  for (int i = len(rng); i > 0; --i) degrees.push_back(deg(rng));
  std::sort(degrees.rbegin(), degrees.rend());
  degrees.erase(std::unique(degrees.begin(), degrees.end()), degrees.end());
  std::vector<OrdinalTerm> terms;
  for (std::uint64_t d : degrees) terms.push_back({d, coeff(rng)});
  return Ordinal(std::move(terms));
}

SuiteResult ordinal_suite(std::uint64_t seed) {
  Suite s("ordinal-arithmetic");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> deg(0, 6);
  for (int i = 0; i < 10000; ++i) {
    const Ordinal a = random_ordinal(rng);
    const Ordinal b = random_ordinal(rng);
    const Ordinal c = random_ordinal(rng);
    s.check((a + b) + c == a + (b + c), "associativity");
    std::uint64_t n = deg(rng), m = deg(rng);
    if (n > m) std::swap(n, m);
    if (n < m) {
      s.check(a + Ordinal::omega_pow(n) + Ordinal::omega_pow(m) ==
                  a + Ordinal::omega_pow(m),
              "absorption");
    }
    const int outcomes = (a < b) + (a == b) + (a > b);
    s.check(outcomes == 1 && ((a < b) == (b > a)), "trichotomy");
    if (a < b && b < c) s.check(a < c, "transitivity");
  }
  return s.finish();
}

SuiteResult consistency_suite(const SelftestOptions& options) {
  Suite s("consistency");
  ConsistencyOptions c;
  c.size_bound = options.size_bound;
  c.budget = options.budget;
  c.catalog = options.catalog;
  const ConsistencyReport report = check_consistency(c);
  for (const Violation& v : report.violations) s.check(false, v.describe());
  s.check(!report.budget_exceeded, "saturation budget exhausted");
  s.pass(report.facts + report.mutual_pairs - report.violations.size());
  return s.finish();
}

}  // namespace

SelftestReport run_selftest(const SelftestOptions& options) {
  SelftestReport report;
  report.suites.push_back(identity_suite(options.budget));
  report.suites.push_back(fragment_suite(options.size_bound));
  report.suites.push_back(ordinal_suite(options.seed));
  report.suites.push_back(consistency_suite(options));
  return report;
}

}  // namespace reflect
