#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <sstream>

#include "reflect/json.hpp"
#include "selftest.hpp"

namespace reflect {

namespace {

using nlohmann::json;

constexpr std::size_t kDefaultBudget = 100000;

struct Globals {
  std::string format = "text";
  std::size_t budget = kDefaultBudget;
  bool strict = false;

  bool json() const { return format == "json"; }
};

// The empty pattern renders as "", which is awkward on a terminal.
std::string word(const Pattern& p) { return p.is_empty() ? "e" : render(p); }

std::string emit(const json& j) { return j.dump(2) + "\n"; }

std::string subst_text(const Substitution& subst) {
  std::string out;
  for (const auto& [var, value] : subst) {
    if (!out.empty()) out += ", ";
    out += var + "=";
    if (const auto* p = std::get_if<Pattern>(&value)) {
      out += word(*p);
    } else {
      out += std::to_string(std::get<std::uint64_t>(value));
    }
  }
  return out;
}

void print_derivation(const Derivation& d, std::ostream& out,
                      const std::string& indent) {
  for (std::size_t i = 0; i < d.steps.size(); ++i) {
    const Step& s = d.steps[i];
    out << indent << "[" << i << "] " << s.rule << "  " << word(s.fact.from)
        << " => " << word(s.fact.to) << "  {" << subst_text(s.subst) << "}";
    if (!s.premises.empty()) {
      out << " from";
      for (std::size_t p : s.premises) out << " [" << p << "]";
    }
    out << "\n";
  }
}

CompareOptions compare_options(const Globals& g) {
  CompareOptions o;
  o.budget = g.budget;
  return o;
}

CommandResult run_compare(const Globals& g, const Pattern& a, const Pattern& b) {
  const Verdict v = compare(a, b, compare_options(g));
  CommandResult r;
  if (g.json()) {
    json j = v;
    j["a"] = canonicalize(a);
    j["b"] = canonicalize(b);
    r.out = emit(j);
  } else {
    std::ostringstream out;
    out << word(canonicalize(a)) << " " << symbol(v.relation) << " "
        << word(canonicalize(b)) << "\n";
    out << "branch: (" << roman(v.branch) << ") " << to_string(v.branch)
        << "\n";
    out << "justification: " << v.justification << "\n";
    out << "detail: " << v.explanation << "\n";
    out << "ranks: " << v.rank_a.to_string() << " vs " << v.rank_b.to_string()
        << "\n";
    if (v.a_implies_b) {
      out << "derivation (left => right):\n";
      print_derivation(*v.a_implies_b, out, "  ");
    }
    if (v.b_implies_a) {
      out << "derivation (right => left):\n";
      print_derivation(*v.b_implies_a, out, "  ");
    }
    r.out = out.str();
  }
  if (g.strict && v.relation == Relation::kUnknown) r.exit_code = kExitUnknown;
  return r;
}

CommandResult run_rank(const Globals& g, const Pattern& p) {
  const Rank rk = rank(p, compare_options(g));
  CommandResult r;
  if (g.json()) {
    r.out = emit(json{{"pattern", canonicalize(p)},
                      {"rank", rk},
                      {"rank_class", rank_class(canonicalize(p))}});
  } else {
    r.out = rk.to_string() + "\n";
  }
  if (g.strict && rk.kind == Rank::Kind::kUndetermined) {
    r.exit_code = kExitUnknown;
  }
  return r;
}

CommandResult run_normalize(const Globals& g, const Pattern& p) {
  const Normalization n = to_two_nf(p);
  const Pattern expanded = two_nf_to_pattern(n.form);
  const Ordinal o = two_nf_ordinal(n.form);
  CommandResult r;
  if (g.json()) {
    json sketch = json::array();
    for (const NormalizationStep& s : n.sketch) {
      sketch.push_back({{"lemma", s.lemma}, {"detail", s.detail}});
    }
    r.out = emit(json{{"input", canonicalize(p)},
                      {"two_nf", n.form},
                      {"pattern", expanded},
                      {"ordinal", o},
                      {"ordinal_text", o.to_string()},
                      {"sketch", std::move(sketch)}});
  } else {
    std::ostringstream out;
    out << n.form.to_string() << "\n";
    out << "pattern: " << word(expanded) << "\n";
    out << "ordinal: " << o.to_string() << "\n";
    if (!n.sketch.empty()) out << "sketch:\n";
    for (const NormalizationStep& s : n.sketch) {
      out << "  " << s.lemma << ": " << s.detail << "\n";
    }
    r.out = out.str();
  }
  return r;
}

CommandResult run_prove(const Globals& g, const Pattern& a, const Pattern& b,
                        std::optional<std::size_t> size_bound, bool full) {
  const Fact goal{canonicalize(a), canonicalize(b)};
  const std::size_t bound =
      size_bound.value_or(std::max(goal.from.size(), goal.to.size()) + 2);
  const ProofResult p = full ? prove(goal, bound, g.budget)
                             : prove_focused(goal, bound, g.budget);
  CommandResult r;
  if (g.json()) {
    json j{{"goal", goal},
           {"derived", p.derivation.has_value()},
           {"universe", full ? "full" : "focused"},
           {"size_bound", bound},
           {"universe_size", p.universe_size},
           {"facts", p.facts},
           {"budget_exceeded", p.budget_exceeded}};
    if (p.derivation) j["derivation"] = *p.derivation;
    r.out = emit(j);
    return r;
  }
  std::ostringstream out;
  if (p.derivation) {
    const std::size_t n = p.derivation->steps.size();
    out << "derived " << word(goal.from) << " => " << word(goal.to) << " ("
        << n << (n == 1 ? " step" : " steps") << ")\n";
    print_derivation(*p.derivation, out, "  ");
  } else {
    out << "not derived within budget\n";
  }
  out << "universe: " << (full ? "full" : "focused") << ", size bound "
      << bound << ", " << p.universe_size << " patterns, " << p.facts
      << " facts" << (p.budget_exceeded ? ", budget exhausted" : "") << "\n";
  r.out = out.str();
  return r;
}

int rank_order(const Rank& r) {
  switch (r.kind) {
    case Rank::Kind::kOrdinal:
      return 0;
    case Rank::Kind::kOmegaOmega:
      return 1;
    case Rank::Kind::kUndetermined:
      return 2;
  }
  return 2;
}

CommandResult run_enumerate(const Globals& g, std::size_t max_size,
                            bool linear, bool use_prover) {
  CompareOptions opts = compare_options(g);
  opts.use_prover = use_prover;
  std::vector<std::pair<Pattern, Rank>> rows;
  for (Pattern& p : enumerate_patterns(max_size, linear)) {
    Rank rk = rank(p, opts);
    rows.emplace_back(std::move(p), std::move(rk));
  }
  std::stable_sort(rows.begin(), rows.end(), [](const auto& x, const auto& y) {
    const int ox = rank_order(x.second), oy = rank_order(y.second);
    if (ox != oy) return ox < oy;
    if (ox == 0 && x.second.value != y.second.value) {
      return x.second.value < y.second.value;
    }
    return x.first < y.first;
  });
  CommandResult r;
  if (g.json()) {
    json list = json::array();
    for (const auto& [p, rk] : rows) list.push_back({{"pattern", p}, {"rank", rk}});
    r.out = emit(json{{"max_size", max_size},
                      {"linear", linear},
                      {"count", rows.size()},
                      {"patterns", std::move(list)}});
  } else {
    std::ostringstream out;
    for (const auto& [p, rk] : rows) out << word(p) << "\t" << rk.to_string() << "\n";
    r.out = out.str();
  }
  return r;
}

CommandResult run_rules(const Globals& g) {
  CommandResult r;
  if (g.json()) {
    json list = json::array();
    for (const Rule& rule : rule_catalog()) list.push_back(rule);
    r.out = emit(list);
    return r;
  }
  std::ostringstream out;
  for (const Rule& rule : rule_catalog()) {
    out << rule.id << "\t" << rule.schema;
    if (!rule.side_condition.empty()) out << "   if " << rule.side_condition;
    out << "\t[" << rule.citation << "]\n";
  }
  r.out = out.str();
  return r;
}

CommandResult run_selftest_command(const Globals& g, std::size_t size_bound) {
  SelftestOptions opts;
  opts.size_bound = size_bound;
  const SelftestReport report = run_selftest(opts);
  CommandResult r;
  if (g.json()) {
    json suites = json::array();
    for (const SuiteResult& s : report.suites) {
      suites.push_back({{"name", s.name},
                        {"passed", s.passed},
                        {"failed", s.failed},
                        {"failures", s.failures}});
    }
    r.out = emit(json{{"size_bound", size_bound},
                      {"ok", report.ok()},
                      {"suites", std::move(suites)}});
  } else {
    std::ostringstream out;
    for (const SuiteResult& s : report.suites) {
      out << s.name << ": " << s.passed << " passed, " << s.failed
          << " failed\n";
      for (const std::string& f : s.failures) out << "  FAIL " << f << "\n";
    }
    out << "selftest: " << (report.ok() ? "PASS" : "FAIL") << "\n";
    r.out = out.str();
  }
  if (!report.ok()) r.exit_code = kExitInvariant;
  return r;
}

}  // namespace

CommandResult execute_command(const std::vector<std::string>& args) {
  Globals g;
  CLI::App app{"Decide and explain the reflection order on patterns", "reflect"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--budget", g.budget, "Prover fact budget");
  app.add_flag("--strict", g.strict, "Exit with code 2 on an Unknown verdict or undetermined rank");

  std::string a, b;
  std::size_t max_size = 0;
  std::size_t selftest_size = 4;
  std::optional<std::size_t> prove_bound;
  bool linear = false;
  bool full = false;
  bool enumerate_prover = false;

  CLI::App* cmp = app.add_subcommand("compare", "Compare two patterns");
  cmp->add_option("a", a)->required();
  cmp->add_option("b", b)->required();
  CLI::App* rk = app.add_subcommand("rank", "Rank of a pattern");
  rk->add_option("pattern", a)->required();
  CLI::App* nf = app.add_subcommand("normalize", "2-normal form of a σσ-free pattern");
  nf->add_option("pattern", a)->required();
  CLI::App* pr = app.add_subcommand("prove", "Search for a derivation of A => B");
  pr->add_option("a", a)->required();
  pr->add_option("b", b)->required();
  pr->add_option("--size-bound", prove_bound, "Universe size bound");
  pr->add_flag("--full", full, "Saturate every pattern up to the size bound");
  CLI::App* en = app.add_subcommand("enumerate", "List patterns with ranks");
  en->add_option("--max-size", max_size)->required();
  en->add_flag("--linear", linear, "Linear patterns only");
  en->add_flag("--prove", enumerate_prover, "Consult the prover for ranks");
  CLI::App* rl = app.add_subcommand("rules", "Dump the rule catalog");
  CLI::App* st = app.add_subcommand("selftest", "Run the self-test suites");
  st->add_option("--size", selftest_size, "Universe size bound");

  CommandResult result;
  std::ostringstream out, err;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    result.exit_code = app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
    result.out = out.str();
    result.err = err.str();
    return result;
  }

  try {
    if (cmp->parsed()) return run_compare(g, parse(a), parse(b));
    if (rk->parsed()) return run_rank(g, parse(a));
    if (nf->parsed()) return run_normalize(g, parse(a));
    if (pr->parsed()) return run_prove(g, parse(a), parse(b), prove_bound, full);
    if (en->parsed()) return run_enumerate(g, max_size, linear, enumerate_prover);
    if (rl->parsed()) return run_rules(g);
    if (st->parsed()) return run_selftest_command(g, selftest_size);
  } catch (const SyntaxError& e) {
    result.exit_code = kExitUsage;
    result.err = std::string(e.what()) + "\n";
    return result;
  } catch (const ContainsSigmaSigmaError& e) {
    result.exit_code = kExitUsage;
    result.err = std::string(e.what()) + "\n";
    return result;
  } catch (const std::invalid_argument& e) {
    result.exit_code = kExitUsage;
    result.err = std::string(e.what()) + "\n";
    return result;
  } catch (const std::exception& e) {
    result.exit_code = kExitInvariant;
    result.err = std::string("internal error: ") + e.what() + "\n";
    return result;
  }
  result.exit_code = kExitUsage;
  result.err = "no command given\n";
  return result;
}

}  // namespace reflect
