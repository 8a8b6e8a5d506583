#include <gtest/gtest.h>

#include "reflect/json.hpp"

#include "cli.hpp"
#include "reflect/rules.hpp"
#include "selftest.hpp"

namespace reflect {
namespace {

CommandResult run(std::vector<std::string> args) {
  return execute_command(args);
}

bool starts_with(const std::string& s, const std::string& prefix) {
  return s.rfind(prefix, 0) == 0;
}

TEST(Cli, CompareExample) {
  const CommandResult r = run({"compare", "p", "s"});
  EXPECT_EQ(r.exit_code, kExitOk);
  EXPECT_TRUE(starts_with(r.out, "p < s\n")) << r.out;
  EXPECT_NE(r.out.find("branch: (i)"), std::string::npos);
  EXPECT_NE(r.out.find("justification:"), std::string::npos);
}

TEST(Cli, RankExample) {
  const CommandResult r = run({"rank", "s&p"});
  EXPECT_EQ(r.exit_code, kExitOk);
  EXPECT_EQ(r.out, "w^2\n");
  EXPECT_EQ(run({"rank", "ss"}).out, "w^w\n");
}

TEST(Cli, SyntaxErrorExitsWithUsage) {
  const CommandResult r = run({"compare", "x", "s"});
  EXPECT_EQ(r.exit_code, kExitUsage);
  EXPECT_NE(r.err.find("syntax error"), std::string::npos);
  EXPECT_TRUE(r.out.empty());
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).exit_code, kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).exit_code, kExitUsage);
  EXPECT_EQ(run({"compare", "p"}).exit_code, kExitUsage);
  EXPECT_EQ(run({"--format", "xml", "rank", "p"}).exit_code, kExitUsage);
  EXPECT_EQ(run({"normalize", "ss"}).exit_code, kExitUsage);
  EXPECT_EQ(run({"--help"}).exit_code, kExitOk);
}

TEST(Cli, StrictUnknownExitsTwo) {
  const std::vector<std::string> args{"compare", "ss&p", "sss"};
  EXPECT_EQ(run(args).exit_code, kExitOk);
  std::vector<std::string> strict{"--strict"};
  strict.insert(strict.end(), args.begin(), args.end());
  const CommandResult r = run(strict);
  EXPECT_EQ(r.exit_code, kExitUnknown);
  EXPECT_NE(r.out.find(" ? "), std::string::npos);
  EXPECT_EQ(run({"--strict", "rank", "sss"}).exit_code, kExitUnknown);
  EXPECT_EQ(run({"--strict", "compare", "p", "s"}).exit_code, kExitOk);
}

TEST(Cli, EmptyPatternAlias) {
  const CommandResult r = run({"compare", "e", "p"});
  EXPECT_EQ(r.exit_code, kExitOk);
  EXPECT_TRUE(starts_with(r.out, "e < p\n")) << r.out;
}

TEST(Cli, JsonOutputIsValid) {
  for (const std::vector<std::string>& args :
       std::vector<std::vector<std::string>>{
           {"--format", "json", "compare", "p", "s"},
           {"--format", "json", "compare", "s(s&p)", "ss"},
           {"--format", "json", "rank", "s&p"},
           {"--format", "json", "normalize", "p(s&p(s&p))"},
           {"--format", "json", "prove", "spsp", "sp"},
           {"--format", "json", "enumerate", "--max-size", "3"},
           {"--format", "json", "rules"}}) {
    const CommandResult r = run(args);
    ASSERT_EQ(r.exit_code, kExitOk) << args[2] << ": " << r.err;
    ASSERT_TRUE(nlohmann::json::accept(r.out)) << r.out;
  }
  const auto j = nlohmann::json::parse(
      run({"--format", "json", "compare", "p", "s"}).out);
  EXPECT_EQ(j.at("relation"), "Less");
  EXPECT_EQ(j.at("branch"), "i");
}

TEST(Cli, ProofCertificateInJsonVerifies) {
  const auto j = nlohmann::json::parse(
      run({"--format", "json", "compare", "s(s&p)", "ss"}).out);
  EXPECT_EQ(j.at("relation"), "Equal");
  ASSERT_TRUE(j.at("derivation").contains("a_implies_b"));
  EXPECT_TRUE(verify_derivation(
      j.at("derivation").at("a_implies_b").get<Derivation>()));
}

TEST(Cli, NormalizeAndProve) {
  const CommandResult n = run({"normalize", "ps"});
  EXPECT_EQ(n.exit_code, kExitOk);
  EXPECT_TRUE(starts_with(n.out, "pi=1 coeffs=[1]\n")) << n.out;
  const CommandResult p = run({"prove", "spsp", "sp"});
  EXPECT_EQ(p.exit_code, kExitOk);
  EXPECT_TRUE(starts_with(p.out, "derived spsp => sp (1 step)")) << p.out;
  const CommandResult q = run({"prove", "p", "s"});
  EXPECT_EQ(q.exit_code, kExitOk);
  EXPECT_NE(q.out.find("not derived"), std::string::npos);
}

TEST(Cli, EnumerateIsSortedByRank) {
  const CommandResult r = run({"enumerate", "--max-size", "2"});
  EXPECT_EQ(r.exit_code, kExitOk);
  EXPECT_EQ(r.out, "e\t0\np\t1\npp\t2\ns\tw\nsp\tw\nps\tw + 1\nss\tw^w\n");
}

TEST(Cli, RulesListsTheCatalog) {
  const CommandResult r = run({"rules"});
  EXPECT_EQ(r.exit_code, kExitOk);
  EXPECT_EQ(static_cast<std::size_t>(std::count(r.out.begin(), r.out.end(), '\n')),
            rule_catalog().size());
}

TEST(Cli, OutputIsDeterministic) {
  for (const std::vector<std::string>& args :
       std::vector<std::vector<std::string>>{
           {"compare", "ss&p", "sss"},
           {"--format", "json", "prove", "s", "spp"},
           {"enumerate", "--max-size", "4"}}) {
    EXPECT_EQ(run(args).out, run(args).out);
  }
}

TEST(Cli, SelftestPasses) {
  const CommandResult r = run({"selftest"});
  EXPECT_EQ(r.exit_code, kExitOk) << r.out << r.err;
  EXPECT_NE(r.out.find("selftest: PASS"), std::string::npos);
  const CommandResult zero = run({"selftest", "--size", "0"});
  EXPECT_EQ(zero.exit_code, kExitOk);
  EXPECT_NE(zero.out.find("identities:"), std::string::npos);
}

TEST(Selftest, CorruptedCatalogFails) {
  // π ⟹ σ inverts a known strict inequality.
  std::vector<Rule> catalog = rule_catalog();
  Rule bogus = *find_rule("Refl");
  bogus.id = "Bogus";
  bogus.match = [](const Pattern& from, const Universe& u,
                   std::vector<Substitution>& out) {
    if (from == pi() && u.contains(sigma())) out.push_back({});
  };
  bogus.build = [](const Substitution&) -> std::optional<Instance> {
    return Instance{{pi(), sigma()}, {}};
  };
  catalog.push_back(bogus);
  SelftestOptions opt;
  opt.size_bound = 3;
  opt.catalog = &catalog;
  const SelftestReport report = run_selftest(opt);
  EXPECT_FALSE(report.ok());
  bool consistency_failed = false;
  for (const SuiteResult& s : report.suites) {
    if (s.name == "consistency" && !s.ok()) consistency_failed = true;
  }
  EXPECT_TRUE(consistency_failed);
}

}  // namespace
}  // namespace reflect
