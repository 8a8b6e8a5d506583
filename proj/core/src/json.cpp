#include "reflect/json.hpp"

namespace reflect {

using nlohmann::json;

void to_json(json& j, const Pattern& p) { j = render(p); }

void from_json(const json& j, Pattern& p) { p = parse(j.get<std::string>()); }

void to_json(json& j, const Ordinal& o) {
  json terms = json::array();
  for (const OrdinalTerm& t : o.terms()) terms.push_back({t.degree, t.coeff});
  j = json{{"terms", std::move(terms)}};
}

void from_json(const json& j, Ordinal& o) {
  std::vector<OrdinalTerm> terms;
  for (const json& t : j.at("terms")) {
    terms.push_back({t.at(0).get<std::uint64_t>(), t.at(1).get<std::uint64_t>()});
  }
  o = Ordinal(std::move(terms));
}

void to_json(json& j, const TwoNF& w) {
  j = json{{"pi", w.pi}, {"coeffs", w.coeffs}};
}

void from_json(const json& j, TwoNF& w) {
  w = TwoNF(j.at("pi").get<std::uint64_t>(),
            j.at("coeffs").get<std::vector<std::uint64_t>>());
}

void to_json(json& j, const Fact& f) {
  j = json{{"from", f.from}, {"to", f.to}};
}

void from_json(const json& j, Fact& f) {
  f.from = j.at("from").get<Pattern>();
  f.to = j.at("to").get<Pattern>();
}

void to_json(json& j, const Derivation& d) {
  json steps = json::array();
  for (const Step& s : d.steps) {
    json subst = json::object();
    for (const auto& [var, value] : s.subst) {
      if (const auto* p = std::get_if<Pattern>(&value)) {
        subst[var] = *p;
      } else {
        subst[var] = std::get<std::uint64_t>(value);
      }
    }
    steps.push_back({{"rule", s.rule},
                     {"subst", std::move(subst)},
                     {"fact", s.fact},
                     {"premises", s.premises}});
  }
  j = json{{"goal", d.goal}, {"steps", std::move(steps)}};
}

void from_json(const json& j, Derivation& d) {
  d.goal = j.at("goal").get<Fact>();
  d.steps.clear();
  for (const json& s : j.at("steps")) {
    Step step;
    step.rule = s.at("rule").get<std::string>();
    for (const auto& [var, value] : s.at("subst").items()) {
      if (value.is_string()) {
        step.subst.emplace(var, value.get<Pattern>());
      } else {
        step.subst.emplace(var, value.get<std::uint64_t>());
      }
    }
    step.fact = s.at("fact").get<Fact>();
    if (s.contains("premises")) {
      step.premises = s.at("premises").get<std::vector<std::size_t>>();
    }
    d.steps.push_back(std::move(step));
  }
}

void to_json(json& j, const Rule& r) {
  j = json{{"id", r.id},
           {"citation", r.citation},
           {"schema", r.schema},
           {"kind", r.kind == RuleKind::kAxiom ? "axiom" : "inference"}};
  if (!r.side_condition.empty()) j["side_condition"] = r.side_condition;
}

void to_json(json& j, const RankClass& r) {
  if (r.kind == RankClass::Kind::kOrdinal) {
    j = json{{"class", "ordinal"}, {"value", r.value},
             {"text", r.value.to_string()}};
  } else {
    j = json{{"class", "sigma-sigma-ceiling"}, {"text", r.to_string()}};
  }
}

void to_json(json& j, const Rank& r) {
  switch (r.kind) {
    case Rank::Kind::kOrdinal:
      j = json{{"rank", "ordinal"}, {"value", r.value},
               {"text", r.value.to_string()}};
      break;
    case Rank::Kind::kOmegaOmega:
      j = json{{"rank", "omega^omega"}, {"text", r.to_string()}};
      break;
    case Rank::Kind::kUndetermined:
      j = json{{"rank", "undetermined"}, {"text", r.to_string()}};
      break;
  }
}

void to_json(json& j, const Verdict& v) {
  j = json{{"relation", to_string(v.relation)},
           {"branch", roman(v.branch)},
           {"branch_name", to_string(v.branch)},
           {"justification", v.justification},
           {"explanation", v.explanation},
           {"rank_a", v.rank_a},
           {"rank_b", v.rank_b}};
  if (v.ordinal_a) j["ordinal_a"] = *v.ordinal_a;
  if (v.ordinal_b) j["ordinal_b"] = *v.ordinal_b;
  if (v.prover_consulted) {
    json d = json::object();
    if (v.a_implies_b) d["a_implies_b"] = *v.a_implies_b;
    if (v.b_implies_a) d["b_implies_a"] = *v.b_implies_a;
    j["derivation"] = std::move(d);
    j["budget_exceeded"] = v.budget_exceeded;
  }
}

void to_json(json& j, const ConsistencyReport& r) {
  json violations = json::array();
  for (const Violation& v : r.violations) violations.push_back(v.describe());
  j = json{{"violations", std::move(violations)},
           {"universe_size", r.universe_size},
           {"facts", r.facts},
           {"mutual_pairs", r.mutual_pairs},
           {"comparisons", r.comparisons},
           {"unknown", r.unknown},
           {"budget_exceeded", r.budget_exceeded}};
}

}  // namespace reflect
