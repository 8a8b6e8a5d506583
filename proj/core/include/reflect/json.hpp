#pragma once

// nlohmann::json conversions for the public value types. Patterns are
// encoded as ascii words.

#include <nlohmann/json.hpp>

#include "reflect/comparator.hpp"
#include "reflect/consistency.hpp"
#include "reflect/normal_form.hpp"
#include "reflect/ordinal.hpp"
#include "reflect/pattern.hpp"
#include "reflect/rules.hpp"

namespace reflect {

void to_json(nlohmann::json& j, const Pattern& p);
void from_json(const nlohmann::json& j, Pattern& p);

// {"terms": [[degree, coeff], …]}
void to_json(nlohmann::json& j, const Ordinal& o);
void from_json(const nlohmann::json& j, Ordinal& o);

// {"pi": n, "coeffs": [n_0, …, n_k]}
void to_json(nlohmann::json& j, const TwoNF& w);
void from_json(const nlohmann::json& j, TwoNF& w);

void to_json(nlohmann::json& j, const Fact& f);
void from_json(const nlohmann::json& j, Fact& f);

// {"goal": fact, "steps": [{"rule", "subst", "fact", "premises"}]}
void to_json(nlohmann::json& j, const Derivation& d);
void from_json(const nlohmann::json& j, Derivation& d);

void to_json(nlohmann::json& j, const Rule& r);
void to_json(nlohmann::json& j, const RankClass& r);
void to_json(nlohmann::json& j, const Rank& r);
// {"relation", "branch", "justification", "explanation", "rank_a",
//  "rank_b", "derivation"?}
void to_json(nlohmann::json& j, const Verdict& v);
void to_json(nlohmann::json& j, const ConsistencyReport& r);

}  // namespace reflect
