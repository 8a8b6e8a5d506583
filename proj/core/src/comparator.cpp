#include "reflect/comparator.hpp"

#include <algorithm>
#include <compare>

#include "reflect/normal_form.hpp"

namespace reflect {

std::string to_string(Relation r) {
  switch (r) {
    case Relation::kLess:
      return "Less";
    case Relation::kEqual:
      return "Equal";
    case Relation::kGreater:
      return "Greater";
    case Relation::kUnknown:
      return "Unknown";
  }
  return "Unknown";
}

std::string symbol(Relation r) {
  switch (r) {
    case Relation::kLess:
      return "<";
    case Relation::kEqual:
      return "=";
    case Relation::kGreater:
      return ">";
    case Relation::kUnknown:
      return "?";
  }
  return "?";
}

std::string to_string(Branch b) {
  switch (b) {
    case Branch::kSigmaSigmaFree:
      return "sigma-sigma-free";
    case Branch::kMixed:
      return "mixed";
    case Branch::kLinear:
      return "linear";
    case Branch::kOpen:
      return "open";
  }
  return "open";
}

std::string roman(Branch b) {
  switch (b) {
    case Branch::kSigmaSigmaFree:
      return "i";
    case Branch::kMixed:
      return "ii";
    case Branch::kLinear:
      return "iii";
    case Branch::kOpen:
      return "iv";
  }
  return "iv";
}

std::string justification(Branch b) {
  switch (b) {
    case Branch::kSigmaSigmaFree:
      return "2-normal form theorem: u < v iff o(u) < o(v)";
    case Branch::kMixed:
      return "σσ ceiling theorem: σσ is strictly above every σσ-free pattern";
    case Branch::kLinear:
      return "linear order theorem: linear patterns are ordered by their "
             "block-sum ordinal";
    case Branch::kOpen:
      return "open region above σσ: bounded proof search only";
  }
  return "";
}

Relation flip(Relation r) {
  switch (r) {
    case Relation::kLess:
      return Relation::kGreater;
    case Relation::kGreater:
      return Relation::kLess;
    default:
      return r;
  }
}

std::string RankClass::to_string() const {
  return kind == Kind::kOrdinal ? value.to_string() : ">= w^w";
}

RankClass rank_class(const Pattern& p) {
  if (contains_sigma_sigma(p)) {
    return {RankClass::Kind::kSigmaSigmaCeiling, {}};
  }
  return {RankClass::Kind::kOrdinal, two_nf_ordinal(to_two_nf(p).form)};
}

std::string Rank::to_string() const {
  switch (kind) {
    case Kind::kOrdinal:
      return value.to_string();
    case Kind::kOmegaOmega:
      return "w^w";
    case Kind::kUndetermined:
      return "undetermined";
  }
  return "undetermined";
}

namespace {

Relation from_order(std::strong_ordering c) {
  if (c < 0) return Relation::kLess;
  if (c > 0) return Relation::kGreater;
  return Relation::kEqual;
}

}  // namespace

Verdict compare(const Pattern& a_in, const Pattern& b_in,
                const CompareOptions& options) {
  const Pattern a = canonicalize(a_in);
  const Pattern b = canonicalize(b_in);
  Verdict v;
  v.rank_a = rank_class(a);
  v.rank_b = rank_class(b);
  const bool free_a = v.rank_a.kind == RankClass::Kind::kOrdinal;
  const bool free_b = v.rank_b.kind == RankClass::Kind::kOrdinal;

  if (free_a && free_b) {
    v.branch = Branch::kSigmaSigmaFree;
    v.ordinal_a = v.rank_a.value;
    v.ordinal_b = v.rank_b.value;
    v.relation = from_order(v.rank_a.value <=> v.rank_b.value);
    v.explanation = "2-normal-form ordinals " + v.rank_a.value.to_string() +
                    " vs " + v.rank_b.value.to_string();
  } else if (free_a != free_b) {
    v.branch = Branch::kMixed;
    v.relation = free_a ? Relation::kLess : Relation::kGreater;
    v.explanation = std::string(free_a ? "left" : "right") +
                    " side is σσ-free, the other contains σσ";
  } else if (is_linear(a) && is_linear(b)) {
    v.branch = Branch::kLinear;
    v.ordinal_a = linear_ordinal(a);
    v.ordinal_b = linear_ordinal(b);
    v.relation = from_order(*v.ordinal_a <=> *v.ordinal_b);
    v.explanation = "linear ordinals " + v.ordinal_a->to_string() + " vs " +
                    v.ordinal_b->to_string();
  } else {
    v.branch = Branch::kOpen;
    v.relation = a == b ? Relation::kEqual : Relation::kUnknown;
    v.explanation = a == b ? "identical patterns" : "no proof search";
    if (a != b && options.use_prover) {
      const std::size_t bound =
          options.size_bound.value_or(std::max(a.size(), b.size()) + 2);
      ProofResult fwd = prove_focused({a, b}, bound, options.budget);
      ProofResult bwd = prove_focused({b, a}, bound, options.budget);
      v.prover_consulted = true;
      v.budget_exceeded = fwd.budget_exceeded || bwd.budget_exceeded;
      v.a_implies_b = std::move(fwd.derivation);
      v.b_implies_a = std::move(bwd.derivation);
      const std::string bound_text = "size bound " + std::to_string(bound) +
                                     ", budget " +
                                     std::to_string(options.budget);
      if (v.a_implies_b && v.b_implies_a) {
        v.relation = Relation::kEqual;
        v.explanation = "mutual implication derived (" + bound_text + ")";
      } else if (v.a_implies_b) {
        v.explanation = "derived left ⟹ right only, so right ≤ left; "
                        "strictness not established (" + bound_text + ")";
      } else if (v.b_implies_a) {
        v.explanation = "derived right ⟹ left only, so left ≤ right; "
                        "strictness not established (" + bound_text + ")";
      } else {
        v.explanation = "no implication derived in either direction (" +
                        bound_text + ")";
      }
      if (v.budget_exceeded) v.explanation += "; budget exhausted";
    }
  }
  v.justification = justification(v.branch);
  return v;
}

Verdict explain_order(const Pattern& a, const Pattern& b,
                      const CompareOptions& options) {
  return compare(a, b, options);
}

Rank rank(const Pattern& p_in, const CompareOptions& options) {
  const Pattern p = canonicalize(p_in);
  RankClass rc = rank_class(p);
  if (rc.kind == RankClass::Kind::kOrdinal) {
    return {Rank::Kind::kOrdinal, rc.value};
  }
  if (compare(p, sigma_pow(2), options).relation == Relation::kEqual) {
    return {Rank::Kind::kOmegaOmega, {}};
  }
  return {Rank::Kind::kUndetermined, {}};
}

}  // namespace reflect
