#pragma once

// Decides the reflection order on the fragments where it is known
// (σσ-free patterns, linear patterns) and reports Unknown elsewhere.

#include <cstddef>
#include <optional>
#include <string>

#include "reflect/ordinal.hpp"
#include "reflect/pattern.hpp"
#include "reflect/rules.hpp"

namespace reflect {

enum class Relation { kLess, kEqual, kGreater, kUnknown };

enum class Branch {
  kSigmaSigmaFree,  // (i)   both σσ-free
  kMixed,           // (ii)  exactly one σσ-free
  kLinear,          // (iii) both contain σσ, both linear
  kOpen,            // (iv)  both contain σσ, one not linear
};

std::string to_string(Relation r);      // "Less", "Equal", …
std::string symbol(Relation r);         // "<", "=", ">", "?"
std::string to_string(Branch b);        // "sigma-sigma-free", …
std::string roman(Branch b);            // "i" … "iv"
// Result cited for decisions in branch b.
std::string justification(Branch b);

Relation flip(Relation r);

struct RankClass {
  enum class Kind { kOrdinal, kSigmaSigmaCeiling };
  Kind kind = Kind::kOrdinal;
  Ordinal value;  // meaningful for kOrdinal

  std::string to_string() const;
};

// twoNFOrdinal(toTwoNF(p)) for σσ-free p, the σσ ceiling otherwise.
RankClass rank_class(const Pattern& p);

struct Rank {
  enum class Kind { kOrdinal, kOmegaOmega, kUndetermined };
  Kind kind = Kind::kUndetermined;
  Ordinal value;  // meaningful for kOrdinal

  std::string to_string() const;  // "w^2", "w^w", "undetermined"
};

struct CompareOptions {
  bool use_prover = true;
  std::size_t budget = 100000;
  // Prover universe bound; max(size(a), size(b)) + 2 when absent.
  std::optional<std::size_t> size_bound;
};

struct Verdict {
  Relation relation = Relation::kUnknown;
  Branch branch = Branch::kSigmaSigmaFree;
  std::string justification;
  std::string explanation;
  RankClass rank_a;
  RankClass rank_b;
  // Fragment ordinals that decided the verdict: 2-normal-form ordinals in
  // branch (i), linear ordinals in branch (iii).
  std::optional<Ordinal> ordinal_a;
  std::optional<Ordinal> ordinal_b;
  // Branch (iv) only: proofs of a ⟹ b and b ⟹ a when found.
  bool prover_consulted = false;
  bool budget_exceeded = false;
  std::optional<Derivation> a_implies_b;
  std::optional<Derivation> b_implies_a;
};

// Both arguments are canonicalized first.
Verdict compare(const Pattern& a, const Pattern& b,
                const CompareOptions& options = {});

// ω^ω is reported only when p ≡ σσ is established.
Rank rank(const Pattern& p, const CompareOptions& options = {});

// The full verdict record of compare(a, b); kept as a separate entry point
// for callers that want the structured explanation.
Verdict explain_order(const Pattern& a, const Pattern& b,
                      const CompareOptions& options = {});

}  // namespace reflect
