#pragma once

// Ordinal assignments for reflection patterns: the right-to-left block sum
// for linear patterns, and 2-normal forms π^n c^0_{n_0} c^1_{n_1} … c^k_{n_k}
// for patterns in which σσ does not occur.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "reflect/ordinal.hpp"
#include "reflect/pattern.hpp"

namespace reflect {

class NotLinearError : public std::invalid_argument {
 public:
  explicit NotLinearError(const Pattern& p);
};

class ContainsSigmaSigmaError : public std::invalid_argument {
 public:
  explicit ContainsSigmaSigmaError(const Pattern& p);
};

// Raised when no normalization case applies. This indicates a bug.
class NormalizationStuckError : public std::logic_error {
 public:
  NormalizationStuckError(const std::string& reason, const Pattern& subterm);
};

// π^pi c^0_{coeffs[0]} … c^k_{coeffs[k]}; trailing zero coefficients are
// trimmed on construction.
struct TwoNF {
  std::uint64_t pi = 0;
  std::vector<std::uint64_t> coeffs;

  TwoNF() = default;
  TwoNF(std::uint64_t pi_prefix, std::vector<std::uint64_t> coefficients);

  bool is_empty() const noexcept { return pi == 0 && coeffs.empty(); }
  std::uint64_t coeff(std::size_t level) const noexcept {
    return level < coeffs.size() ? coeffs[level] : 0;
  }
  std::string to_string() const;

  friend bool operator==(const TwoNF&, const TwoNF&) = default;
};

// ω^{a_m} + … + ω^{a_0} for the word σ^{a_0} π σ^{a_1} π … π σ^{a_m}.
// Throws NotLinearError on conjunctions.
Ordinal linear_ordinal(const Pattern& p);

Pattern two_nf_to_pattern(const TwoNF& w);
// ω^{k+1}·n_k + … + ω·n_0 + n
Ordinal two_nf_ordinal(const TwoNF& w);
// Inverse of two_nf_ordinal.
TwoNF two_nf_from_ordinal(const Ordinal& o);
std::size_t two_nf_size(const TwoNF& w);
// All 2-normal forms whose pattern has size <= max_size, ordered by ordinal.
std::vector<TwoNF> enumerate_two_nf(std::size_t max_size);

// Of two π-prefixed normal forms, the one with the larger ordinal; on a tie
// the structurally smaller pattern.
TwoNF conj_pick_max(const TwoNF& a, const TwoNF& b);
// Normal form equivalent to σ ∧ t.
TwoNF sigma_conj_normalize(const TwoNF& t);
// Normal form equivalent to σ applied to a normal form that is empty or
// π-prefixed. Throws NormalizationStuckError otherwise.
TwoNF sigma_apply(const TwoNF& w);
// Normal form equivalent to the conjunction of two normal forms.
TwoNF conj_normalize(const TwoNF& a, const TwoNF& b);

struct NormalizationStep {
  std::string lemma;   // justification, e.g. "σ∧t normal form"
  std::string detail;  // subterm ↦ normal form
};

struct Normalization {
  TwoNF form;
  std::vector<NormalizationStep> sketch;
};

// Throws ContainsSigmaSigmaError when σσ occurs in p.
Normalization to_two_nf(const Pattern& p);

}  // namespace reflect
