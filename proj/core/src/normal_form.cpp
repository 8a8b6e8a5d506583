#include "reflect/normal_form.hpp"

#include <algorithm>
#include <functional>

namespace reflect {

NotLinearError::NotLinearError(const Pattern& p)
    : std::invalid_argument("pattern '" + render(p) +
                            "' contains a conjunction") {}

ContainsSigmaSigmaError::ContainsSigmaSigmaError(const Pattern& p)
    : std::invalid_argument("pattern '" + render(p) +
                            "' contains σσ; no 2-normal form exists for it") {}

NormalizationStuckError::NormalizationStuckError(const std::string& reason,
                                                 const Pattern& subterm)
    : std::logic_error("normalization stuck (" + reason + ") at subterm '" +
                       render(subterm) + "'") {}

TwoNF::TwoNF(std::uint64_t pi_prefix, std::vector<std::uint64_t> coefficients)
    : pi(pi_prefix), coeffs(std::move(coefficients)) {
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
}

std::string TwoNF::to_string() const {
  std::string out = "pi=" + std::to_string(pi) + " coeffs=[";
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(coeffs[i]);
  }
  return out + "]";
}

Ordinal linear_ordinal(const Pattern& p) {
  std::vector<std::uint64_t> blocks{0};
  for (const Pattern* q = &p; !q->is_empty(); q = &q->arg()) {
    if (q->is_conj()) throw NotLinearError(p);
    if (q->is_sigma()) {
      ++blocks.back();
    } else {
      blocks.push_back(0);
    }
  }
  Ordinal o;
  for (auto it = blocks.rbegin(); it != blocks.rend(); ++it) {
    o += Ordinal::omega_pow(*it);
  }
  return o;
}

Pattern two_nf_to_pattern(const TwoNF& w) {
  Pattern x;
  for (std::size_t level = w.coeffs.size(); level-- > 0;) {
    x = expand_combinator(level, w.coeffs[level], x);
  }
  return pi_pow(w.pi, std::move(x));
}

Ordinal two_nf_ordinal(const TwoNF& w) {
  Ordinal o;
  for (std::size_t level = w.coeffs.size(); level-- > 0;) {
    o += Ordinal::scale(level + 1, w.coeffs[level]);
  }
  return o + Ordinal::natural(w.pi);
}

TwoNF two_nf_from_ordinal(const Ordinal& o) {
  std::vector<std::uint64_t> coeffs;
  if (!o.is_zero() && o.leading_degree() > 0) {
    coeffs.assign(o.leading_degree(), 0);
    for (const OrdinalTerm& t : o.terms()) {
      if (t.degree > 0) coeffs[t.degree - 1] = t.coeff;
    }
  }
  return TwoNF(o.finite_part(), std::move(coeffs));
}

namespace {

std::size_t level_cost(std::size_t level) { return level == 0 ? 2 : level + 4; }

// Index of the lowest non-zero coefficient. Precondition: coeffs non-empty.
std::size_t lowest_level(const TwoNF& w) {
  std::size_t i = 0;
  while (w.coeffs[i] == 0) ++i;
  return i;
}

TwoNF with_pi(std::uint64_t pi, const TwoNF& w) { return TwoNF(pi, w.coeffs); }

}  // namespace

std::size_t two_nf_size(const TwoNF& w) {
  std::size_t size = w.pi;
  for (std::size_t level = 0; level < w.coeffs.size(); ++level) {
    size += w.coeffs[level] * level_cost(level);
  }
  return size;
}

std::vector<TwoNF> enumerate_two_nf(std::size_t max_size) {
  std::vector<TwoNF> out;
  std::vector<std::uint64_t> coeffs;
  std::function<void(std::size_t, std::size_t)> fill = [&](std::size_t level,
                                                           std::size_t used) {
    for (std::size_t pi = 0; used + pi <= max_size; ++pi) {
      out.emplace_back(pi, coeffs);
    }
    // Extend with coefficients at `level` and above; the trailing one must
    // be non-zero, so place a run of zeros and then a non-zero entry.
    for (std::size_t top = level; used + level_cost(top) <= max_size; ++top) {
      for (std::uint64_t n = 1; used + n * level_cost(top) <= max_size; ++n) {
        std::size_t saved = coeffs.size();
        coeffs.resize(top + 1, 0);
        coeffs[top] = n;
        fill(top + 1, used + n * level_cost(top));
        coeffs.resize(saved);
      }
    }
  };
  fill(0, 0);
  std::sort(out.begin(), out.end(), [](const TwoNF& a, const TwoNF& b) {
    return two_nf_ordinal(a) < two_nf_ordinal(b);
  });
  return out;
}

TwoNF conj_pick_max(const TwoNF& a, const TwoNF& b) {
  auto c = two_nf_ordinal(a) <=> two_nf_ordinal(b);
  if (c > 0) return a;
  if (c < 0) return b;
  return two_nf_to_pattern(a) <= two_nf_to_pattern(b) ? a : b;
}

TwoNF sigma_conj_normalize(const TwoNF& t) {
  if (t.is_empty()) return TwoNF(0, {1});  // σ ≡ σπ = c^0_1
  if (t.pi == 0) return t;                 // t = σ ∧ …, σ is absorbed
  // t = π^k c^i_{m_i} … with i the lowest non-zero level (0 when t = π^k).
  // σ ∧ t ≡ σ ∧ π^{k+i} σ π c^{k+i}_{m_{k+i}} … = c^{k+i}_{m_{k+i}+1} …
  const std::size_t i = t.coeffs.empty() ? 0 : lowest_level(t);
  const std::size_t level = t.pi + i;
  std::vector<std::uint64_t> coeffs(std::max(t.coeffs.size(), level + 1), 0);
  for (std::size_t j = level; j < t.coeffs.size(); ++j) coeffs[j] = t.coeffs[j];
  coeffs[level] += 1;
  return TwoNF(0, std::move(coeffs));
}

TwoNF sigma_apply(const TwoNF& w) {
  if (w.is_empty()) return TwoNF(0, {1});
  if (w.pi == 0) {
    throw NormalizationStuckError("σ applied to a σ-headed normal form",
                                  sigma(two_nf_to_pattern(w)));
  }
  // σ π^m c^0_{m_0} … = σ π c^0_{m_0} … = c^0_{m_0+1} …
  std::vector<std::uint64_t> coeffs = w.coeffs;
  if (coeffs.empty()) coeffs.push_back(0);
  coeffs[0] += 1;
  return TwoNF(0, std::move(coeffs));
}

TwoNF conj_normalize(const TwoNF& a, const TwoNF& b) {
  if (a.is_empty()) return b;
  if (b.is_empty()) return a;
  if (a.pi > 0 && b.pi > 0) return conj_pick_max(a, b);

  // One side is σ-headed, so the conjunction equals σ ∧ a ∧ b ≡
  // (σ ∧ a) ∧ (σ ∧ b). Bring both sides to the shape σ ∧ π^e σ π x, read
  // off from the lowest non-zero level e.
  TwoNF lo = sigma_conj_normalize(a);
  TwoNF hi = sigma_conj_normalize(b);
  std::size_t e_lo = lowest_level(lo);
  std::size_t e_hi = lowest_level(hi);
  if (e_lo > e_hi) {
    std::swap(lo, hi);
    std::swap(e_lo, e_hi);
  }
  if (e_hi == 0) return conj_pick_max(lo, hi);  // both of the form σπx

  auto tail = [](const TwoNF& w, std::size_t e) {
    std::vector<std::uint64_t> coeffs = w.coeffs;
    coeffs[e] -= 1;
    return TwoNF(0, std::move(coeffs));
  };
  const TwoNF x_lo = tail(lo, e_lo);
  const TwoNF x_hi = tail(hi, e_hi);
  // σ ∧ π^{e_hi} σ (A ∧ B) with A, B π-prefixed, so A ∧ B ≡ max(A, B).
  const TwoNF a_part = e_lo == 0 ? with_pi(1, x_lo)
                                 : with_pi(e_lo, sigma_apply(with_pi(1, x_lo)));
  const TwoNF b_part = with_pi(e_hi, sigma_apply(with_pi(1, x_hi)));
  const TwoNF w = conj_pick_max(a_part, b_part);
  return sigma_conj_normalize(with_pi(e_hi, sigma_apply(w)));
}

namespace {

class Normalizer {
 public:
  TwoNF run(const Pattern& p) {
    switch (p.kind()) {
      case Pattern::Kind::kEmpty:
        return TwoNF();
      case Pattern::Kind::kPi: {
        TwoNF inner = run(p.arg());
        TwoNF out = with_pi(inner.pi + 1, inner);
        note("π-prefix", p, out);
        return out;
      }
      case Pattern::Kind::kSigma: {
        TwoNF inner = run(p.arg());
        if (inner.pi == 0 && !inner.is_empty()) {
          throw NormalizationStuckError("σ applied to a σ-headed normal form",
                                        p);
        }
        TwoNF out = sigma_apply(inner);
        note(inner.is_empty() ? "Σ-to-Π transfer (σ ≡ σπ)"
                              : "σπ^m collapse (σπ^m c… = c^0_{m_0+1}…)",
             p, out);
        return out;
      }
      case Pattern::Kind::kConj: {
        auto kids = p.children();
        TwoNF acc = run(kids.front());
        for (std::size_t i = 1; i < kids.size(); ++i) {
          TwoNF next = run(kids[i]);
          const bool both_pi = acc.pi > 0 && next.pi > 0;
          acc = conj_normalize(acc, next);
          note(both_pi ? "π-normal-form comparison" : "σ∧t normal form", p,
               acc);
        }
        return acc;
      }
    }
    throw NormalizationStuckError("unknown node", p);
  }

  std::vector<NormalizationStep> take_sketch() { return std::move(sketch_); }

 private:
  void note(std::string lemma, const Pattern& p, const TwoNF& w) {
    sketch_.push_back({std::move(lemma),
                       render(p) + " => " + render(two_nf_to_pattern(w))});
  }

  std::vector<NormalizationStep> sketch_;
};

}  // namespace

Normalization to_two_nf(const Pattern& p) {
  if (contains_sigma_sigma(p)) throw ContainsSigmaSigmaError(p);
  Normalizer n;
  TwoNF form = n.run(p);
  return {std::move(form), n.take_sketch()};
}

}  // namespace reflect
