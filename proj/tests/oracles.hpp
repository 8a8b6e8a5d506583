#pragma once

// Independent reference implementations used to cross-check the library.
// They trade speed for obviousness and share no code with core/.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "reflect/pattern.hpp"

namespace oracle {

// An ordinal below ω^ω as an unnormalized sum of powers ω^d, left to right.
using Atoms = std::vector<std::uint64_t>;

// Rewrite ω^a + ω^b to ω^b while some a < b is immediately followed by b.
inline Atoms normalize(Atoms xs) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
      if (xs[i] < xs[i + 1]) {
        xs.erase(xs.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  return xs;
}

inline Atoms add(Atoms a, const Atoms& b) {
  a.insert(a.end(), b.begin(), b.end());
  return normalize(std::move(a));
}

// Normalized atom lists are non-increasing, so comparison is lexicographic
// with a proper prefix being smaller.
inline int compare(const Atoms& a, const Atoms& b) {
  const Atoms x = normalize(a), y = normalize(b);
  if (std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end())) {
    return -1;
  }
  if (std::lexicographical_compare(y.begin(), y.end(), x.begin(), x.end())) {
    return 1;
  }
  return 0;
}

// Linear patterns as strings over {s, p}.
inline std::string linear_word(const reflect::Pattern& p) {
  std::string w;
  for (const reflect::Pattern* q = &p; !q->is_empty(); q = &q->arg()) {
    w += q->is_sigma() ? 's' : 'p';
  }
  return w;
}

// o(σ^n) = ω^n; o(t π s) = o(s) + o(t), for every split at a π. All splits
// are evaluated and must agree; returns false in *consistent otherwise.
inline Atoms linear_ordinal(const std::string& w, bool* consistent) {
  std::vector<std::size_t> pis;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == 'p') pis.push_back(i);
  }
  if (pis.empty()) return {w.size()};
  std::optional<Atoms> value;
  for (std::size_t i : pis) {
    Atoms v = add(linear_ordinal(w.substr(i + 1), consistent),
                  linear_ordinal(w.substr(0, i), consistent));
    if (value && compare(*value, v) != 0) *consistent = false;
    if (!value) value = v;
  }
  return *value;
}

// Every raw term of size exactly n built from binary conjunction, σ and π,
// left uncanonicalized. Exponential; only for tiny n.
inline std::vector<reflect::Pattern> raw_terms(std::size_t n) {
  std::vector<std::vector<reflect::Pattern>> by(n + 1);
  by[0].emplace_back();
  for (std::size_t m = 1; m <= n; ++m) {
    for (const reflect::Pattern& x : by[m - 1]) {
      by[m].push_back(reflect::Pattern::make_sigma(x));
      by[m].push_back(reflect::Pattern::make_pi(x));
    }
    for (std::size_t i = 0; i < m; ++i) {
      for (const reflect::Pattern& a : by[i]) {
        for (const reflect::Pattern& b : by[m - 1 - i]) {
          by[m].push_back(reflect::Pattern::make_conj({a, b}));
        }
      }
    }
  }
  return by[n];
}

}  // namespace oracle
