#include "reflect/rules.hpp"

#include <algorithm>
#include <stdexcept>

#include "reflect/normal_form.hpp"

namespace reflect {

Universe::Universe(std::vector<Pattern> patterns) {
  for (Pattern& p : patterns) p = canonicalize(p);
  std::sort(patterns.begin(), patterns.end());
  patterns.erase(std::unique(patterns.begin(), patterns.end()), patterns.end());
  patterns_ = std::move(patterns);
  index_.reserve(patterns_.size());
  for (std::size_t i = 0; i < patterns_.size(); ++i) {
    index_.emplace(patterns_[i], static_cast<std::ptrdiff_t>(i));
    max_size_ = std::max(max_size_, patterns_[i].size());
  }
}

std::ptrdiff_t Universe::index_of(const Pattern& p) const {
  auto it = index_.find(p);
  return it == index_.end() ? -1 : it->second;
}

namespace {

// ---------------------------------------------------------------------------
// Substitution access and pattern shape helpers.

std::optional<Pattern> pat(const Substitution& s, const char* var) {
  auto it = s.find(var);
  if (it == s.end()) return std::nullopt;
  if (const auto* p = std::get_if<Pattern>(&it->second)) {
    if (!is_canonical(*p)) return std::nullopt;
    return *p;
  }
  return std::nullopt;
}

std::optional<std::uint64_t> nat(const Substitution& s, const std::string& var) {
  auto it = s.find(var);
  if (it == s.end()) return std::nullopt;
  if (const auto* n = std::get_if<std::uint64_t>(&it->second)) return *n;
  return std::nullopt;
}

// Exponents above this are rejected by builders; keeps replays bounded.
constexpr std::uint64_t kMaxExponent = 64;

Instance axiom(Pattern from, Pattern to) {
  return Instance{Fact{std::move(from), std::move(to)}, {}};
}

std::size_t leading(const Pattern& p, Pattern::Kind kind, Pattern* tail) {
  std::size_t n = 0;
  const Pattern* q = &p;
  while (q->kind() == kind) {
    q = &q->arg();
    ++n;
  }
  if (tail) *tail = *q;
  return n;
}

std::vector<Pattern> conjuncts(const Pattern& p) {
  if (p.is_empty()) return {};
  if (p.is_conj()) return {p.children().begin(), p.children().end()};
  return {p};
}

bool is_sigma_power(const Pattern& p, std::size_t* n) {
  Pattern tail;
  std::size_t k = leading(p, Pattern::Kind::kSigma, &tail);
  if (k == 0 || !tail.is_empty()) return false;
  *n = k;
  return true;
}

// Context split of a conjunction: the chosen conjuncts and the rest.
Pattern rest_of(const std::vector<Pattern>& kids, std::size_t i, std::size_t j) {
  std::vector<Pattern> rest;
  for (std::size_t x = 0; x < kids.size(); ++x) {
    if (x != i && x != j) rest.push_back(kids[x]);
  }
  return conjoin(std::move(rest));
}

bool is_two_normal_form(const Pattern& s) {
  if (contains_sigma_sigma(s)) return false;
  return two_nf_to_pattern(to_two_nf(s).form) == s;
}

// c^0_{n_0} c^1_{n_1} … c^k_{n_k} s
Pattern combinator_product(const std::vector<std::uint64_t>& ns,
                           const Pattern& s) {
  Pattern x = s;
  for (std::size_t level = ns.size(); level-- > 0;) {
    x = expand_combinator(level, ns[level], x);
  }
  return x;
}

std::size_t combinator_cost(std::size_t level) {
  return level == 0 ? 2 : level + 4;
}

// Case split shared by R5, R6, R7: p = σ ∧ π^{k+1} s ∧ u. Calls
// visit(k, s, u) for every decomposition.
template <typename F>
void match_sigma_and_pi_power(const Pattern& p, F visit) {
  if (!p.is_conj()) return;
  std::vector<Pattern> kids = conjuncts(p);
  const Pattern bare_sigma = sigma();
  auto sig = std::find(kids.begin(), kids.end(), bare_sigma);
  if (sig == kids.end()) return;
  const std::size_t i = static_cast<std::size_t>(sig - kids.begin());
  for (std::size_t j = 0; j < kids.size(); ++j) {
    if (j == i || !kids[j].is_pi()) continue;
    Pattern tail;
    const std::size_t depth = leading(kids[j], Pattern::Kind::kPi, &tail);
    const Pattern u = rest_of(kids, i, j);
    for (std::size_t k = 0; k < depth; ++k) {
      visit(k, pi_pow(depth - k - 1, tail), u);
    }
  }
}

Substitution subst_ksu(std::size_t k, const Pattern& s, const Pattern& u) {
  Substitution out{{"k", std::uint64_t{k}}, {"s", s}};
  if (!u.is_empty()) out.emplace("u", u);
  return out;
}

// σ ∧ π^{k+1} s ∧ u, with u optional.
std::optional<Pattern> sigma_pi_power_from(const Substitution& sub,
                                           std::uint64_t* k_out, Pattern* s_out,
                                           Pattern* u_out) {
  auto k = nat(sub, "k");
  auto s = pat(sub, "s");
  if (!k || !s || *k > kMaxExponent) return std::nullopt;
  Pattern u;
  if (sub.count("u")) {
    auto uu = pat(sub, "u");
    if (!uu) return std::nullopt;
    u = *uu;
  }
  *k_out = *k;
  *s_out = *s;
  *u_out = u;
  return conjoin({sigma(), pi_pow(*k + 1, *s), u});
}

// Proper sub-conjunctions of p: subsets of its conjuncts other than the
// whole set. Calls visit(kept, dropped, contains_first).
template <typename F>
void for_each_subconjunction(const Pattern& p, F visit) {
  if (p.is_empty()) return;
  std::vector<Pattern> kids = conjuncts(p);
  if (kids.size() > 16) return;
  const std::uint32_t full = (1u << kids.size()) - 1;
  for (std::uint32_t mask = 0; mask < full; ++mask) {
    std::vector<Pattern> kept, dropped;
    for (std::size_t i = 0; i < kids.size(); ++i) {
      ((mask >> i) & 1u ? kept : dropped).push_back(kids[i]);
    }
    visit(conjoin(std::move(kept)), conjoin(std::move(dropped)),
          (mask & 1u) != 0);
  }
}

// ---------------------------------------------------------------------------
// The catalog.

std::vector<Rule> build_catalog() {
  std::vector<Rule> c;
  auto add = [&](Rule r) { c.push_back(std::move(r)); };

  add({"R1a", "iteration lemma (Σ¹₁)", "σσs ⟹ σs", "", RuleKind::kAxiom,
       [](const Pattern& p, const Universe&, std::vector<Substitution>& out) {
         if (p.is_sigma() && p.arg().is_sigma()) {
           out.push_back({{"s", p.arg().arg()}});
         }
       },
       [](const Substitution& sub) -> std::optional<Instance> {
         auto s = pat(sub, "s");
         if (!s) return std::nullopt;
         return axiom(sigma(sigma(*s)), sigma(*s));
       }});

  add({"R1b", "iteration lemma (Π¹₁)", "ππs ⟹ πs", "", RuleKind::kAxiom,
       [](const Pattern& p, const Universe&, std::vector<Substitution>& out) {
         if (p.is_pi() && p.arg().is_pi()) out.push_back({{"s", p.arg().arg()}});
       },
       [](const Substitution& sub) -> std::optional<Instance> {
         auto s = pat(sub, "s");
         if (!s) return std::nullopt;
         return axiom(pi(pi(*s)), pi(*s));
       }});

  // R2a and R2b match σ(s) ∧ π(t) ∧ u; the context u is carried through.
  auto match_sigma_pi = [](const Pattern& p, const Universe&,
                           std::vector<Substitution>& out) {
    if (!p.is_conj()) return;
    std::vector<Pattern> kids = conjuncts(p);
    for (std::size_t i = 0; i < kids.size(); ++i) {
      if (!kids[i].is_sigma()) continue;
      for (std::size_t j = 0; j < kids.size(); ++j) {
        if (!kids[j].is_pi()) continue;
        Substitution sub{{"s", kids[i].arg()}, {"t", kids[j].arg()}};
        Pattern u = rest_of(kids, i, j);
        if (!u.is_empty()) sub.emplace("u", u);
        out.push_back(std::move(sub));
      }
    }
  };
  auto sigma_pi_parts = [](const Substitution& sub, Pattern* s, Pattern* t,
                           Pattern* u) {
    auto ss = pat(sub, "s");
    auto tt = pat(sub, "t");
    if (!ss || !tt) return false;
    *s = *ss;
    *t = *tt;
    *u = Pattern();
    if (sub.count("u")) {
      auto uu = pat(sub, "u");
      if (!uu) return false;
      *u = *uu;
    }
    return true;
  };

  add({"R2a", "transfer lemma, π-lift", "σ(s)∧π(t) ⟹ π(σ(s)∧t)", "",
       RuleKind::kAxiom, match_sigma_pi,
       [sigma_pi_parts](const Substitution& sub) -> std::optional<Instance> {
         Pattern s, t, u;
         if (!sigma_pi_parts(sub, &s, &t, &u)) return std::nullopt;
         return axiom(conjoin({sigma(s), pi(t), u}),
                      conjoin(pi(conjoin(sigma(s), t)), u));
       }});

  add({"R2b", "transfer lemma, σ-lift", "σ(s)∧π(t) ⟹ σ(s∧π(t))", "",
       RuleKind::kAxiom, match_sigma_pi,
       [sigma_pi_parts](const Substitution& sub) -> std::optional<Instance> {
         Pattern s, t, u;
         if (!sigma_pi_parts(sub, &s, &t, &u)) return std::nullopt;
         return axiom(conjoin({sigma(s), pi(t), u}),
                      conjoin(sigma(conjoin(s, pi(t))), u));
       }});

  auto match_sigma_head = [](const Pattern& p, const Universe&,
                             std::vector<Substitution>& out) {
    if (p.is_sigma()) out.push_back({{"s", p.arg()}});
  };

  add({"R2c", "transfer lemma, π-padding", "σ(s) ⟹ σ(s∧π)", "",
       RuleKind::kAxiom, match_sigma_head,
       [](const Substitution& sub) -> std::optional<Instance> {
         auto s = pat(sub, "s");
         if (!s) return std::nullopt;
         return axiom(sigma(*s), sigma(conjoin(*s, pi())));
       }});

  add({"R3", "Σ¹₁ self-transfer theorem", "σ(s) ⟹ σ(s∧π(s))", "",
       RuleKind::kAxiom, match_sigma_head,
       [](const Substitution& sub) -> std::optional<Instance> {
         auto s = pat(sub, "s");
         if (!s) return std::nullopt;
         return axiom(sigma(*s), sigma(conjoin(*s, pi(*s))));
       }});

  add({"R4", "contraction lemma", "σπσπs ⟹ σπs", "", RuleKind::kAxiom,
       [](const Pattern& p, const Universe&, std::vector<Substitution>& out) {
         if (p.is_sigma() && p.arg().is_pi() && p.arg().arg().is_sigma() &&
             p.arg().arg().arg().is_pi()) {
           out.push_back({{"s", p.arg().arg().arg().arg()}});
         }
       },
       [](const Substitution& sub) -> std::optional<Instance> {
         auto s = pat(sub, "s");
         if (!s) return std::nullopt;
         return axiom(sigma(pi(sigma(pi(*s)))), sigma(pi(*s)));
       }});

  add({"R5", "combinator lemma", "σ∧π^{k+1}s ⟹ π c^k_n s", "",
       RuleKind::kAxiom,
       [](const Pattern& p, const Universe& u, std::vector<Substitution>& out) {
         match_sigma_and_pi_power(p, [&](std::size_t k, const Pattern& s,
                                         const Pattern& ctx) {
           const std::size_t base = 1 + s.size() + ctx.size() + !ctx.is_empty();
           for (std::size_t n = 0;
                base + n * combinator_cost(k) <= u.max_pattern_size(); ++n) {
             Substitution sub = subst_ksu(k, s, ctx);
             sub.emplace("n", std::uint64_t{n});
             out.push_back(std::move(sub));
           }
         });
       },
       [](const Substitution& sub) -> std::optional<Instance> {
         std::uint64_t k;
         Pattern s, u;
         auto from = sigma_pi_power_from(sub, &k, &s, &u);
         auto n = nat(sub, "n");
         if (!from || !n || *n > kMaxExponent) return std::nullopt;
         return axiom(*from, conjoin(pi(expand_combinator(k, *n, s)), u));
       }});

  add({"R6", "combinator corollary", "σ∧π^{k+1}s ⟹ π^{k+1}σπ c^l_n s",
       "l ≤ k", RuleKind::kAxiom,
       [](const Pattern& p, const Universe& u, std::vector<Substitution>& out) {
         match_sigma_and_pi_power(p, [&](std::size_t k, const Pattern& s,
                                         const Pattern& ctx) {
           const std::size_t base =
               k + 3 + s.size() + ctx.size() + !ctx.is_empty();
           for (std::size_t l = 0; l <= k; ++l) {
             for (std::size_t n = 0;
                  base + n * combinator_cost(l) <= u.max_pattern_size(); ++n) {
               Substitution sub = subst_ksu(k, s, ctx);
               sub.emplace("l", std::uint64_t{l});
               sub.emplace("n", std::uint64_t{n});
               out.push_back(std::move(sub));
             }
           }
         });
       },
       [](const Substitution& sub) -> std::optional<Instance> {
         std::uint64_t k;
         Pattern s, u;
         auto from = sigma_pi_power_from(sub, &k, &s, &u);
         auto l = nat(sub, "l");
         auto n = nat(sub, "n");
         if (!from || !l || !n || *l > k || *n > kMaxExponent) {
           return std::nullopt;
         }
         Pattern to = pi_pow(k + 1, sigma(pi(expand_combinator(*l, *n, s))));
         return axiom(*from, conjoin(to, u));
       }});

  add({"R7", "combinator product lemma",
       "σ∧π^{k+1}s ⟹ π^{k+1}σπ c^0_{n_0}…c^k_{n_k} s", "", RuleKind::kAxiom,
       [](const Pattern& p, const Universe& u, std::vector<Substitution>& out) {
         match_sigma_and_pi_power(p, [&](std::size_t k, const Pattern& s,
                                         const Pattern& ctx) {
           const std::size_t base =
               k + 3 + s.size() + ctx.size() + !ctx.is_empty();
           if (base > u.max_pattern_size()) return;
           std::vector<std::uint64_t> ns(k + 1, 0);
           auto rec = [&](auto&& self, std::size_t level,
                          std::size_t used) -> void {
             if (level > k) {
               Substitution sub = subst_ksu(k, s, ctx);
               for (std::size_t i = 0; i <= k; ++i) {
                 sub.emplace("n" + std::to_string(i), ns[i]);
               }
               out.push_back(std::move(sub));
               return;
             }
             for (std::uint64_t n = 0;
                  used + n * combinator_cost(level) <= u.max_pattern_size();
                  ++n) {
               ns[level] = n;
               self(self, level + 1, used + n * combinator_cost(level));
             }
             ns[level] = 0;
           };
           rec(rec, 0, base);
         });
       },
       [](const Substitution& sub) -> std::optional<Instance> {
         std::uint64_t k;
         Pattern s, u;
         auto from = sigma_pi_power_from(sub, &k, &s, &u);
         if (!from) return std::nullopt;
         std::vector<std::uint64_t> ns;
         for (std::uint64_t i = 0; i <= k; ++i) {
           auto n = nat(sub, "n" + std::to_string(i));
           if (!n || *n > kMaxExponent) return std::nullopt;
           ns.push_back(*n);
         }
         Pattern to = pi_pow(k + 1, sigma(pi(combinator_product(ns, s))));
         return axiom(*from, conjoin(to, u));
       }});

  add({"R8", "σσ universality lemma", "σσ ⟹ σ(s)", "s in 2-normal form",
       RuleKind::kAxiom,
       [](const Pattern& p, const Universe& u, std::vector<Substitution>& out) {
         if (p != sigma_pow(2)) return;
         for (const Pattern& s : u.patterns()) {
           if (s.size() + 1 <= u.max_pattern_size() && is_two_normal_form(s)) {
             out.push_back({{"s", s}});
           }
         }
       },
       [](const Substitution& sub) -> std::optional<Instance> {
         auto s = pat(sub, "s");
         if (!s || !is_two_normal_form(*s)) return std::nullopt;
         return axiom(sigma_pow(2), sigma(*s));
       }});

  add({"R9", "linear absorption identity", "σ^mπs ⟹ σ^mπσ^nπs, and converse",
       "n < m", RuleKind::kAxiom,
       [](const Pattern& p, const Universe& u, std::vector<Substitution>& out) {
         Pattern after;
         const std::size_t m = leading(p, Pattern::Kind::kSigma, &after);
         if (m == 0 || !after.is_pi()) return;
         const Pattern s = after.arg();
         for (std::size_t n = 0; n < m && p.size() + n + 1 <= u.max_pattern_size();
              ++n) {
           out.push_back({{"m", std::uint64_t{m}},
                          {"n", std::uint64_t{n}},
                          {"s", s}});
         }
         // Converse: s = σ^n π s' with n < m.
         Pattern after_n;
         const std::size_t n = leading(s, Pattern::Kind::kSigma, &after_n);
         if (n < m && after_n.is_pi()) {
           out.push_back({{"m", std::uint64_t{m}},
                          {"n", std::uint64_t{n}},
                          {"s", after_n.arg()},
                          {"converse", std::uint64_t{1}}});
         }
       },
       [](const Substitution& sub) -> std::optional<Instance> {
         auto m = nat(sub, "m");
         auto n = nat(sub, "n");
         auto s = pat(sub, "s");
         if (!m || !n || !s || !(*n < *m) || *m > kMaxExponent) {
           return std::nullopt;
         }
         Pattern short_form = sigma_pow(*m, pi(*s));
         Pattern long_form = sigma_pow(*m, pi(sigma_pow(*n, pi(*s))));
         const bool converse = nat(sub, "converse").value_or(0) != 0;
         return converse ? axiom(long_form, short_form)
                         : axiom(short_form, long_form);
       }});

  add({"R10", "σπⁿσ collapse identity", "σπ^nσ ⟹ σπ^mσ", "n, m ≥ 1",
       RuleKind::kAxiom,
       [](const Pattern& p, const Universe& u, std::vector<Substitution>& out) {
         if (!p.is_sigma()) return;
         Pattern tail;
         const std::size_t n = leading(p.arg(), Pattern::Kind::kPi, &tail);
         if (n == 0 || tail != sigma()) return;
         for (std::size_t m = 1; m + 2 <= u.max_pattern_size(); ++m) {
           if (m != n) {
             out.push_back({{"n", std::uint64_t{n}}, {"m", std::uint64_t{m}}});
           }
         }
       },
       [](const Substitution& sub) -> std::optional<Instance> {
         auto n = nat(sub, "n");
         auto m = nat(sub, "m");
         if (!n || !m || *n < 1 || *m < 1 || *n > kMaxExponent ||
             *m > kMaxExponent) {
           return std::nullopt;
         }
         return axiom(sigma(pi_pow(*n, sigma())), sigma(pi_pow(*m, sigma())));
       }});

  add({"R11", "cofinality theorem, inductive step",
       "σ(σ^n∧t) ⟹ σ(σ^n∧t∧s)", "s contains no σ^{n+1}", RuleKind::kAxiom,
       [](const Pattern& p, const Universe& u, std::vector<Substitution>& out) {
         if (!p.is_sigma()) return;
         const Pattern& a = p.arg();
         std::vector<Pattern> kids = conjuncts(a);
         // (n, t) choices: n = 0 with t = a, or a conjunct σ^n with t the rest.
         std::vector<std::pair<std::size_t, Pattern>> splits{{0, a}};
         for (std::size_t i = 0; i < kids.size(); ++i) {
           std::size_t n;
           if (is_sigma_power(kids[i], &n)) {
             splits.emplace_back(n, rest_of(kids, i, i));
           }
         }
         for (const auto& [n, t] : splits) {
           for (const Pattern& s : u.patterns()) {
             if (s.is_empty() || max_sigma_run(s) > n) continue;
             Pattern to = sigma(conjoin(a, s));
             if (to == p || to.size() > u.max_pattern_size()) continue;
             out.push_back({{"n", std::uint64_t{n}}, {"t", t}, {"s", s}});
           }
         }
       },
       [](const Substitution& sub) -> std::optional<Instance> {
         auto n = nat(sub, "n");
         auto t = pat(sub, "t");
         auto s = pat(sub, "s");
         if (!n || !t || !s || *n > kMaxExponent || max_sigma_run(*s) > *n) {
           return std::nullopt;
         }
         Pattern base = conjoin(sigma_pow(*n), *t);
         return axiom(sigma(base), sigma(conjoin(base, *s)));
       }});

  add({"W1", "weakening", "s∧t ⟹ s", "", RuleKind::kAxiom,
       [](const Pattern& p, const Universe& u, std::vector<Substitution>& out) {
         for_each_subconjunction(p, [&](const Pattern& kept,
                                        const Pattern& dropped, bool first) {
           if ((first || kept.is_empty()) && u.contains(kept)) {
             out.push_back({{"s", kept}, {"t", dropped}});
           }
         });
       },
       [](const Substitution& sub) -> std::optional<Instance> {
         auto s = pat(sub, "s");
         auto t = pat(sub, "t");
         if (!s || !t || t->is_empty()) return std::nullopt;
         return axiom(conjoin(*s, *t), *s);
       }});

  add({"W2", "weakening", "s∧t ⟹ t", "", RuleKind::kAxiom,
       [](const Pattern& p, const Universe& u, std::vector<Substitution>& out) {
         for_each_subconjunction(p, [&](const Pattern& kept,
                                        const Pattern& dropped, bool first) {
           if (!first && !kept.is_empty() && u.contains(kept)) {
             out.push_back({{"s", dropped}, {"t", kept}});
           }
         });
       },
       [](const Substitution& sub) -> std::optional<Instance> {
         auto s = pat(sub, "s");
         auto t = pat(sub, "t");
         if (!s || !t || s->is_empty()) return std::nullopt;
         return axiom(conjoin(*s, *t), *t);
       }});

  auto inference = [&](std::string id, std::string citation,
                       std::string schema,
                       std::function<std::optional<Instance>(const Pattern&,
                                                             const Pattern&,
                                                             const Pattern&)>
                           make,
                       bool needs_u) {
    add({std::move(id), std::move(citation), std::move(schema), "",
         RuleKind::kInference, nullptr,
         [make, needs_u](const Substitution& sub) -> std::optional<Instance> {
           auto s = pat(sub, "s");
           auto t = pat(sub, "t");
           auto u = needs_u ? pat(sub, "u") : std::optional<Pattern>(Pattern());
           if (!s || !t || !u) return std::nullopt;
           return make(*s, *t, *u);
         }});
  };

  inference("W3", "conjunction introduction",
            "s⟹t, s⟹u ⊢ s⟹t∧u",
            [](const Pattern& s, const Pattern& t, const Pattern& u) {
              return std::optional<Instance>(
                  Instance{{s, conjoin(t, u)}, {{s, t}, {s, u}}});
            },
            true);
  inference("M1", "σ-monotonicity", "s⟹t ⊢ σ(s)⟹σ(t)",
            [](const Pattern& s, const Pattern& t, const Pattern&) {
              return std::optional<Instance>(
                  Instance{{sigma(s), sigma(t)}, {{s, t}}});
            },
            false);
  inference("M2", "π-monotonicity", "s⟹t ⊢ π(s)⟹π(t)",
            [](const Pattern& s, const Pattern& t, const Pattern&) {
              return std::optional<Instance>(Instance{{pi(s), pi(t)}, {{s, t}}});
            },
            false);
  inference("M3", "conjunctive monotonicity", "s⟹t ⊢ s∧u⟹t∧u",
            [](const Pattern& s, const Pattern& t, const Pattern& u) {
              return std::optional<Instance>(
                  Instance{{conjoin(s, u), conjoin(t, u)}, {{s, t}}});
            },
            true);
  inference("T", "transitivity", "s⟹t, t⟹u ⊢ s⟹u",
            [](const Pattern& s, const Pattern& t, const Pattern& u) {
              return std::optional<Instance>(Instance{{s, u}, {{s, t}, {t, u}}});
            },
            true);

  add({"Refl", "reflexivity", "s ⟹ s", "", RuleKind::kAxiom,
       [](const Pattern& p, const Universe&, std::vector<Substitution>& out) {
         out.push_back({{"s", p}});
       },
       [](const Substitution& sub) -> std::optional<Instance> {
         auto s = pat(sub, "s");
         if (!s) return std::nullopt;
         return axiom(*s, *s);
       }});
  return c;
}

}  // namespace

const std::vector<Rule>& rule_catalog() {
  static const std::vector<Rule> catalog = build_catalog();
  return catalog;
}

const Rule* find_rule(std::string_view id, const std::vector<Rule>& catalog) {
  for (const Rule& r : catalog) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

bool verify_derivation(const Derivation& d, std::string* error,
                       const std::vector<Rule>& catalog) {
  auto fail = [&](std::size_t i, const std::string& why) {
    if (error) *error = "step " + std::to_string(i) + ": " + why;
    return false;
  };
  if (d.steps.empty()) return fail(0, "empty derivation");
  for (std::size_t i = 0; i < d.steps.size(); ++i) {
    const Step& step = d.steps[i];
    const Rule* rule = find_rule(step.rule, catalog);
    if (!rule) return fail(i, "unknown rule '" + step.rule + "'");
    std::optional<Instance> inst = rule->build(step.subst);
    if (!inst) return fail(i, "substitution rejected by " + step.rule);
    if (!(inst->conclusion == step.fact)) {
      return fail(i, "rule yields " + render(inst->conclusion.from) + " ⟹ " +
                         render(inst->conclusion.to));
    }
    if (inst->premises.size() != step.premises.size()) {
      return fail(i, "wrong number of premises");
    }
    for (std::size_t j = 0; j < step.premises.size(); ++j) {
      const std::size_t ref = step.premises[j];
      if (ref >= i) return fail(i, "premise refers forward");
      if (!(d.steps[ref].fact == inst->premises[j])) {
        return fail(i, "premise " + std::to_string(j) + " does not match");
      }
    }
  }
  if (!(d.steps.back().fact == d.goal)) {
    return fail(d.steps.size() - 1, "last step does not produce the goal");
  }
  return true;
}

// ---------------------------------------------------------------------------
// Fact base.

std::ptrdiff_t FactBase::find(const Fact& f) const {
  const std::ptrdiff_t a = universe_.index_of(f.from);
  const std::ptrdiff_t b = universe_.index_of(f.to);
  if (a < 0 || b < 0) return -1;
  auto it = by_key_.find(key(static_cast<std::int32_t>(a),
                             static_cast<std::int32_t>(b)));
  return it == by_key_.end() ? -1 : it->second;
}

bool FactBase::contains(const Fact& f) const { return find(f) >= 0; }

std::vector<Fact> FactBase::facts() const {
  std::vector<Fact> out;
  out.reserve(records_.size());
  const auto& ps = universe_.patterns();
  for (const Record& r : records_) out.push_back({ps[r.from], ps[r.to]});
  return out;
}

std::map<std::string, std::size_t> FactBase::rule_counts() const {
  std::map<std::string, std::size_t> out;
  for (const Record& r : records_) ++out[(*catalog_)[r.rule].id];
  return out;
}

Step FactBase::make_step(const Record& r) const {
  const auto& ps = universe_.patterns();
  const Rule& rule = (*catalog_)[r.rule];
  Step step;
  step.rule = rule.id;
  step.fact = {ps[r.from], ps[r.to]};
  if (rule.kind == RuleKind::kAxiom) {
    step.subst = substs_[r.a];
    return step;
  }
  const Record& p0 = records_[r.a];
  if (rule.id == "M1" || rule.id == "M2") {
    step.subst = {{"s", ps[p0.from]}, {"t", ps[p0.to]}};
  } else if (rule.id == "M3") {
    step.subst = {{"s", ps[p0.from]}, {"t", ps[p0.to]}, {"u", contexts_[r.c]}};
  } else if (rule.id == "W3") {
    step.subst = {{"s", ps[r.from]}, {"t", ps[p0.to]},
                  {"u", ps[records_[r.b].to]}};
  } else {  // T
    step.subst = {{"s", ps[r.from]}, {"t", ps[p0.to]}, {"u", ps[r.to]}};
  }
  return step;
}

std::optional<Derivation> FactBase::derivation(const Fact& f) const {
  const std::ptrdiff_t root = find(f);
  if (root < 0) return std::nullopt;
  // Post-order over the premise DAG, iteratively; chains can be long.
  std::unordered_map<std::int32_t, std::size_t> step_of;
  Derivation d;
  d.goal = f;
  std::vector<std::pair<std::int32_t, bool>> stack{
      {static_cast<std::int32_t>(root), false}};
  while (!stack.empty()) {
    auto [id, expanded] = stack.back();
    stack.pop_back();
    if (step_of.count(id)) continue;
    const Record& r = records_[id];
    const bool inference = (*catalog_)[r.rule].kind == RuleKind::kInference;
    std::vector<std::int32_t> prem;
    if (inference) {
      prem.push_back(r.a);
      if (r.b >= 0) prem.push_back(r.b);
    }
    if (!expanded) {
      stack.push_back({id, true});
      for (auto it = prem.rbegin(); it != prem.rend(); ++it) {
        if (!step_of.count(*it)) stack.push_back({*it, false});
      }
      continue;
    }
    Step step = make_step(r);
    for (std::int32_t p : prem) step.premises.push_back(step_of.at(p));
    step_of.emplace(id, d.steps.size());
    d.steps.push_back(std::move(step));
  }
  return d;
}

// ---------------------------------------------------------------------------
// Saturation.

class Saturator {
 public:
  Saturator(const Universe& universe, const SaturateOptions& options)
      : opts_(options) {
    fb_.universe_ = universe;
    fb_.catalog_ = options.catalog ? options.catalog : &rule_catalog();
    n_ = universe.size();
    words_ = (n_ + 63) / 64;
    succ_.assign(n_ * words_, 0);
    pred_.assign(n_ * words_, 0);
    const auto& ps = universe.patterns();
    sigma_of_.assign(n_, -1);
    pi_of_.assign(n_, -1);
    for (std::size_t i = 0; i < n_; ++i) {
      sigma_of_[i] = static_cast<std::int32_t>(universe.index_of(sigma(ps[i])));
      pi_of_[i] = static_cast<std::int32_t>(universe.index_of(pi(ps[i])));
    }
    // splits_[s]: (u, P) with P = s ∧ u a conjunction in the universe and
    // s, u a partition of P's conjuncts.
    splits_.resize(n_);
    for (std::size_t p = 0; p < n_; ++p) {
      if (!ps[p].is_conj()) continue;
      for_each_subconjunction(ps[p], [&](const Pattern& kept,
                                         const Pattern& dropped, bool) {
        if (kept.is_empty()) return;
        const std::ptrdiff_t s = universe.index_of(kept);
        if (s >= 0) {
          splits_[s].push_back({dropped, static_cast<std::int32_t>(p),
                                static_cast<std::int32_t>(
                                    universe.index_of(dropped))});
        }
      });
    }
    for (std::size_t r = 0; r < fb_.catalog_->size(); ++r) {
      const std::string& id = (*fb_.catalog_)[r].id;
      if ((*fb_.catalog_)[r].kind == RuleKind::kInference) {
        inference_.push_back({id, static_cast<std::int32_t>(r)});
      }
    }
    if (options.stop_at) {
      stop_from_ = universe.index_of(options.stop_at->from);
      stop_to_ = universe.index_of(options.stop_at->to);
    }
  }

  FactBase run() {
    const auto& catalog = *fb_.catalog_;
    const Universe& u = fb_.universe_;
    std::vector<Substitution> subs;
    for (std::size_t r = 0; r < catalog.size() && !done_; ++r) {
      if (catalog[r].kind != RuleKind::kAxiom) continue;
      for (const Pattern& p : u.patterns()) {
        subs.clear();
        catalog[r].match(p, u, subs);
        for (Substitution& sub : subs) {
          std::optional<Instance> inst = catalog[r].build(sub);
          if (!inst) continue;
          const std::ptrdiff_t a = u.index_of(inst->conclusion.from);
          const std::ptrdiff_t b = u.index_of(inst->conclusion.to);
          if (a < 0 || b < 0 || has(a, b)) continue;
          if (a == b && catalog[r].id != "Refl") continue;
          fb_.substs_.push_back(std::move(sub));
          add({static_cast<std::int32_t>(a), static_cast<std::int32_t>(b),
               static_cast<std::int32_t>(r),
               static_cast<std::int32_t>(fb_.substs_.size() - 1)});
          if (done_) break;
        }
        if (done_) break;
      }
    }
    while (!done_ && next_ < fb_.records_.size()) {
      const std::int32_t f = static_cast<std::int32_t>(next_++);
      for (const auto& [id, r] : inference_) {
        if (done_) break;
        if (id == "M1") {
          monotone(f, r, sigma_of_);
        } else if (id == "M2") {
          monotone(f, r, pi_of_);
        } else if (id == "M3") {
          conj_monotone(f, r);
        } else if (id == "W3") {
          conj_intro(f, r);
        } else if (id == "T") {
          transitive(f, r);
        }
      }
    }
    return std::move(fb_);
  }

 private:
  using Record = FactBase::Record;

  struct Split {
    Pattern u;
    std::int32_t whole;
    std::int32_t u_index;  // -1 when u is not in the universe
  };

  bool has(std::size_t a, std::size_t b) const {
    return (succ_[a * words_ + b / 64] >> (b % 64)) & 1u;
  }

  std::int32_t id_of(std::size_t a, std::size_t b) const {
    return fb_.by_key_.at(FactBase::key(static_cast<std::int32_t>(a),
                                        static_cast<std::int32_t>(b)));
  }

  void add(const Record& r) {
    if (fb_.records_.size() >= opts_.budget) {
      fb_.budget_exceeded_ = true;
      done_ = true;
      return;
    }
    succ_[r.from * words_ + r.to / 64] |= std::uint64_t{1} << (r.to % 64);
    pred_[r.to * words_ + r.from / 64] |= std::uint64_t{1} << (r.from % 64);
    fb_.by_key_.emplace(FactBase::key(r.from, r.to),
                        static_cast<std::int32_t>(fb_.records_.size()));
    fb_.records_.push_back(r);
    if (r.from == stop_from_ && r.to == stop_to_) done_ = true;
  }

  void monotone(std::int32_t f, std::int32_t rule,
                const std::vector<std::int32_t>& lift) {
    const Record r = fb_.records_[f];
    const std::int32_t a = lift[r.from];
    const std::int32_t b = lift[r.to];
    if (a < 0 || b < 0 || has(a, b)) return;
    add({a, b, rule, f});
  }

  void conj_monotone(std::int32_t f, std::int32_t rule) {
    const Record r = fb_.records_[f];
    const auto& ps = fb_.universe_.patterns();
    for (const Split& sp : splits_[r.from]) {
      const std::ptrdiff_t q = fb_.universe_.index_of(conjoin(ps[r.to], sp.u));
      if (q < 0 || has(sp.whole, q)) continue;
      fb_.contexts_.push_back(sp.u);
      add({sp.whole, static_cast<std::int32_t>(q), rule, f, -1,
           static_cast<std::int32_t>(fb_.contexts_.size() - 1)});
      if (done_) return;
    }
  }

  void conj_intro(std::int32_t f, std::int32_t rule) {
    const Record r = fb_.records_[f];
    for (const Split& sp : splits_[r.to]) {
      if (sp.u_index < 0 || !has(r.from, sp.u_index) ||
          has(r.from, sp.whole)) {
        continue;
      }
      add({r.from, sp.whole, rule, f, id_of(r.from, sp.u_index)});
      if (done_) return;
    }
  }

  void transitive(std::int32_t f, std::int32_t rule) {
    const Record r = fb_.records_[f];
    if (r.from == r.to) return;
    // s ⟹ t with every t ⟹ u.
    std::vector<std::uint64_t> row(succ_.begin() + r.to * words_,
                                   succ_.begin() + (r.to + 1) * words_);
    for (std::size_t w = 0; w < words_ && !done_; ++w) {
      std::uint64_t bits = row[w] & ~succ_[r.from * words_ + w];
      while (bits && !done_) {
        const std::size_t u = w * 64 + static_cast<std::size_t>(__builtin_ctzll(bits));
        bits &= bits - 1;
        if (has(r.from, u)) continue;
        add({r.from, static_cast<std::int32_t>(u), rule, f,
             id_of(r.to, u)});
      }
    }
    // every q ⟹ s with s ⟹ t.
    std::vector<std::uint64_t> col(pred_.begin() + r.from * words_,
                                   pred_.begin() + (r.from + 1) * words_);
    for (std::size_t w = 0; w < words_ && !done_; ++w) {
      std::uint64_t bits = col[w];
      while (bits && !done_) {
        const std::size_t q = w * 64 + static_cast<std::size_t>(__builtin_ctzll(bits));
        bits &= bits - 1;
        if (has(q, r.to)) continue;
        add({static_cast<std::int32_t>(q), r.to, rule, id_of(q, r.from), f});
      }
    }
  }

  SaturateOptions opts_;
  FactBase fb_;
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> succ_;
  std::vector<std::uint64_t> pred_;
  std::vector<std::int32_t> sigma_of_;
  std::vector<std::int32_t> pi_of_;
  std::vector<std::vector<Split>> splits_;
  std::vector<std::pair<std::string, std::int32_t>> inference_;
  std::size_t next_ = 0;
  bool done_ = false;
  std::ptrdiff_t stop_from_ = -1;
  std::ptrdiff_t stop_to_ = -1;
};

FactBase saturate(const Universe& universe, const SaturateOptions& options) {
  return Saturator(universe, options).run();
}

std::vector<Fact> apply_rule(std::string_view rule_id,
                             const std::vector<Fact>& facts,
                             const Universe& universe) {
  const Rule* rule = find_rule(rule_id);
  if (!rule) throw std::invalid_argument("unknown rule");
  std::vector<Fact> out;
  auto emit = [&](const std::optional<Instance>& inst) {
    if (!inst) return;
    const Fact& f = inst->conclusion;
    if (!universe.contains(f.from) || !universe.contains(f.to)) return;
    for (const Fact& premise : inst->premises) {
      if (std::find(facts.begin(), facts.end(), premise) == facts.end()) return;
    }
    if (std::find(facts.begin(), facts.end(), f) != facts.end()) return;
    if (std::find(out.begin(), out.end(), f) != out.end()) return;
    out.push_back(f);
  };
  if (rule->kind == RuleKind::kAxiom) {
    std::vector<Substitution> subs;
    for (const Pattern& p : universe.patterns()) {
      subs.clear();
      rule->match(p, universe, subs);
      for (const Substitution& s : subs) emit(rule->build(s));
    }
    return out;
  }
  // Inference rules: premises are drawn from `facts`, the remaining
  // pattern variable from the universe.
  for (const Fact& f : facts) {
    if (rule->id == "M1" || rule->id == "M2") {
      emit(rule->build({{"s", f.from}, {"t", f.to}}));
    } else if (rule->id == "M3") {
      for (const Pattern& u : universe.patterns()) {
        emit(rule->build({{"s", f.from}, {"t", f.to}, {"u", u}}));
      }
    } else {
      for (const Fact& g : facts) {
        if (rule->id == "W3" && g.from == f.from) {
          emit(rule->build({{"s", f.from}, {"t", f.to}, {"u", g.to}}));
        } else if (rule->id == "T" && g.from == f.to) {
          emit(rule->build({{"s", f.from}, {"t", f.to}, {"u", g.to}}));
        }
      }
    }
  }
  return out;
}

namespace {

void add_subterms(const Pattern& p, std::vector<Pattern>& out) {
  for (const Pattern& q : subterms(p)) out.push_back(q);
}

ProofResult run_proof(const Fact& goal, const Universe& universe,
                      std::size_t budget) {
  SaturateOptions opts;
  opts.budget = budget;
  opts.stop_at = goal;
  FactBase fb = saturate(universe, opts);
  ProofResult out;
  out.derivation = fb.derivation(goal);
  out.budget_exceeded = fb.budget_exceeded();
  out.facts = fb.size();
  out.universe_size = universe.size();
  return out;
}

}  // namespace

ProofResult prove(const Fact& goal, std::size_t size_bound,
                  std::size_t budget) {
  Fact g{canonicalize(goal.from), canonicalize(goal.to)};
  std::vector<Pattern> pool = enumerate_patterns(size_bound);
  add_subterms(g.from, pool);
  add_subterms(g.to, pool);
  return run_proof(g, Universe(std::move(pool)), budget);
}

Universe focused_universe(const Fact& goal, std::size_t size_bound) {
  std::vector<Pattern> pool = enumerate_patterns(std::min<std::size_t>(size_bound, 3));
  std::vector<Pattern> seeds;
  add_subterms(goal.from, seeds);
  add_subterms(goal.to, seeds);
  std::vector<Pattern> closed = seeds;
  for (const Pattern& s : seeds) {
    for_each_subconjunction(s, [&](const Pattern& kept, const Pattern&, bool) {
      closed.push_back(kept);
    });
  }
  pool.insert(pool.end(), closed.begin(), closed.end());

  // One-step axiom images, judged against a universe that admits the size
  // bound (so exponent enumeration in the matchers reaches it).
  std::vector<Pattern> ceiling = pool;
  ceiling.push_back(sigma_pow(size_bound));
  const Universe probe(std::move(ceiling));
  std::vector<Pattern> images;
  std::vector<Substitution> subs;
  for (const Rule& rule : rule_catalog()) {
    if (rule.kind != RuleKind::kAxiom) continue;
    for (const Pattern& s : closed) {
      subs.clear();
      rule.match(s, probe, subs);
      for (const Substitution& sub : subs) {
        std::optional<Instance> inst = rule.build(sub);
        if (inst && inst->conclusion.to.size() <= size_bound) {
          images.push_back(inst->conclusion.to);
        }
      }
    }
  }
  for (const Pattern& im : images) add_subterms(im, pool);
  return Universe(std::move(pool));
}

ProofResult prove_focused(const Fact& goal, std::size_t size_bound,
                          std::size_t budget) {
  Fact g{canonicalize(goal.from), canonicalize(goal.to)};
  return run_proof(g, focused_universe(g, size_bound), budget);
}

}  // namespace reflect
