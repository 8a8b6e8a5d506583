#pragma once

// Reflection patterns: the term algebra built from the empty pattern by
// sigma-application, pi-application and conjunction, together with the
// compact word syntax used on the command line and in JSON documents.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace reflect {

class Pattern {
 public:
  enum class Kind : std::uint8_t { kEmpty, kSigma, kPi, kConj };

  Pattern() = default;  // the empty pattern

  // Raw constructors. They do not canonicalize; use the free functions
  // below (sigma, pi, conjoin, canonicalize) to build canonical terms.
  static Pattern make_sigma(Pattern arg);
  static Pattern make_pi(Pattern arg);
  static Pattern make_conj(std::vector<Pattern> children);

  Kind kind() const noexcept { return node_ ? node_->kind : Kind::kEmpty; }
  bool is_empty() const noexcept { return node_ == nullptr; }
  bool is_sigma() const noexcept { return kind() == Kind::kSigma; }
  bool is_pi() const noexcept { return kind() == Kind::kPi; }
  bool is_conj() const noexcept { return kind() == Kind::kConj; }

  // Argument of a sigma/pi node. Precondition: is_sigma() || is_pi().
  const Pattern& arg() const { return node_->children.front(); }
  // Conjuncts of a conjunction node; empty span for every other kind.
  std::span<const Pattern> children() const noexcept;

  // Number of sigma, pi and conjunction symbols. An n-ary conjunction
  // contributes n-1 symbols, matching the number of '&' in its word.
  std::size_t size() const noexcept { return node_ ? node_->size : 0; }
  std::size_t hash() const noexcept { return node_ ? node_->hash : 0x51ed27; }

  friend bool operator==(const Pattern& a, const Pattern& b) noexcept;
  // Fixed total structural order: size first, then kind
  // (empty < sigma < pi < conj), then children lexicographically.
  friend std::strong_ordering operator<=>(const Pattern& a,
                                          const Pattern& b) noexcept;

 private:
  struct Node {
    Kind kind;
    std::vector<Pattern> children;
    std::size_t size;
    std::size_t hash;
  };
  explicit Pattern(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Pattern make(Kind kind, std::vector<Pattern> children);

  std::shared_ptr<const Node> node_;
};

struct PatternHash {
  std::size_t operator()(const Pattern& p) const noexcept { return p.hash(); }
};

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(const std::string& message, std::size_t offset);
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

enum class RenderStyle { kAscii, kUnicode, kFullForm };

// Canonical constructors. Arguments are assumed canonical.
Pattern sigma(Pattern arg = {});
Pattern pi(Pattern arg = {});
Pattern conjoin(std::vector<Pattern> parts);
Pattern conjoin(const Pattern& a, const Pattern& b);
Pattern sigma_pow(std::size_t n, Pattern tail = {});
Pattern pi_pow(std::size_t n, Pattern tail = {});

// Flattens nested conjunctions, drops empty conjuncts (the empty pattern
// is the unit of conjunction), removes duplicates and sorts conjuncts.
Pattern canonicalize(const Pattern& p);
bool is_canonical(const Pattern& p);

// Substitutes s at the trailing empty leaf of t. For a conjunction the
// last conjunct in canonical order is extended.
Pattern concat(const Pattern& t, const Pattern& s);

// Grammar: conj := seq ('&' conj)? ; seq := prim* ;
//          prim := 's' | 'p' | 'e' | '(' conj ')'
// with unicode aliases σ, π, ∧. Whitespace is ignored. Each prim of a seq
// is concatenated with everything to its right.
Pattern parse(std::string_view text);
std::string render(const Pattern& p, RenderStyle style = RenderStyle::kAscii);

bool is_linear(const Pattern& p);
bool contains_sigma_sigma(const Pattern& p);
// Longest run of directly nested sigma symbols, reading a conjunction
// argument through each of its conjuncts.
std::size_t max_sigma_run(const Pattern& p);
// All distinct subterms, including p itself and the empty pattern.
std::vector<Pattern> subterms(const Pattern& p);

// Every canonical pattern of size <= max_size exactly once, ordered by the
// structural order (hence by size first).
std::vector<Pattern> enumerate_patterns(std::size_t max_size,
                                        bool linear_only = false);

// c^k_0 s = s;  c^k_{n+1} s = σ ∧ π^k σ π c^k_n s  for k >= 1;
// c^0_{n+1} s = σ π c^0_n s.
Pattern expand_combinator(std::size_t k, std::size_t n, const Pattern& s = {});

}  // namespace reflect

template <>
struct std::hash<reflect::Pattern> {
  std::size_t operator()(const reflect::Pattern& p) const noexcept {
    return p.hash();
  }
};
