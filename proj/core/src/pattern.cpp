#include "reflect/pattern.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <unordered_set>
#include <utility>

namespace reflect {

namespace {

std::size_t mix(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Pattern Pattern::make(Kind kind, std::vector<Pattern> children) {
  std::size_t size = 0;
  std::size_t hash = static_cast<std::size_t>(kind) * 0x100000001b3ULL;
  for (const Pattern& c : children) {
    size += c.size();
    hash = mix(hash, c.hash());
  }
  if (kind == Kind::kConj) {
    size += children.size() - 1;
  } else {
    size += 1;
  }
  return Pattern(std::make_shared<const Node>(
      Node{kind, std::move(children), size, hash}));
}

Pattern Pattern::make_sigma(Pattern arg) {
  std::vector<Pattern> c;
  c.push_back(std::move(arg));
  return make(Kind::kSigma, std::move(c));
}

Pattern Pattern::make_pi(Pattern arg) {
  std::vector<Pattern> c;
  c.push_back(std::move(arg));
  return make(Kind::kPi, std::move(c));
}

Pattern Pattern::make_conj(std::vector<Pattern> children) {
  if (children.empty()) return Pattern();
  if (children.size() == 1) return std::move(children.front());
  return make(Kind::kConj, std::move(children));
}

std::span<const Pattern> Pattern::children() const noexcept {
  if (!is_conj()) return {};
  return {node_->children.data(), node_->children.size()};
}

bool operator==(const Pattern& a, const Pattern& b) noexcept {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.size() != b.size() || a.kind() != b.kind()) {
    return false;
  }
  return a.node_->children == b.node_->children;
}

std::strong_ordering operator<=>(const Pattern& a, const Pattern& b) noexcept {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  if (a.is_empty()) return std::strong_ordering::equal;
  const auto& ca = a.node_->children;
  const auto& cb = b.node_->children;
  return std::lexicographical_compare_three_way(ca.begin(), ca.end(),
                                                cb.begin(), cb.end());
}

SyntaxError::SyntaxError(const std::string& message, std::size_t offset)
    : std::runtime_error("syntax error at byte " + std::to_string(offset) +
                         ": " + message),
      offset_(offset) {}

Pattern sigma(Pattern arg) { return Pattern::make_sigma(std::move(arg)); }
Pattern pi(Pattern arg) { return Pattern::make_pi(std::move(arg)); }

Pattern conjoin(std::vector<Pattern> parts) {
  std::vector<Pattern> flat;
  flat.reserve(parts.size());
  for (Pattern& p : parts) {
    if (p.is_conj()) {
      for (const Pattern& c : p.children()) flat.push_back(c);
    } else if (!p.is_empty()) {
      flat.push_back(std::move(p));
    }
  }
  std::sort(flat.begin(), flat.end());
  flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
  return Pattern::make_conj(std::move(flat));
}

Pattern conjoin(const Pattern& a, const Pattern& b) { return conjoin({a, b}); }

Pattern sigma_pow(std::size_t n, Pattern tail) {
  for (std::size_t i = 0; i < n; ++i) tail = sigma(std::move(tail));
  return tail;
}

Pattern pi_pow(std::size_t n, Pattern tail) {
  for (std::size_t i = 0; i < n; ++i) tail = pi(std::move(tail));
  return tail;
}

Pattern canonicalize(const Pattern& p) {
  switch (p.kind()) {
    case Pattern::Kind::kEmpty:
      return p;
    case Pattern::Kind::kSigma:
      return sigma(canonicalize(p.arg()));
    case Pattern::Kind::kPi:
      return pi(canonicalize(p.arg()));
    case Pattern::Kind::kConj: {
      std::vector<Pattern> parts;
      for (const Pattern& c : p.children()) parts.push_back(canonicalize(c));
      return conjoin(std::move(parts));
    }
  }
  return p;
}

bool is_canonical(const Pattern& p) { return canonicalize(p) == p; }

Pattern concat(const Pattern& t, const Pattern& s) {
  switch (t.kind()) {
    case Pattern::Kind::kEmpty:
      return s;
    case Pattern::Kind::kSigma:
      return sigma(concat(t.arg(), s));
    case Pattern::Kind::kPi:
      return pi(concat(t.arg(), s));
    case Pattern::Kind::kConj: {
      auto kids = t.children();
      std::vector<Pattern> parts(kids.begin(), kids.end() - 1);
      parts.push_back(concat(kids.back(), s));
      return conjoin(std::move(parts));
    }
  }
  return t;
}

namespace {

enum class Token { kSigma, kPi, kEmpty, kAnd, kOpen, kClose, kEnd };

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) { advance(); }

  Pattern parse_all() {
    Pattern p = parse_conj();
    if (token_ != Token::kEnd) {
      throw SyntaxError(token_ == Token::kClose ? "unbalanced ')'"
                                                : "unexpected token",
                        token_offset_);
    }
    return p;
  }

 private:
  Pattern parse_conj() {
    Pattern left = parse_seq();
    if (token_ == Token::kAnd) {
      advance();
      Pattern right = parse_conj();
      return conjoin(left, right);
    }
    return left;
  }

  Pattern parse_seq() {
    std::vector<Pattern> prims;
    for (;;) {
      switch (token_) {
        case Token::kSigma:
          prims.push_back(sigma());
          advance();
          break;
        case Token::kPi:
          prims.push_back(pi());
          advance();
          break;
        case Token::kEmpty:
          prims.emplace_back();
          advance();
          break;
        case Token::kOpen: {
          std::size_t open_at = token_offset_;
          advance();
          Pattern inner = parse_conj();
          if (token_ != Token::kClose) {
            throw SyntaxError("unbalanced '(' opened at byte " +
                                  std::to_string(open_at),
                              token_offset_);
          }
          advance();
          prims.push_back(std::move(inner));
          break;
        }
        default: {
          Pattern result;
          for (auto it = prims.rbegin(); it != prims.rend(); ++it) {
            result = concat(*it, result);
          }
          return result;
        }
      }
    }
  }

  void advance() {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n')) {
      ++pos_;
    }
    token_offset_ = pos_;
    if (pos_ >= text_.size()) {
      token_ = Token::kEnd;
      return;
    }
    auto starts_with = [&](std::string_view lit) {
      return text_.substr(pos_, lit.size()) == lit;
    };
    switch (text_[pos_]) {
      case 's':
        token_ = Token::kSigma;
        ++pos_;
        return;
      case 'p':
        token_ = Token::kPi;
        ++pos_;
        return;
      case 'e':
        token_ = Token::kEmpty;
        ++pos_;
        return;
      case '&':
        token_ = Token::kAnd;
        ++pos_;
        return;
      case '(':
        token_ = Token::kOpen;
        ++pos_;
        return;
      case ')':
        token_ = Token::kClose;
        ++pos_;
        return;
      default:
        break;
    }
    if (starts_with("\xCF\x83")) {  // σ
      token_ = Token::kSigma;
      pos_ += 2;
    } else if (starts_with("\xCF\x80")) {  // π
      token_ = Token::kPi;
      pos_ += 2;
    } else if (starts_with("\xE2\x88\xA7")) {  // ∧
      token_ = Token::kAnd;
      pos_ += 3;
    } else if (starts_with("\xE2\x88\x85")) {  // ∅
      token_ = Token::kEmpty;
      pos_ += 3;
    } else {
      throw SyntaxError("unexpected character", pos_);
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t token_offset_ = 0;
  Token token_ = Token::kEnd;
};

struct Glyphs {
  std::string_view sigma, pi, conj;
};

void render_word(const Pattern& p, const Glyphs& g, std::string& out) {
  switch (p.kind()) {
    case Pattern::Kind::kEmpty:
      return;
    case Pattern::Kind::kSigma:
    case Pattern::Kind::kPi: {
      out += p.is_sigma() ? g.sigma : g.pi;
      const Pattern& a = p.arg();
      if (a.is_conj()) {
        out += '(';
        render_word(a, g, out);
        out += ')';
      } else {
        render_word(a, g, out);
      }
      return;
    }
    case Pattern::Kind::kConj: {
      bool first = true;
      for (const Pattern& c : p.children()) {
        if (!first) out += g.conj;
        first = false;
        render_word(c, g, out);
      }
      return;
    }
  }
}

void render_full(const Pattern& p, std::string& out) {
  switch (p.kind()) {
    case Pattern::Kind::kEmpty:
      out += "\xE2\x88\x85";  // ∅
      return;
    case Pattern::Kind::kSigma:
    case Pattern::Kind::kPi:
      out += p.is_sigma() ? "\xCF\x83\xC2\xB9\xE2\x82\x81"   // σ¹₁
                          : "\xCF\x80\xC2\xB9\xE2\x82\x81";  // π¹₁
      if (!p.arg().is_empty()) {
        out += '(';
        render_full(p.arg(), out);
        out += ')';
      }
      return;
    case Pattern::Kind::kConj: {
      bool first = true;
      for (const Pattern& c : p.children()) {
        if (!first) out += "\xE2\x88\xA7";
        first = false;
        render_full(c, out);
      }
      return;
    }
  }
}

std::pair<std::size_t, std::size_t> sigma_runs(const Pattern& p) {
  // (run starting at the root, longest run anywhere)
  switch (p.kind()) {
    case Pattern::Kind::kEmpty:
      return {0, 0};
    case Pattern::Kind::kSigma: {
      auto [left, best] = sigma_runs(p.arg());
      return {left + 1, std::max(best, left + 1)};
    }
    case Pattern::Kind::kPi:
      return {0, sigma_runs(p.arg()).second};
    case Pattern::Kind::kConj: {
      std::size_t left = 0, best = 0;
      for (const Pattern& c : p.children()) {
        auto [l, b] = sigma_runs(c);
        left = std::max(left, l);
        best = std::max(best, b);
      }
      return {left, best};
    }
  }
  return {0, 0};
}

}  // namespace

Pattern parse(std::string_view text) { return Parser(text).parse_all(); }

std::string render(const Pattern& p, RenderStyle style) {
  std::string out;
  switch (style) {
    case RenderStyle::kAscii:
      render_word(p, Glyphs{"s", "p", "&"}, out);
      break;
    case RenderStyle::kUnicode:
      render_word(p, Glyphs{"\xCF\x83", "\xCF\x80", "\xE2\x88\xA7"}, out);
      break;
    case RenderStyle::kFullForm:
      render_full(p, out);
      break;
  }
  return out;
}

bool is_linear(const Pattern& p) {
  switch (p.kind()) {
    case Pattern::Kind::kEmpty:
      return true;
    case Pattern::Kind::kSigma:
    case Pattern::Kind::kPi:
      return is_linear(p.arg());
    case Pattern::Kind::kConj:
      return false;
  }
  return true;
}

std::size_t max_sigma_run(const Pattern& p) { return sigma_runs(p).second; }

bool contains_sigma_sigma(const Pattern& p) { return max_sigma_run(p) >= 2; }

std::vector<Pattern> subterms(const Pattern& p) {
  std::unordered_set<Pattern, PatternHash> seen;
  std::vector<Pattern> out;
  std::function<void(const Pattern&)> visit = [&](const Pattern& q) {
    if (!seen.insert(q).second) return;
    out.push_back(q);
    if (q.is_sigma() || q.is_pi()) visit(q.arg());
    for (const Pattern& c : q.children()) visit(c);
  };
  visit(p);
  if (seen.insert(Pattern()).second) out.emplace_back();
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Pattern> enumerate_patterns(std::size_t max_size, bool linear_only) {
  // by_size[n]: all canonical patterns of size n; atoms[n]: the
  // non-conjunction ones.
  std::vector<std::vector<Pattern>> by_size(max_size + 1);
  std::vector<std::vector<Pattern>> atoms(max_size + 1);
  std::vector<Pattern> atom_pool;  // non-empty atoms in structural order

  for (std::size_t n = 0; n <= max_size; ++n) {
    if (n == 0) {
      atoms[0].emplace_back();
    } else {
      for (const Pattern& x : by_size[n - 1]) atoms[n].push_back(sigma(x));
      for (const Pattern& x : by_size[n - 1]) atoms[n].push_back(pi(x));
    }
    by_size[n] = atoms[n];
    if (!linear_only && n >= 3) {
      // Sets of >= 2 distinct atoms, strictly increasing in the structural
      // order, whose sizes plus separators add to n.
      std::vector<Pattern> chosen;
      std::function<void(std::size_t, std::size_t)> pick =
          [&](std::size_t start, std::size_t used) {
            if (chosen.size() >= 2 && used == n) {
              by_size[n].push_back(Pattern::make_conj(chosen));
            }
            for (std::size_t i = start; i < atom_pool.size(); ++i) {
              std::size_t cost =
                  atom_pool[i].size() + (chosen.empty() ? 0 : 1);
              if (used + cost > n) break;  // pool is sorted by size
              chosen.push_back(atom_pool[i]);
              pick(i + 1, used + cost);
              chosen.pop_back();
            }
          };
      pick(0, 0);
    }
    std::sort(by_size[n].begin(), by_size[n].end());
    if (n >= 1) {
      for (const Pattern& a : atoms[n]) atom_pool.push_back(a);
      std::sort(atom_pool.begin(), atom_pool.end());
    }
  }

  std::vector<Pattern> out;
  for (auto& bucket : by_size) {
    for (auto& p : bucket) out.push_back(std::move(p));
  }
  return out;
}

Pattern expand_combinator(std::size_t k, std::size_t n, const Pattern& s) {
  Pattern x = s;
  for (std::size_t i = 0; i < n; ++i) {
    if (k == 0) {
      x = sigma(pi(std::move(x)));
    } else {
      x = conjoin(sigma(), pi_pow(k, sigma(pi(std::move(x)))));
    }
  }
  return x;
}

}  // namespace reflect
