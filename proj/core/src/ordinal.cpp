#include "reflect/ordinal.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <stdexcept>

namespace reflect {

namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r)) {
    throw std::overflow_error("ordinal coefficient overflow");
  }
  return r;
}

std::string superscript(std::uint64_t n) {
  static const char* const kDigits[] = {
      "\xE2\x81\xB0", "\xC2\xB9",     "\xC2\xB2",     "\xC2\xB3",
      "\xE2\x81\xB4", "\xE2\x81\xB5", "\xE2\x81\xB6", "\xE2\x81\xB7",
      "\xE2\x81\xB8", "\xE2\x81\xB9"};
  std::string digits = std::to_string(n);
  std::string out;
  for (char d : digits) out += kDigits[d - '0'];
  return out;
}

}  // namespace

Ordinal::Ordinal(std::vector<OrdinalTerm> terms) : terms_(std::move(terms)) {
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].coeff == 0) {
      throw std::invalid_argument("ordinal term with zero coefficient");
    }
    if (i > 0 && terms_[i - 1].degree <= terms_[i].degree) {
      throw std::invalid_argument("ordinal degrees must strictly decrease");
    }
  }
}

Ordinal Ordinal::natural(std::uint64_t n) { return scale(0, n); }

Ordinal Ordinal::omega_pow(std::uint64_t n) { return scale(n, 1); }

Ordinal Ordinal::scale(std::uint64_t degree, std::uint64_t coeff) {
  Ordinal o;
  if (coeff > 0) o.terms_.push_back({degree, coeff});
  return o;
}

std::uint64_t Ordinal::coefficient(std::uint64_t degree) const noexcept {
  for (const OrdinalTerm& t : terms_) {
    if (t.degree == degree) return t.coeff;
    if (t.degree < degree) break;
  }
  return 0;
}

Ordinal Ordinal::drop_up_to(std::uint64_t max_degree) const {
  Ordinal o;
  for (const OrdinalTerm& t : terms_) {
    if (t.degree > max_degree) o.terms_.push_back(t);
  }
  return o;
}

Ordinal operator+(const Ordinal& a, const Ordinal& b) {
  if (b.is_zero()) return a;
  const std::uint64_t lead = b.leading_degree();
  Ordinal out;
  for (const OrdinalTerm& t : a.terms_) {
    if (t.degree < lead) break;
    out.terms_.push_back(t);
  }
  auto it = b.terms_.begin();
  if (!out.terms_.empty() && out.terms_.back().degree == lead) {
    out.terms_.back().coeff = checked_add(out.terms_.back().coeff, it->coeff);
    ++it;
  }
  out.terms_.insert(out.terms_.end(), it, b.terms_.end());
  return out;
}

std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) noexcept {
  const std::size_t n = std::min(a.terms_.size(), b.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    const OrdinalTerm& x = a.terms_[i];
    const OrdinalTerm& y = b.terms_[i];
    if (x.degree != y.degree) return x.degree <=> y.degree;
    if (x.coeff != y.coeff) return x.coeff <=> y.coeff;
  }
  return a.terms_.size() <=> b.terms_.size();
}

std::string Ordinal::to_string(OrdinalStyle style) const {
  if (terms_.empty()) return "0";
  const bool ascii = style == OrdinalStyle::kAscii;
  const std::string omega = ascii ? "w" : "\xCF\x89";
  std::string out;
  for (const OrdinalTerm& t : terms_) {
    if (!out.empty()) out += " + ";
    if (t.degree == 0) {
      out += std::to_string(t.coeff);
      continue;
    }
    out += omega;
    if (t.degree > 1) {
      out += ascii ? "^" + std::to_string(t.degree) : superscript(t.degree);
    }
    if (t.coeff > 1) {
      out += ascii ? "*" : "\xC2\xB7";
      out += std::to_string(t.coeff);
    }
  }
  return out;
}

Ordinal Ordinal::parse(std::string_view text) {
  std::size_t pos = 0;
  auto fail = [&](const char* what) {
    throw std::invalid_argument("cannot read ordinal at offset " +
                                std::to_string(pos) + ": " + what);
  };
  auto skip_ws = [&] {
    while (pos < text.size() && text[pos] == ' ') ++pos;
  };
  auto number = [&]() -> std::uint64_t {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data() + pos,
                                     text.data() + text.size(), v);
    if (ec != std::errc()) fail("expected a number");
    pos = static_cast<std::size_t>(ptr - text.data());
    return v;
  };

  skip_ws();
  if (text.substr(pos) == "0") return Ordinal();
  std::vector<OrdinalTerm> terms;
  for (;;) {
    skip_ws();
    OrdinalTerm term;
    if (pos < text.size() && text[pos] == 'w') {
      ++pos;
      term.degree = 1;
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        term.degree = number();
      }
      if (pos < text.size() && text[pos] == '*') {
        ++pos;
        term.coeff = number();
      }
    } else {
      term.degree = 0;
      term.coeff = number();
    }
    terms.push_back(term);
    skip_ws();
    if (pos == text.size()) break;
    if (text[pos] != '+') fail("expected '+'");
    ++pos;
  }
  return Ordinal(std::move(terms));
}

}  // namespace reflect
