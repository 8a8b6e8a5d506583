#pragma once

// Ordinals below ω^ω in Cantor normal form.

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace reflect {

struct OrdinalTerm {
  std::uint64_t degree = 0;
  std::uint64_t coeff = 1;
  friend bool operator==(const OrdinalTerm&, const OrdinalTerm&) = default;
};

enum class OrdinalStyle { kAscii, kUnicode };

class Ordinal {
 public:
  Ordinal() = default;  // zero

  // Terms must have strictly decreasing degrees and positive coefficients;
  // throws std::invalid_argument otherwise.
  explicit Ordinal(std::vector<OrdinalTerm> terms);

  static Ordinal natural(std::uint64_t n);
  static Ordinal omega_pow(std::uint64_t n);
  // ω^degree · coeff, or zero when coeff == 0.
  static Ordinal scale(std::uint64_t degree, std::uint64_t coeff);

  const std::vector<OrdinalTerm>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  // Coefficient of ω^degree (0 when absent).
  std::uint64_t coefficient(std::uint64_t degree) const noexcept;
  std::uint64_t finite_part() const noexcept { return coefficient(0); }
  // Degree of the leading term. Precondition: !is_zero().
  std::uint64_t leading_degree() const { return terms_.front().degree; }
  // Drops every term of degree <= max_degree.
  Ordinal drop_up_to(std::uint64_t max_degree) const;

  // Ordinal (non-commutative) sum with absorption of lower terms of *this.
  // Coefficient overflow throws std::overflow_error.
  friend Ordinal operator+(const Ordinal& a, const Ordinal& b);
  Ordinal& operator+=(const Ordinal& b) { return *this = *this + b; }

  friend bool operator==(const Ordinal&, const Ordinal&) = default;
  friend std::strong_ordering operator<=>(const Ordinal& a,
                                          const Ordinal& b) noexcept;

  std::string to_string(OrdinalStyle style = OrdinalStyle::kAscii) const;
  // Reads the ascii rendering back, e.g. "w^3*2 + w + 4".
  static Ordinal parse(std::string_view text);

 private:
  std::vector<OrdinalTerm> terms_;
};

}  // namespace reflect
