#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace framemult {

/// Exact rational number with 64-bit numerator and denominator.
/// Always normalized: gcd(num, den) == 1 and den > 0.
/// Arithmetic that would leave the 64-bit range throws OverflowError.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }

  bool is_zero() const noexcept { return num_ == 0; }
  bool is_integer() const noexcept { return den_ == 1; }
  bool is_negative() const noexcept { return num_ < 0; }
  double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

  Rational operator-() const;
  Rational reciprocal() const;
  Rational abs() const { return num_ < 0 ? -*this : *this; }

  /// Integer power; negative exponents invert.
  Rational pow(std::int64_t exponent) const;

  /// Exact square root when both numerator and denominator are perfect squares.
  std::optional<Rational> sqrt_exact() const;

  /// "3", "-1/2".
  std::string to_string() const;

  /// Accepts "3", "-3", "1/2", "-7/4".
  static Rational parse(std::string_view text);

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b) { return a * b.reciprocal(); }
  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend bool operator<(const Rational& a, const Rational& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace framemult
