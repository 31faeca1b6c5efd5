#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace themetruss {

/// Raised when a rational operation overflows 128-bit storage or a string
/// does not parse.
class RationalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact fraction over signed 128-bit integers, always gcd-reduced with a
/// positive denominator. Frequencies, cohesions and thresholds all live here
/// so that the strict truss inequality never depends on rounding.
class Rational {
 public:
  using Int = __int128;

  constexpr Rational() = default;
  constexpr Rational(std::int64_t value) : num_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(Int numerator, Int denominator);

  /// Parses `a/b`, a plain integer, or a decimal `x.yyy` (exactly, as
  /// x.yyy = xyyy / 10^k). Binary floating point is never involved.
  static Rational parse(std::string_view text);

  [[nodiscard]] Int numerator() const { return num_; }
  [[nodiscard]] Int denominator() const { return den_; }
  [[nodiscard]] bool is_zero() const { return num_ == 0; }
  [[nodiscard]] bool is_integer() const { return den_ == 1; }

  /// Terminating decimal when the denominator is 2^a 5^b, otherwise `a/b`.
  /// The output always parses back to the identical value.
  [[nodiscard]] std::string to_string() const;

  /// Lossy, for display and statistics only.
  [[nodiscard]] double to_double() const;

  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
  Rational operator-() const;

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  struct Raw {};
  constexpr Rational(Int n, Int d, Raw) : num_(n), den_(d) {}

  Int num_ = 0;
  Int den_ = 1;
};

std::string int128_to_string(Rational::Int value);

struct RationalHash {
  std::size_t operator()(const Rational& r) const noexcept;
};

}  // namespace themetruss
