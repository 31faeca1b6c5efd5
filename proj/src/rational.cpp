#include "themetruss/rational.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <numeric>

namespace themetruss {
namespace {

using Int = Rational::Int;
using UInt = unsigned __int128;

constexpr UInt kU64Max = static_cast<UInt>(~std::uint64_t{0});

UInt abs_u(Int v) { return v < 0 ? UInt(0) - static_cast<UInt>(v) : static_cast<UInt>(v); }

UInt gcd_u(UInt a, UInt b) {
  if (a <= kU64Max && b <= kU64Max) {
    return std::gcd(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
  }
  if (a == 0) return b;
  if (b == 0) return a;
  // binary gcd on 128 bits
  int shift = 0;
  while (((a | b) & 1) == 0) {
    a >>= 1;
    b >>= 1;
    ++shift;
  }
  while ((a & 1) == 0) a >>= 1;
  do {
    while ((b & 1) == 0) b >>= 1;
    if (a > b) std::swap(a, b);
    b -= a;
  } while (b != 0);
  return a << shift;
}

Int mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw RationalError("rational overflow in multiplication");
  return r;
}

Int add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw RationalError("rational overflow in addition");
  return r;
}

Int sub(Int a, Int b) {
  Int r;
  if (__builtin_sub_overflow(a, b, &r)) throw RationalError("rational overflow in subtraction");
  return r;
}

Int pow10(int k) {
  Int r = 1;
  for (int i = 0; i < k; ++i) r = mul(r, 10);
  return r;
}

Int parse_digits(std::string_view digits) {
  if (digits.empty()) throw RationalError("expected digits");
  Int value = 0;
  for (char c : digits) {
    if (c < '0' || c > '9') throw RationalError("invalid character in number");
    value = add(mul(value, 10), c - '0');
  }
  return value;
}

}  // namespace

std::string int128_to_string(Int value) {
  if (value == 0) return "0";
  const bool negative = value < 0;
  UInt mag = abs_u(value);
  std::string out;
  while (mag != 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(mag % 10)));
    mag /= 10;
  }
  if (negative) out.push_back('-');
  std::reverse(out.begin(), out.end());
  return out;
}

Rational::Rational(Int numerator, Int denominator) {
  if (denominator == 0) throw RationalError("zero denominator");
  if (denominator < 0) {
    numerator = sub(0, numerator);
    denominator = sub(0, denominator);
  }
  const UInt g = gcd_u(abs_u(numerator), static_cast<UInt>(denominator));
  num_ = g > 1 ? numerator / static_cast<Int>(g) : numerator;
  den_ = g > 1 ? denominator / static_cast<Int>(g) : denominator;
}

Rational Rational::parse(std::string_view text) {
  if (text.empty()) throw RationalError("empty rational literal");
  bool negative = false;
  std::string_view body = text;
  if (body.front() == '-' || body.front() == '+') {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  Rational result;
  if (const auto slash = body.find('/'); slash != std::string_view::npos) {
    const Int n = parse_digits(body.substr(0, slash));
    const Int d = parse_digits(body.substr(slash + 1));
    if (d == 0) throw RationalError("zero denominator in '" + std::string(text) + "'");
    result = Rational(n, d);
  } else if (const auto dot = body.find('.'); dot != std::string_view::npos) {
    const std::string_view whole = body.substr(0, dot);
    const std::string_view frac = body.substr(dot + 1);
    if (whole.empty() && frac.empty()) throw RationalError("invalid decimal '" + std::string(text) + "'");
    const Int w = whole.empty() ? 0 : parse_digits(whole);
    const Int f = frac.empty() ? 0 : parse_digits(frac);
    const Int scale = pow10(static_cast<int>(frac.size()));
    result = Rational(add(mul(w, scale), f), scale);
  } else {
    result = Rational(parse_digits(body), 1);
  }
  return negative ? -result : result;
}

std::string Rational::to_string() const {
  if (den_ == 1) return int128_to_string(num_);
  Int d = den_;
  int twos = 0;
  int fives = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++twos;
  }
  while (d % 5 == 0) {
    d /= 5;
    ++fives;
  }
  if (d != 1) return int128_to_string(num_) + "/" + int128_to_string(den_);

  const int digits = std::max(twos, fives);
  Int scaled;
  if (digits > 38 || __builtin_mul_overflow(num_, pow10(digits) / den_, &scaled)) {
    return int128_to_string(num_) + "/" + int128_to_string(den_);
  }
  const bool negative = scaled < 0;
  std::string mag = int128_to_string(negative ? -scaled : scaled);
  if (mag.size() <= static_cast<std::size_t>(digits)) {
    mag.insert(0, static_cast<std::size_t>(digits) + 1 - mag.size(), '0');
  }
  mag.insert(mag.size() - static_cast<std::size_t>(digits), ".");
  return negative ? "-" + mag : mag;
}

double Rational::to_double() const {
  return static_cast<double>(num_) / static_cast<double>(den_);
}

Rational& Rational::operator+=(const Rational& rhs) {
  if (den_ == rhs.den_) {
    *this = Rational(add(num_, rhs.num_), den_);
    return *this;
  }
  const Int g = static_cast<Int>(gcd_u(static_cast<UInt>(den_), static_cast<UInt>(rhs.den_)));
  const Int n = add(mul(num_, rhs.den_ / g), mul(rhs.num_, den_ / g));
  *this = Rational(n, mul(den_ / g, rhs.den_));
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) { return *this += -rhs; }

Rational& Rational::operator*=(const Rational& rhs) {
  // cross-reduce first to keep intermediates small
  const Int g1 = static_cast<Int>(gcd_u(abs_u(num_), static_cast<UInt>(rhs.den_)));
  const Int g2 = static_cast<Int>(gcd_u(abs_u(rhs.num_), static_cast<UInt>(den_)));
  const Int a = g1 > 1 ? num_ / g1 : num_;
  const Int d = g1 > 1 ? rhs.den_ / g1 : rhs.den_;
  const Int c = g2 > 1 ? rhs.num_ / g2 : rhs.num_;
  const Int b = g2 > 1 ? den_ / g2 : den_;
  *this = Rational(mul(a, c), mul(b, d));
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.num_ == 0) throw RationalError("division by zero");
  return *this *= Rational(rhs.den_, rhs.num_);
}

Rational Rational::operator-() const { return Rational(sub(0, num_), den_, Raw{}); }

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (a.den_ == b.den_) return a.num_ <=> b.num_;
  return mul(a.num_, b.den_) <=> mul(b.num_, a.den_);
}

std::size_t RationalHash::operator()(const Rational& r) const noexcept {
  const auto lo = [](Int v) { return static_cast<std::uint64_t>(static_cast<UInt>(v)); };
  const auto hi = [](Int v) { return static_cast<std::uint64_t>(static_cast<UInt>(v) >> 64); };
  std::size_t h = std::hash<std::uint64_t>{}(lo(r.numerator()));
  for (std::uint64_t part : {hi(r.numerator()), lo(r.denominator()), hi(r.denominator())}) {
    h ^= std::hash<std::uint64_t>{}(part) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

}  // namespace themetruss
