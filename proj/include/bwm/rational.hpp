#ifndef BWM_RATIONAL_HPP
#define BWM_RATIONAL_HPP

#include <charconv>
#include <cmath>
#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "bwm/error.hpp"

namespace bwm {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational with 64-bit numerator and denominator, always reduced and
// with a positive denominator.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t value) : num_(value), den_(1) {}  // NOLINT(implicit)

  Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
    if (den == 0) throw Error(Errc::Parse, "zero denominator");
    normalize();
  }

  constexpr std::int64_t num() const { return num_; }
  constexpr std::int64_t den() const { return den_; }
  constexpr bool is_integer() const { return den_ == 1; }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  double log() const { return std::log(static_cast<double>(num_)) - std::log(static_cast<double>(den_)); }

  Rational reciprocal() const {
    if (num_ == 0) throw Error(Errc::Parse, "reciprocal of zero");
    return Rational(den_, num_);
  }

  friend Rational operator*(const Rational& a, const Rational& b) {
    const std::int64_t g1 = std::gcd(a.num_, b.den_);
    const std::int64_t g2 = std::gcd(b.num_, a.den_);
    const __int128 n = static_cast<__int128>(a.num_ / (g1 ? g1 : 1)) * (b.num_ / (g2 ? g2 : 1));
    const __int128 d = static_cast<__int128>(a.den_ / (g2 ? g2 : 1)) * (b.den_ / (g1 ? g1 : 1));
    return from_wide(n, d);
  }

  friend Rational operator/(const Rational& a, const Rational& b) { return a * b.reciprocal(); }

  friend bool operator==(const Rational& a, const Rational& b) = default;

  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
    const __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
    return lhs <=> rhs;
  }

  // "7" or "7/3"
  std::string str() const {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
  }

  // Accepts an optionally signed integer or "p/q"; surrounding blanks are
  // not allowed.
  static Rational parse(std::string_view text) {
    const auto slash = text.find('/');
    const auto parse_int = [&](std::string_view part) {
      std::int64_t v = 0;
      if (part.empty()) throw Error(Errc::Parse, "malformed rational '" + std::string(text) + "'");
      const auto* first = part.data();
      if (*first == '+') ++first;
      const auto [ptr, ec] = std::from_chars(first, part.data() + part.size(), v);
      if (ec != std::errc{} || ptr != part.data() + part.size())
        throw Error(Errc::Parse, "malformed rational '" + std::string(text) + "'");
      return v;
    };
    if (slash == std::string_view::npos) return Rational(parse_int(text));
    return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  static Rational from_wide(__int128 n, __int128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    __int128 a = n < 0 ? -n : n;
    __int128 b = d;
    while (b != 0) {
      const __int128 t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) {
      n /= a;
      d /= a;
    }
    constexpr __int128 kMax = INT64_MAX;
    if (n > kMax || n < -kMax || d > kMax) throw Error(Errc::Parse, "rational overflow");
    Rational r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
  }

  void normalize() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const std::int64_t g = std::gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

// Rational raised to a nonnegative power, as an exact big-integer fraction.
struct BigFraction {
  BigInt num = 1;
  BigInt den = 1;

  BigFraction& operator*=(const BigFraction& o) {
    num *= o.num;
    den *= o.den;
    return *this;
  }
  BigFraction& operator*=(const Rational& r) {
    num *= r.num();
    den *= r.den();
    return *this;
  }
  friend BigFraction operator*(BigFraction a, const BigFraction& b) { return a *= b; }

  // Both denominators are positive, so cross multiplication preserves order.
  friend int compare(const BigFraction& a, const BigFraction& b) {
    const BigInt lhs = a.num * b.den;
    const BigInt rhs = b.num * a.den;
    return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
  }
};

inline BigFraction pow(const Rational& base, unsigned exponent) {
  BigFraction out;
  out.num = boost::multiprecision::pow(BigInt(base.num()), exponent);
  out.den = boost::multiprecision::pow(BigInt(base.den()), exponent);
  if (out.den < 0) {
    out.num = -out.num;
    out.den = -out.den;
  }
  return out;
}

// Strong type for a single pairwise judgment a_ij; always within [1/9, 9].
class ComparisonValue {
 public:
  static ComparisonValue make(const Rational& value) {
    if (value <= Rational(0) || value < Rational(1, 9) || value > Rational(9))
      throw Error(Errc::OutOfScale, "comparison " + value.str() + " outside [1/9, 9]");
    return ComparisonValue(value);
  }
  static ComparisonValue parse(std::string_view text) { return make(Rational::parse(text)); }

  const Rational& value() const { return value_; }
  double to_double() const { return value_.to_double(); }
  double log() const { return value_.log(); }
  std::string str() const { return value_.str(); }
  ComparisonValue reciprocal() const { return ComparisonValue(value_.reciprocal()); }

  // Saaty scale {1/9, ..., 1/2, 1, 2, ..., 9}
  bool on_scale() const { return value_.num() == 1 || value_.den() == 1; }

  friend bool operator==(const ComparisonValue&, const ComparisonValue&) = default;
  friend std::strong_ordering operator<=>(const ComparisonValue& a, const ComparisonValue& b) {
    return a.value_ <=> b.value_;
  }
  friend std::ostream& operator<<(std::ostream& os, const ComparisonValue& v) { return os << v.value_; }

 private:
  explicit ComparisonValue(const Rational& v) : value_(v) {}
  Rational value_;
};

}  // namespace bwm

#endif  // BWM_RATIONAL_HPP
