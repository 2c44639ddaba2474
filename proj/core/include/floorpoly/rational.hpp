#pragma once

// Exact rational arithmetic on top of GMP.
//
// Rational is always kept in canonical form: the denominator is positive and
// shares no factor with the numerator. Zero is 0/1.

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <type_traits>

namespace floorpoly {

using Integer = mpz_class;

class Rational {
 public:
  Rational() = default;

  template <std::integral T>
  Rational(T v)  // NOLINT(google-explicit-constructor)
      : value_(widen(v)) {}

  Rational(const Integer& v)  // NOLINT(google-explicit-constructor)
      : value_(v) {}

  /// Throws std::domain_error when den == 0.
  Rational(const Integer& num, const Integer& den);

  explicit Rational(const mpq_class& q) : value_(q) { value_.canonicalize(); }

  /// Accepts "p", "p/q" and "-p/q" (decimal integers of any length).
  static Rational parse(std::string_view text);

  Integer numerator() const { return value_.get_num(); }
  Integer denominator() const { return value_.get_den(); }
  const mpq_class& raw() const { return value_; }

  bool is_integer() const { return value_.get_den() == 1; }
  int sign() const { return sgn(value_); }

  Integer floor() const;
  Integer ceil() const;
  /// x - floor(x), always in [0, 1).
  Rational frac() const;
  Rational abs() const;

  /// Nearest double, truncated toward zero.
  double to_double() const { return value_.get_d(); }
  std::string str() const { return value_.get_str(); }

  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  /// Throws std::domain_error on division by zero.
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.value_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.value_, b.value_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  template <std::integral T>
  static mpq_class widen(T v) {
    if constexpr (std::is_signed_v<T>)
      return mpq_class(static_cast<long>(v));
    else
      return mpq_class(static_cast<unsigned long>(v));
  }

  mpq_class value_{0};
};

Rational pow(const Rational& base, unsigned exponent);

inline Integer rat_floor(const Rational& x) { return x.floor(); }
inline Rational rat_frac(const Rational& x) { return x.frac(); }

/// {l*x} and the floor sum over i in [0, l) of floor(x + i/l).
struct ScaledFracIdentities {
  Rational scaled_frac;
  Integer floor_sum;
};

/// Evaluates both sides of {lx} = {l{x}} and floor(lx) = sum floor(x + i/l).
/// Throws std::logic_error if either identity fails and std::invalid_argument
/// when l == 0.
ScaledFracIdentities scaled_frac_identities(const Rational& x, unsigned long l);

Integer factorial(unsigned n);

}  // namespace floorpoly
