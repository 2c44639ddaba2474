#pragma once

// Independent reference implementations used only by the tests. Each one is
// written differently from the library code it checks: recursion where the
// library iterates, brute force where it sorts, MPFR where it uses dyadic
// intervals.

#include "floorpoly/rational.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace oracle {

using floorpoly::Integer;
using floorpoly::Rational;

inline Rational floor_of(const Rational& x) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), x.raw().get_num_mpz_t(), x.raw().get_den_mpz_t());
  return Rational(q);
}

inline Rational frac_of(const Rational& x) { return x - floor_of(x); }

/// X^{a:b} by direct recursion on the definition, indices mod n.
inline Rational chain(std::span<const Rational> xs, long a, long b) {
  if (a == b) return Rational(1);
  const long n = static_cast<long>(xs.size());
  const Rational& head = xs[static_cast<std::size_t>(((a % n) + n) % n)];
  if (a + 1 == b) return head;
  return head * floor_of(chain(xs, a + 1, b));
}

inline Rational power_chain(const Rational& x, unsigned k) {
  std::vector<Rational> one{x};
  return k == 0 ? Rational(1) : chain(one, 0, static_cast<long>(k));
}

inline Rational product(std::span<const Rational> xs) {
  Rational p(1);
  for (const auto& x : xs) p = p * x;
  return p;
}

/// Number of partitions of n by Euler's pentagonal number recurrence.
inline std::uint64_t partition_count(unsigned n) {
  std::vector<std::int64_t> p(n + 1, 0);
  p[0] = 1;
  for (unsigned m = 1; m <= n; ++m) {
    std::int64_t s = 0;
    for (long k = 1;; ++k) {
      const long g1 = k * (3 * k - 1) / 2;
      const long g2 = k * (3 * k + 1) / 2;
      if (g1 > static_cast<long>(m)) break;
      const int sign = (k % 2 == 1) ? 1 : -1;
      s += sign * p[m - g1];
      if (g2 <= static_cast<long>(m)) s += sign * p[m - g2];
    }
    p[m] = s;
  }
  return static_cast<std::uint64_t>(p[n]);
}

/// p_n(a) from P(z) (1 - A(z)) = z A'(z), i.e.
/// p_n = n a_n + sum_{k=1}^{n-1} a_k p_{n-k}. a[k-1] = a_k.
inline Rational p_value(unsigned n, std::span<const Rational> a) {
  std::vector<Rational> p(n + 1, Rational(0));
  for (unsigned m = 1; m <= n; ++m) {
    Rational s = Rational(m) * a[m - 1];
    for (unsigned k = 1; k < m; ++k) s = s + a[k - 1] * p[m - k];
    p[m] = s;
  }
  return p[n];
}

/// [z^n] (1 + B(z)) / (1 - A(z)) by c_m = b_m + sum_{k=1}^{m} a_k c_{m-k}.
inline Rational mixed_value(unsigned n, std::span<const Rational> a, std::span<const Rational> b) {
  std::vector<Rational> c(n + 1, Rational(0));
  c[0] = Rational(1);
  for (unsigned m = 1; m <= n; ++m) {
    Rational s = b[m - 1];
    for (unsigned k = 1; k <= m; ++k) s = s + a[k - 1] * c[m - k];
    c[m] = s;
  }
  return c[n];
}

/// sup_t |#{x < t}/N - t| evaluated at both one-sided limits of every point
/// and at t = 1. Quadratic; intended for small N.
inline double star_discrepancy_brute(std::span<const double> xs) {
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (double p : xs) {
    double lt = 0.0;
    double le = 0.0;
    for (double x : xs) {
      lt += x < p ? 1.0 : 0.0;
      le += x <= p ? 1.0 : 0.0;
    }
    d = std::max({d, std::fabs(lt / n - p), std::fabs(le / n - p)});
  }
  return std::max(d, 0.0);
}

inline double weyl_brute(std::span<const double> xs, unsigned h) {
  std::complex<long double> s = 0;
  const long double two_pi = 6.283185307179586476925286766559L;
  for (double x : xs) s += std::polar(1.0L, two_pi * static_cast<long double>(h) * static_cast<long double>(x));
  return static_cast<double>(std::abs(s) / static_cast<long double>(xs.size()));
}

/// f_{2,3}(y) = {(alpha_1^2 - beta_1^2)/6}, alpha_1 = {6y},
/// beta_1 = sum_{i=1}^{5} floor(y + i/6).
inline Rational f23(const Rational& y) {
  const Rational al = frac_of(Rational(6) * y);
  Rational be(0);
  for (int i = 1; i <= 5; ++i) be = be + floor_of(y + Rational(i) / Rational(6));
  return frac_of((al * al - be * be) / Rational(6));
}

/// f_{3,1}(y, z) = {(3 alpha_1 alpha_2 + alpha_1^3 - 3 beta_1 beta_2 + beta_1^3)/3}
/// with alpha_1, beta_1 as in f23, alpha_2 = {3z - 3 f_{2,3}(y)} and
/// beta_2 = sum_{i=1}^{2} floor({z - f_{2,3}(y)} + i/3).
inline Rational f31(const Rational& y, const Rational& z) {
  const Rational al1 = frac_of(Rational(6) * y);
  Rational be1(0);
  for (int i = 1; i <= 5; ++i) be1 = be1 + floor_of(y + Rational(i) / Rational(6));
  const Rational g = f23(y);
  const Rational al2 = frac_of(Rational(3) * z - Rational(3) * g);
  Rational be2(0);
  for (int i = 1; i <= 2; ++i) be2 = be2 + floor_of(frac_of(z - g) + Rational(i) / Rational(3));
  const Rational num = Rational(3) * al1 * al2 + al1 * al1 * al1 - Rational(3) * be1 * be2 + be1 * be1 * be1;
  return frac_of(num / Rational(3));
}

/// Multiprecision helper for real-valued oracles.
class Mp {
 public:
  static constexpr mpfr_prec_t kPrec = 256;
  Mp() { mpfr_init2(v_, kPrec); mpfr_set_zero(v_, 1); }
  Mp(const Mp& o) { mpfr_init2(v_, kPrec); mpfr_set(v_, o.v_, MPFR_RNDN); }
  Mp& operator=(const Mp& o) { mpfr_set(v_, o.v_, MPFR_RNDN); return *this; }
  ~Mp() { mpfr_clear(v_); }

  static Mp root(unsigned long base, unsigned long degree) {
    Mp r;
    mpfr_set_ui(r.v_, base, MPFR_RNDN);
    mpfr_rootn_ui(r.v_, r.v_, degree, MPFR_RNDN);
    return r;
  }
  static Mp pi() { Mp r; mpfr_const_pi(r.v_, MPFR_RNDN); return r; }

  Mp times(unsigned long n) const { Mp r; mpfr_mul_ui(r.v_, v_, n, MPFR_RNDN); return r; }
  Mp frac() const { Mp r; mpfr_frac(r.v_, v_, MPFR_RNDN); if (mpfr_sgn(r.v_) < 0) mpfr_add_ui(r.v_, r.v_, 1, MPFR_RNDN); return r; }
  Mp squared() const { Mp r; mpfr_sqr(r.v_, v_, MPFR_RNDN); return r; }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

 private:
  mpfr_t v_;
};

}  // namespace oracle
