#pragma once

// Partition polynomials and the power identities built from them.
//
//   p_n(a_1..a_n) = sum over k_1 + 2k_2 + ... + n k_n = n of
//                   (k_1 + ... + k_n - 1)! n / (k_1! ... k_n!) * a_1^k_1 ... a_n^k_n
//
//   x^n = p_n(a_1..a_n) - p_n(-b_1..-b_n)          with a_k, b_k from ab_seq(x)
//   1/(1 - xz) = (1 + sum b_k z^k) / (1 - sum a_k z^k)
//
// Coefficients are exact integers; variables a_k and b_k live in one shared
// namespace so pure and mixed expansions evaluate through the same code.

#include "floorpoly/nested_floor.hpp"
#include "floorpoly/rational.hpp"

#include <algorithm>
#include <compare>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace floorpoly {

inline constexpr unsigned kMaxPartitionN = 30;

struct Partition {
  /// multiplicity[i] = k_{i+1}
  std::vector<unsigned> multiplicity;

  unsigned weight() const;  // sum of i * k_i
  unsigned parts() const;   // sum of k_i
};

/// All partitions of n, largest parts first. Throws std::out_of_range unless
/// 1 <= n <= kMaxPartitionN.
std::vector<Partition> partitions(unsigned n);

enum class Family : unsigned char { a, b };

struct Variable {
  Family family = Family::a;
  unsigned index = 1;
  friend auto operator<=>(const Variable&, const Variable&) = default;
  friend bool operator==(const Variable&, const Variable&) = default;
};

inline Variable a_var(unsigned k) { return {Family::a, k}; }
inline Variable b_var(unsigned k) { return {Family::b, k}; }

/// Product of variable powers, sorted by variable, no zero exponents.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(const Variable& v, unsigned exp = 1);

  const std::vector<std::pair<Variable, unsigned>>& factors() const { return factors_; }
  bool is_constant() const { return factors_.empty(); }
  unsigned exponent(const Variable& v) const;
  unsigned degree() const;
  Monomial part(Family f) const;

  friend Monomial operator*(const Monomial& x, const Monomial& y);
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
  friend bool operator==(const Monomial&, const Monomial&) = default;

  /// "a1^2*a2", or "1" for the constant monomial.
  std::string render() const;

 private:
  std::vector<std::pair<Variable, unsigned>> factors_;
};

/// Values substituted for a_k (a[k-1]) and b_k (b[k-1]).
struct Assignment {
  std::vector<Rational> a;
  std::vector<Rational> b;

  static Assignment from(const ABSeq& s);
  const Rational& value(const Variable& v) const;
};

class PartitionPolynomial {
 public:
  PartitionPolynomial() = default;
  template <std::integral T>
  PartitionPolynomial(T c)  // NOLINT(google-explicit-constructor)
      : PartitionPolynomial(Integer(static_cast<long>(c))) {}
  PartitionPolynomial(const Integer& c);  // NOLINT(google-explicit-constructor)
  explicit PartitionPolynomial(const Variable& v);
  PartitionPolynomial(const Monomial& m, const Integer& c);

  void add(const Monomial& m, const Integer& c);
  const std::map<Monomial, Integer>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  Integer coefficient(const Monomial& m) const;
  bool all_coefficients_nonnegative() const;

  /// Replace every variable of `family` by its negation.
  PartitionPolynomial negate_family(Family family) const;
  /// Rename a_k -> b_k (or back).
  PartitionPolynomial rename_family(Family from, Family to) const;

  Rational evaluate(const Assignment& values) const;

  /// Flat rendering: terms without b first, each group ordered by the
  /// exponent vectors (a_1 first, descending).
  std::string render() const;
  /// Collects the a-part of every term under its b-monomial:
  /// "a1^2 + a2 + a1*b1 + b2", "(a1^2 + a2)*b1".
  std::string render_grouped_by_b() const;

  PartitionPolynomial& operator+=(const PartitionPolynomial& o);
  PartitionPolynomial& operator-=(const PartitionPolynomial& o);
  friend PartitionPolynomial operator+(PartitionPolynomial x, const PartitionPolynomial& y) { return x += y; }
  friend PartitionPolynomial operator-(PartitionPolynomial x, const PartitionPolynomial& y) { return x -= y; }
  friend PartitionPolynomial operator-(const PartitionPolynomial& x);
  friend PartitionPolynomial operator*(const PartitionPolynomial& x, const PartitionPolynomial& y);
  friend bool operator==(const PartitionPolynomial&, const PartitionPolynomial&) = default;

 private:
  std::map<Monomial, Integer> terms_;
};

/// Throws std::out_of_range unless 1 <= n <= kMaxPartitionN.
PartitionPolynomial p_poly(unsigned n);
/// p_n without its linear term n*a_n; throws std::invalid_argument for n < 2.
PartitionPolynomial p_hat(unsigned n);
/// p_n(a) - p_n(-b), the polynomial whose value at ab_seq(x) is x^n.
PartitionPolynomial power_identity_poly(unsigned n);
/// [z^n] (1 + sum b_k z^k) / (1 - sum a_k z^k).
PartitionPolynomial mixed_expansion(unsigned n);

bool power_identity_check(const Rational& x, unsigned n);
bool mixed_identity_check(const Rational& x, unsigned n);

/// Truncated power series sum_{i < size} c_i z^i.
template <class Coeff>
class TruncatedSeries {
 public:
  explicit TruncatedSeries(std::size_t order) : c_(order + 1, Coeff(0)) {}

  std::size_t order() const { return c_.size() - 1; }
  Coeff& operator[](std::size_t i) { return c_[i]; }
  const Coeff& operator[](std::size_t i) const { return c_[i]; }

  friend TruncatedSeries operator*(const TruncatedSeries& x, const TruncatedSeries& y) {
    TruncatedSeries r(std::min(x.order(), y.order()));
    for (std::size_t i = 0; i <= r.order(); ++i)
      for (std::size_t j = 0; i + j <= r.order(); ++j) r.c_[i + j] = r.c_[i + j] + x.c_[i] * y.c_[j];
    return r;
  }

  /// 1/f for a series with constant term 1.
  TruncatedSeries inverse_unit() const {
    if (!(c_[0] == Coeff(1))) throw std::invalid_argument("inverse_unit: constant term must be 1");
    TruncatedSeries g(order());
    g.c_[0] = Coeff(1);
    for (std::size_t m = 1; m <= order(); ++m) {
      Coeff acc(0);
      for (std::size_t i = 1; i <= m; ++i) acc = acc + c_[i] * g.c_[m - i];
      g.c_[m] = Coeff(0) - acc;
    }
    return g;
  }

 private:
  std::vector<Coeff> c_;
};

/// Checks, for every n <= N, that the series quotients reproduce p_n(a) and
/// -p_n(-b) coefficient by coefficient, that their values at ab_seq(x) sum
/// to x^n, that the mixed quotient evaluates to x^n, and that
/// a_k + b_k = x b_{k-1}. Throws std::out_of_range for N > kMaxPartitionN.
bool series_consistency_check(const Rational& x, unsigned N);

}  // namespace floorpoly
