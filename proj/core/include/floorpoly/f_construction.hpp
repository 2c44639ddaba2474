#pragma once

// The reduction map f_{k,l} : [0,1)^{k-1} -> [0,1) with
//
//   x^{:k} / l  ==  x^k / (kl) - f_{k,l}({x/k!l}, ..., {x^{k-1}/k!l})   (mod 1)
//
// built recursively: f_{1,l} = 0 and, with L_j = k! l / j!,
//
//   abar_j = {((j-1)! y_j - f_{j,L_j}(y_1..y_{j-1})) L_j}
//   bbar_j = sum_{i=1}^{L_j - 1} floor({(j-1)! y_j - f_{j,L_j}(y_1..y_{j-1})} + i/L_j)
//   f_{k,l} = {(phat_k(abar) - phat_k(-bbar)) / (kl)}
//
// plus the reduced quadratic form g_k, the density of {kxy}, and a Monte
// Carlo Fourier-coefficient witness for non-uniformity mod 1.

#include "floorpoly/partition_poly.hpp"
#include "floorpoly/rational.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

namespace floorpoly {

inline constexpr unsigned kMaxFklK = 10;

struct BarValues {
  std::vector<Rational> a_bar;
  std::vector<Integer> b_bar;
};

/// Evaluates f_{j,l} for one point y, memoizing every (j, l) reached by the
/// recursion. y holds (y_1, ..., y_{k-1}), each in [0,1).
class FklEvaluator {
 public:
  explicit FklEvaluator(std::vector<Rational> y);

  /// Requires 1 <= k <= y.size() + 1 and l >= 1.
  const Rational& f(unsigned k, std::uint64_t l);
  BarValues bars(unsigned k, std::uint64_t l);

 private:
  std::vector<Rational> y_;
  std::map<std::pair<unsigned, std::uint64_t>, Rational> memo_;
  std::map<unsigned, PartitionPolynomial> phat_;
};

/// Throws std::invalid_argument when y.size() != k - 1, a component lies
/// outside [0,1), l == 0, or k is outside [1, kMaxFklK].
Rational f_kl(unsigned k, std::uint64_t l, std::span<const Rational> y);
BarValues bar_values(unsigned k, std::uint64_t l, std::span<const Rational> y);

/// sum_{i=1}^{L-1} floor(t + i/L), summed term by term.
Integer floor_sum(const Rational& t, std::uint64_t L);

/// The two hand-expanded instances: f_{2,3}(y) = {(alpha_1^2 - beta_1^2)/6}
/// and f_{3,1}(y, z) = {(3 alpha_1 alpha_2 + alpha_1^3 - 3 beta_1 beta_2 + beta_1^3)/3}.
Rational f23_closed_form(const Rational& y);
Rational f31_closed_form(const Rational& y, const Rational& z);

/// y_j = {x^j / (k! l)} for j = 1..k-1.
std::vector<Rational> lemma1_arguments(const Rational& x, unsigned k, std::uint64_t l);

struct Lemma1Sides {
  Rational lhs;  // {x^{:k} / l}
  Rational rhs;  // {x^k/(kl) - f_{k,l}(y)}
  bool holds() const { return lhs == rhs; }
};

Lemma1Sides lemma1_sides(const Rational& x, unsigned k, std::uint64_t l);
inline bool verify_lemma1(const Rational& x, unsigned k, std::uint64_t l) { return lemma1_sides(x, k, l).holds(); }

/// g_k(y) = sum_{j < k-j} m k y_j y_{k-j}  (+ (m/2) k y_{k/2}^2 for even k).
/// y = (y_1, ..., y_{k-1}).
template <class T>
T g_k(unsigned k, long m, std::span<const T> y) {
  if (k < 3) throw std::invalid_argument("g_k: k must be at least 3");
  if (y.size() != k - 1) throw std::invalid_argument("g_k: expected k-1 components");
  T sum(0);
  const T mk(m * static_cast<long>(k));
  for (unsigned j = 1; 2 * j < k; ++j) sum = sum + mk * y[j - 1] * y[k - j - 1];
  if (k % 2 == 0) {
    const T& mid = y[k / 2 - 1];
    sum = sum + mk * mid * mid / T(2);
  }
  return sum;
}

/// Density of {k u v} for independent uniform u, v:
/// sum_{j=0}^{k-1} (1/k) ln(k / (j + t)). Infinite at t = 0.
double kxy_density(unsigned k, double t);
/// Closed-form integral of kxy_density over [0, t].
double kxy_cdf(unsigned k, double t);

enum class WitnessTarget {
  g_k,              // {g_k(Y)} with Y uniform on [0,1)^{k-1}
  p_hat,            // {m * phat_k(A)} with A uniform on [0,1)^{k-1}
  uniform_control,  // Y_1 itself
};

struct FourierWitness {
  unsigned k = 0;
  long m = 1;
  WitnessTarget target = WitnessTarget::g_k;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  double re = 0.0;
  double im = 0.0;
  double estimate = 0.0;  // |mean of exp(2 pi i X)|
  double radius = 0.0;    // 3 standard errors

  bool witnessed() const { return estimate - radius > 0.0; }
};

inline constexpr std::size_t kMinWitnessSamples = 100000;

/// Monte Carlo estimate of |E exp(2 pi i X)|. Samples are split into a fixed
/// number of shards with seeds derived from `seed`, so the result does not
/// depend on `jobs`. Throws std::invalid_argument for k < 3 or too few
/// samples.
FourierWitness fourier_witness(unsigned k, long m, std::size_t samples, std::uint64_t seed,
                               WitnessTarget target = WitnessTarget::g_k, unsigned jobs = 1);

}  // namespace floorpoly
