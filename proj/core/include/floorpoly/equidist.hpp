#pragma once

// Sequences mod 1 built from nested floors, and the instruments used to
// judge their distribution: exact 1-D star discrepancy, Weyl sums and
// histograms, plus the two-scale trend experiment for {(alpha n)^{:k}}.

#include "floorpoly/adaptive_real.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace floorpoly {

/// alpha as given on a command line: "rat:p/q", "root:b,d" or "pi".
struct AlphaSpec {
  enum class Kind { rational, root, pi };

  Kind kind = Kind::rational;
  Rational base{1};  // the rational itself, or the radicand
  unsigned degree = 1;

  /// Throws std::invalid_argument on malformed input.
  static AlphaSpec parse(std::string_view text);
  static AlphaSpec rational(const Rational& q) { return {Kind::rational, q, 1}; }
  static AlphaSpec root(const Rational& b, unsigned d) { return {Kind::root, b, d}; }
  static AlphaSpec pi() { return {Kind::pi, Rational(0), 1}; }

  AdaptiveReal real() const;
  std::string str() const;
  /// Whether alpha^j is rational. pi^j is irrational for every j >= 1.
  bool power_is_rational(unsigned j) const;
  bool positive() const;
};

enum class SequenceVariant {
  nested_alpha,         // a_1 n [a_2 n [ ... [a_k n] ... ]]
  floored_product,      // a_0 [a_1 n] [a_2 n] ... [a_k n]
  power_chain,          // (alpha n)^{:k}
  theorem_combination,  // m (alpha n)^k - k m (alpha n)^{:k}
};

std::string to_string(SequenceVariant v);
/// Accepts "nested-alpha", "floored-product", "power-chain",
/// "theorem-combination".
SequenceVariant parse_variant(std::string_view text);

struct SequenceSpec {
  SequenceVariant variant = SequenceVariant::power_chain;
  /// One alpha for power-chain / theorem-combination; k alphas for
  /// nested-alpha; k + 1 alphas (a_0 first) for floored-product.
  std::vector<AlphaSpec> alphas;
  unsigned k = 1;
  long m = 1;
  std::size_t N = 0;
  long precision_cap = kDefaultPrecisionCap;
  unsigned jobs = 1;

  /// Throws std::invalid_argument when the configuration is inconsistent.
  void validate() const;
  /// True unless alpha^j is rational for some 2 <= j <= k-1 (power-chain
  /// and theorem-combination only).
  bool within_theorem_hypothesis() const;
};

/// The exact (not yet reduced) value at index n, as an AdaptiveReal.
/// Throws UnresolvableFloor if an inner floor cannot be certified.
AdaptiveReal sequence_term(const SequenceSpec& spec, std::uint64_t n);

struct GeneratedSequence {
  /// {value_n} for every n = 1..N whose floors were certified, in order.
  std::vector<double> values;
  /// 1-based indices that were skipped; values.size() + unresolved.size() == N.
  std::vector<std::uint64_t> unresolved;
};

/// Generates n = 1..N, sharding the index range across spec.jobs workers.
GeneratedSequence generate(const SequenceSpec& spec);
/// Same, restricted to n in [first, last].
GeneratedSequence generate_range(const SequenceSpec& spec, std::uint64_t first, std::uint64_t last);

/// max_i max(i/N - x_(i), x_(i) - (i-1)/N) over the sorted points.
/// Throws std::invalid_argument for an empty input or points outside [0,1).
double star_discrepancy(std::span<const double> points);

/// |(1/N) sum exp(2 pi i h x_n)| for h = 1..H.
std::vector<double> weyl_sums(std::span<const double> points, unsigned H);

std::vector<std::uint64_t> histogram(std::span<const double> points, unsigned bins);

inline constexpr unsigned kDefaultWeylHarmonics = 8;
inline constexpr unsigned kDefaultHistogramBins = 100;

struct DistributionReport {
  std::uint64_t N = 0;  // points requested
  double star_discrepancy = 0.0;
  std::vector<double> weyl;
  std::vector<std::uint64_t> histogram;
  std::uint64_t unresolved_count = 0;
};

/// Measures `values` (the resolved points among `requested`).
DistributionReport measure(std::span<const double> values, std::uint64_t requested,
                           unsigned harmonics = kDefaultWeylHarmonics, unsigned bins = kDefaultHistogramBins);

enum class Verdict { consistent_uniform, consistent_nonuniform, inconclusive };
std::string to_string(Verdict v);

/// Two-scale trend thresholds on D*_N. For N i.i.d. uniform points the
/// Kolmogorov law puts D*_N below 1.95/sqrt(N) with probability 0.999
/// (0.0062 at N = 10^5) and below 1.63/sqrt(N) with probability 0.99
/// (0.0163 at N = 10^4). Pilot runs at k = 3 gave D*_N near 0.042 for
/// alpha = 2^(1/3) and 0.0067 / 0.0023 at N = 10^4 / 10^5 for alpha = pi.
struct VerdictThresholds {
  /// Uniform: D*_N at the larger scale is below this and below the D*_N of
  /// the smaller scale.
  double uniform_ceiling = 0.01;
  /// Non-uniform: D*_N stays at or above this at both scales.
  double nonuniform_floor = 0.02;
};

struct TwoScaleTrend {
  DistributionReport coarse;  // first N/10 points
  DistributionReport fine;    // all N points
  Verdict verdict = Verdict::inconclusive;
};

Verdict classify(const DistributionReport& coarse, const DistributionReport& fine, const VerdictThresholds& t);

/// Unresolved points beyond this fraction of N abort a run.
inline constexpr double kMaxUnresolvedFraction = 0.001;

class PrecisionFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Generates the sequence once at N and measures the prefix N/10 and the full
/// run. Throws PrecisionFailure when too many points are unresolved.
TwoScaleTrend two_scale_trend(const SequenceSpec& spec, const VerdictThresholds& thresholds,
                              GeneratedSequence* samples = nullptr);

struct CorollaryReport {
  AlphaSpec alpha;
  unsigned k = 0;
  std::uint64_t N = 0;
  bool within_hypothesis = true;
  bool alpha_k_rational = false;
  TwoScaleTrend chain;        // {(alpha n)^{:k}}
  TwoScaleTrend combination;  // {(alpha n)^k - k (alpha n)^{:k}}, m = 1
};

CorollaryReport corollary_experiment(const AlphaSpec& alpha, unsigned k, std::uint64_t N,
                                     const VerdictThresholds& thresholds = {},
                                     long precision_cap = kDefaultPrecisionCap, unsigned jobs = 1);

}  // namespace floorpoly
