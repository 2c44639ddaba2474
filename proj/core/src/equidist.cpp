#include "floorpoly/equidist.hpp"

#include "floorpoly/nested_floor.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <thread>

namespace floorpoly {

namespace {

bool perfect_power(const Integer& v, unsigned d) {
  Integer r;
  return mpz_root(r.get_mpz_t(), v.get_mpz_t(), d) != 0;
}

unsigned parse_unsigned(std::string_view s, const char* what) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string_view::npos)
    throw std::invalid_argument(std::string("malformed ") + what + ": '" + std::string(s) + "'");
  return static_cast<unsigned>(std::stoul(std::string(s)));
}

}  // namespace

AlphaSpec AlphaSpec::parse(std::string_view text) {
  if (text == "pi") return pi();
  if (text.starts_with("rat:")) return rational(Rational::parse(text.substr(4)));
  if (text.starts_with("root:")) {
    const auto body = text.substr(5);
    const auto comma = body.find(',');
    if (comma == std::string_view::npos) throw std::invalid_argument("root alpha needs 'root:b,d'");
    const Rational b = Rational::parse(body.substr(0, comma));
    const unsigned d = parse_unsigned(body.substr(comma + 1), "root degree");
    if (d == 0) throw std::invalid_argument("root degree must be positive");
    if (b.sign() < 0) throw std::invalid_argument("root base must be non-negative");
    return root(b, d);
  }
  throw std::invalid_argument("alpha must be rat:p/q, root:b,d or pi; got '" + std::string(text) + "'");
}

AdaptiveReal AlphaSpec::real() const {
  switch (kind) {
    case Kind::rational: return AdaptiveReal(base);
    case Kind::root: return AdaptiveReal::nth_root(base, degree);
    case Kind::pi: return AdaptiveReal::pi();
  }
  throw std::logic_error("unknown alpha kind");
}

std::string AlphaSpec::str() const {
  switch (kind) {
    case Kind::rational: return "rat:" + base.str();
    case Kind::root: return "root:" + base.str() + "," + std::to_string(degree);
    case Kind::pi: return "pi";
  }
  return "?";
}

bool AlphaSpec::power_is_rational(unsigned j) const {
  switch (kind) {
    case Kind::rational: return true;
    case Kind::pi: return j == 0;
    case Kind::root: {
      if (j == 0 || base.sign() == 0) return true;
      Integer num;
      Integer den;
      mpz_pow_ui(num.get_mpz_t(), base.raw().get_num_mpz_t(), j);
      mpz_pow_ui(den.get_mpz_t(), base.raw().get_den_mpz_t(), j);
      return perfect_power(num, degree) && perfect_power(den, degree);
    }
  }
  return false;
}

bool AlphaSpec::positive() const { return kind == Kind::pi || base.sign() > 0; }

std::string to_string(SequenceVariant v) {
  switch (v) {
    case SequenceVariant::nested_alpha: return "nested-alpha";
    case SequenceVariant::floored_product: return "floored-product";
    case SequenceVariant::power_chain: return "power-chain";
    case SequenceVariant::theorem_combination: return "theorem-combination";
  }
  return "?";
}

SequenceVariant parse_variant(std::string_view text) {
  for (auto v : {SequenceVariant::nested_alpha, SequenceVariant::floored_product, SequenceVariant::power_chain,
                 SequenceVariant::theorem_combination})
    if (text == to_string(v)) return v;
  throw std::invalid_argument("unknown sequence variant '" + std::string(text) + "'");
}

void SequenceSpec::validate() const {
  if (N < 1) throw std::invalid_argument("sequence needs N >= 1");
  if (k < 1) throw std::invalid_argument("sequence needs k >= 1");
  if (precision_cap < 1) throw std::invalid_argument("precision cap must be positive");
  switch (variant) {
    case SequenceVariant::power_chain:
    case SequenceVariant::theorem_combination:
      if (alphas.size() != 1) throw std::invalid_argument(to_string(variant) + " takes exactly one alpha");
      break;
    case SequenceVariant::nested_alpha:
      if (alphas.size() != k) throw std::invalid_argument("nested-alpha takes k alphas");
      break;
    case SequenceVariant::floored_product:
      if (alphas.size() != k + 1) throw std::invalid_argument("floored-product takes k + 1 alphas");
      break;
  }
  if (variant == SequenceVariant::nested_alpha || variant == SequenceVariant::floored_product) {
    for (const auto& a : alphas)
      if (!a.positive()) throw std::invalid_argument(to_string(variant) + " needs positive alphas");
  }
}

bool SequenceSpec::within_theorem_hypothesis() const {
  if (variant != SequenceVariant::power_chain && variant != SequenceVariant::theorem_combination) return true;
  for (unsigned j = 2; j + 1 <= k; ++j)
    if (alphas.front().power_is_rational(j)) return false;
  return true;
}

AdaptiveReal sequence_term(const SequenceSpec& spec, std::uint64_t n) {
  const AdaptiveReal nn{Rational(n)};
  const CertifiedFloor floor{spec.precision_cap};
  switch (spec.variant) {
    case SequenceVariant::power_chain: return power_chain(spec.alphas.front().real() * nn, spec.k, floor);
    case SequenceVariant::theorem_combination: {
      const AdaptiveReal x = spec.alphas.front().real() * nn;
      const AdaptiveReal chain = power_chain(x, spec.k, floor);
      const AdaptiveReal m(Rational(spec.m));
      const AdaptiveReal km(Rational(spec.m) * Rational(spec.k));
      return m * pow(x, spec.k) - km * chain;
    }
    case SequenceVariant::nested_alpha: {
      std::vector<AdaptiveReal> xs;
      for (const auto& a : spec.alphas) xs.push_back(a.real() * nn);
      return eval_chain(std::span<const AdaptiveReal>(xs), 0, static_cast<long>(xs.size()), floor);
    }
    case SequenceVariant::floored_product: {
      AdaptiveReal v = spec.alphas.front().real();
      for (std::size_t i = 1; i < spec.alphas.size(); ++i) v = v * floor(spec.alphas[i].real() * nn);
      return v;
    }
  }
  throw std::logic_error("unknown sequence variant");
}

GeneratedSequence generate_range(const SequenceSpec& spec, std::uint64_t first, std::uint64_t last) {
  spec.validate();
  GeneratedSequence out;
  if (last < first) return out;
  const std::uint64_t count = last - first + 1;
  std::vector<double> raw(count);
  std::vector<char> ok(count, 0);

  const auto work = [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t i = begin; i < end; ++i) {
      try {
        raw[i] = certified_frac_double(sequence_term(spec, first + i), spec.precision_cap);
        ok[i] = 1;
      } catch (const UnresolvableFloor&) {
        ok[i] = 0;
      }
    }
  };

  const unsigned workers = static_cast<unsigned>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(spec.jobs, count)));
  if (workers == 1) {
    work(0, count);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back(work, count * w / workers, count * (w + 1) / workers);
    for (auto& t : pool) t.join();
  }

  out.values.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    if (ok[i])
      out.values.push_back(raw[i]);
    else
      out.unresolved.push_back(first + i);
  }
  return out;
}

GeneratedSequence generate(const SequenceSpec& spec) { return generate_range(spec, 1, spec.N); }

double star_discrepancy(std::span<const double> points) {
  if (points.empty()) throw std::invalid_argument("star_discrepancy: empty point set");
  std::vector<double> x(points.begin(), points.end());
  for (double v : x)
    if (!(v >= 0.0 && v < 1.0)) throw std::invalid_argument("star_discrepancy: point outside [0,1)");
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double above = static_cast<double>(i + 1) / n - x[i];
    const double below = x[i] - static_cast<double>(i) / n;
    d = std::max({d, above, below});
  }
  return d;
}

std::vector<double> weyl_sums(std::span<const double> points, unsigned H) {
  if (H < 1) throw std::invalid_argument("weyl_sums: H must be positive");
  std::vector<double> out(H, 0.0);
  if (points.empty()) return out;
  for (unsigned h = 1; h <= H; ++h) {
    double re = 0.0;
    double im = 0.0;
    for (double x : points) {
      // reduce h*x mod 1 before scaling so large h keeps full accuracy
      const double hx = h * x;
      const double angle = 2.0 * std::numbers::pi * (hx - std::floor(hx));
      re += std::cos(angle);
      im += std::sin(angle);
    }
    const double n = static_cast<double>(points.size());
    out[h - 1] = std::min(1.0, std::hypot(re, im) / n);
  }
  return out;
}

std::vector<std::uint64_t> histogram(std::span<const double> points, unsigned bins) {
  if (bins < 1) throw std::invalid_argument("histogram: bins must be positive");
  std::vector<std::uint64_t> h(bins, 0);
  for (double x : points) {
    auto b = static_cast<std::size_t>(x * bins);
    if (b >= bins) b = bins - 1;
    ++h[b];
  }
  return h;
}

DistributionReport measure(std::span<const double> values, std::uint64_t requested, unsigned harmonics,
                           unsigned bins) {
  if (values.size() > requested) throw std::invalid_argument("measure: more values than requested points");
  DistributionReport r;
  r.N = requested;
  r.unresolved_count = requested - values.size();
  r.star_discrepancy = values.empty() ? 1.0 : star_discrepancy(values);
  r.weyl = weyl_sums(values, harmonics);
  r.histogram = histogram(values, bins);
  return r;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::consistent_uniform: return "consistent-uniform";
    case Verdict::consistent_nonuniform: return "consistent-nonuniform";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

Verdict classify(const DistributionReport& coarse, const DistributionReport& fine, const VerdictThresholds& t) {
  if (fine.star_discrepancy < coarse.star_discrepancy && fine.star_discrepancy < t.uniform_ceiling)
    return Verdict::consistent_uniform;
  if (coarse.star_discrepancy >= t.nonuniform_floor && fine.star_discrepancy >= t.nonuniform_floor)
    return Verdict::consistent_nonuniform;
  return Verdict::inconclusive;
}

TwoScaleTrend two_scale_trend(const SequenceSpec& spec, const VerdictThresholds& thresholds,
                              GeneratedSequence* samples) {
  GeneratedSequence seq = generate(spec);
  const auto limit = static_cast<std::size_t>(kMaxUnresolvedFraction * static_cast<double>(spec.N));
  if (seq.unresolved.size() > limit) {
    throw PrecisionFailure(std::to_string(seq.unresolved.size()) + " of " + std::to_string(spec.N) +
                           " points unresolved at precision cap " + std::to_string(spec.precision_cap) +
                           " (first at n = " + std::to_string(seq.unresolved.front()) + ")");
  }
  const std::uint64_t coarse_n = std::max<std::uint64_t>(1, spec.N / 10);
  // Resolved values come in index order, so the prefix is the values whose
  // index is <= coarse_n.
  const auto skipped_in_prefix = static_cast<std::size_t>(
      std::count_if(seq.unresolved.begin(), seq.unresolved.end(), [&](std::uint64_t n) { return n <= coarse_n; }));
  const std::size_t prefix = static_cast<std::size_t>(coarse_n) - skipped_in_prefix;

  TwoScaleTrend t;
  t.coarse = measure(std::span<const double>(seq.values.data(), prefix), coarse_n);
  t.fine = measure(seq.values, spec.N);
  t.verdict = classify(t.coarse, t.fine, thresholds);
  if (samples) *samples = std::move(seq);
  return t;
}

CorollaryReport corollary_experiment(const AlphaSpec& alpha, unsigned k, std::uint64_t N,
                                     const VerdictThresholds& thresholds, long precision_cap, unsigned jobs) {
  if (k < 2) throw std::invalid_argument("corollary_experiment: k must be at least 2");
  SequenceSpec spec;
  spec.variant = SequenceVariant::power_chain;
  spec.alphas = {alpha};
  spec.k = k;
  spec.m = 1;
  spec.N = N;
  spec.precision_cap = precision_cap;
  spec.jobs = jobs;

  CorollaryReport r;
  r.alpha = alpha;
  r.k = k;
  r.N = N;
  r.within_hypothesis = spec.within_theorem_hypothesis();
  r.alpha_k_rational = alpha.power_is_rational(k);
  r.chain = two_scale_trend(spec, thresholds);
  spec.variant = SequenceVariant::theorem_combination;
  r.combination = two_scale_trend(spec, thresholds);
  return r;
}

}  // namespace floorpoly
