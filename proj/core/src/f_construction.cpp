#include "floorpoly/f_construction.hpp"

#include "floorpoly/nested_floor.hpp"
#include "floorpoly/random.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace floorpoly {

namespace {

std::uint64_t factorial_u64(unsigned n) {
  std::uint64_t r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

void check_point(unsigned k, std::uint64_t l, std::span<const Rational> y) {
  if (k < 1 || k > kMaxFklK) throw std::invalid_argument("f_kl: k must be in [1, " + std::to_string(kMaxFklK) + "]");
  if (l == 0) throw std::invalid_argument("f_kl: l must be positive");
  if (y.size() != k - 1) throw std::invalid_argument("f_kl: expected k-1 arguments");
  for (const Rational& v : y)
    if (v.sign() < 0 || v >= Rational(1)) throw std::invalid_argument("f_kl: argument outside [0,1): " + v.str());
}

}  // namespace

Integer floor_sum(const Rational& t, std::uint64_t L) {
  Integer s = 0;
  for (std::uint64_t i = 1; i < L; ++i)
    s += (t + Rational(Integer(static_cast<unsigned long>(i)), Integer(static_cast<unsigned long>(L)))).floor();
  return s;
}

FklEvaluator::FklEvaluator(std::vector<Rational> y) : y_(std::move(y)) {}

BarValues FklEvaluator::bars(unsigned k, std::uint64_t l) {
  BarValues out;
  const std::uint64_t kfl = factorial_u64(k) * l;
  for (unsigned j = 1; j < k; ++j) {
    const std::uint64_t L = kfl / factorial_u64(j);
    const Rational inner = Rational(factorial(j - 1)) * y_[j - 1] - f(j, L);
    out.a_bar.push_back((inner * Rational(L)).frac());
    out.b_bar.push_back(floor_sum(inner.frac(), L));
  }
  return out;
}

const Rational& FklEvaluator::f(unsigned k, std::uint64_t l) {
  if (k < 1 || k > y_.size() + 1) throw std::invalid_argument("FklEvaluator: k out of range for this point");
  const auto key = std::make_pair(k, l);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  Rational value(0);
  if (k > 1) {
    const BarValues bars = this->bars(k, l);
    auto [pit, fresh] = phat_.try_emplace(k);
    if (fresh) pit->second = p_hat(k);
    Assignment pos;
    pos.a = bars.a_bar;
    Assignment neg;
    for (const Integer& b : bars.b_bar) neg.a.push_back(-Rational(b));
    const Rational kl(Integer(Integer(static_cast<unsigned long>(k)) * static_cast<unsigned long>(l)));
    value = ((pit->second.evaluate(pos) - pit->second.evaluate(neg)) / kl).frac();
  }
  return memo_.emplace(key, std::move(value)).first->second;
}

Rational f_kl(unsigned k, std::uint64_t l, std::span<const Rational> y) {
  check_point(k, l, y);
  FklEvaluator ev(std::vector<Rational>(y.begin(), y.end()));
  return ev.f(k, l);
}

BarValues bar_values(unsigned k, std::uint64_t l, std::span<const Rational> y) {
  check_point(k, l, y);
  FklEvaluator ev(std::vector<Rational>(y.begin(), y.end()));
  return ev.bars(k, l);
}

Rational f23_closed_form(const Rational& y) {
  const Rational alpha1 = (Rational(6) * y).frac();
  Integer beta1 = 0;
  for (int i = 1; i <= 5; ++i) beta1 += (y + Rational(i, 6)).floor();
  const Rational b(beta1);
  return ((alpha1 * alpha1 - b * b) / Rational(6)).frac();
}

Rational f31_closed_form(const Rational& y, const Rational& z) {
  const Rational f23 = f23_closed_form(y);
  const Rational alpha1 = (Rational(6) * y).frac();
  const Rational alpha2 = (Rational(3) * z - Rational(3) * f23).frac();
  Integer beta1 = 0;
  for (int i = 1; i <= 5; ++i) beta1 += (y + Rational(i, 6)).floor();
  Integer beta2 = 0;
  const Rational shifted = (z - f23).frac();
  for (int i = 1; i <= 2; ++i) beta2 += (shifted + Rational(i, 3)).floor();
  const Rational b1(beta1);
  const Rational b2(beta2);
  const Rational num = Rational(3) * alpha1 * alpha2 + pow(alpha1, 3) - Rational(3) * b1 * b2 + pow(b1, 3);
  return (num / Rational(3)).frac();
}

std::vector<Rational> lemma1_arguments(const Rational& x, unsigned k, std::uint64_t l) {
  const Rational scale(Integer(factorial(k) * static_cast<unsigned long>(l)));
  std::vector<Rational> y;
  for (unsigned j = 1; j < k; ++j) y.push_back((pow(x, j) / scale).frac());
  return y;
}

Lemma1Sides lemma1_sides(const Rational& x, unsigned k, std::uint64_t l) {
  if (k < 1 || l == 0) throw std::invalid_argument("lemma1_sides: k and l must be positive");
  const Rational L(Integer(static_cast<unsigned long>(l)));
  const Rational kl(Integer(Integer(static_cast<unsigned long>(k)) * static_cast<unsigned long>(l)));
  const auto y = lemma1_arguments(x, k, l);
  Lemma1Sides s;
  s.lhs = (power_chain(x, k) / L).frac();
  s.rhs = (pow(x, k) / kl - f_kl(k, l, y)).frac();
  return s;
}

double kxy_density(unsigned k, double t) {
  if (k == 0) throw std::invalid_argument("kxy_density: k must be positive");
  const double kk = k;
  double sum = 0.0;
  for (unsigned j = 0; j < k; ++j) sum += std::log(kk / (j + t));
  return sum / kk;
}

double kxy_cdf(unsigned k, double t) {
  if (k == 0) throw std::invalid_argument("kxy_cdf: k must be positive");
  const auto xlogx = [](double v) { return v > 0.0 ? v * std::log(v) : 0.0; };
  const double kk = k;
  double sum = 0.0;
  for (unsigned j = 0; j < k; ++j) {
    // integral of ln k - ln(j + s) over [0, t]
    sum += t * std::log(kk) - (xlogx(j + t) - (j + t)) + (xlogx(j) - j);
  }
  return sum / kk;
}

namespace {

constexpr std::size_t kWitnessShards = 64;

struct PhatTerm {
  double coeff;
  std::vector<std::pair<unsigned, unsigned>> powers;  // (index - 1, exponent)
};

struct ShardSum {
  double re = 0.0;
  double im = 0.0;
};

}  // namespace

FourierWitness fourier_witness(unsigned k, long m, std::size_t samples, std::uint64_t seed, WitnessTarget target,
                               unsigned jobs) {
  if (k < 3) throw std::invalid_argument("fourier_witness: k must be at least 3");
  if (samples < kMinWitnessSamples)
    throw std::invalid_argument("fourier_witness: need at least " + std::to_string(kMinWitnessSamples) + " samples");

  std::vector<PhatTerm> phat;
  if (target == WitnessTarget::p_hat) {
    const PartitionPolynomial poly = p_hat(k);
    for (const auto& [mono, c] : poly.terms()) {
      PhatTerm t{c.get_d() * static_cast<double>(m), {}};
      for (const auto& [v, e] : mono.factors()) t.powers.emplace_back(v.index - 1, e);
      phat.push_back(std::move(t));
    }
  }

  const auto draw = [&](Rng& rng, std::vector<double>& y) -> double {
    for (double& v : y) v = uniform01(rng);
    switch (target) {
      case WitnessTarget::g_k: return g_k<double>(k, m, y);
      case WitnessTarget::p_hat: {
        double s = 0.0;
        for (const auto& t : phat) {
          double p = t.coeff;
          for (const auto& [i, e] : t.powers) p *= std::pow(y[i], static_cast<int>(e));
          s += p;
        }
        return s;
      }
      case WitnessTarget::uniform_control: return y[0];
    }
    return 0.0;
  };

  std::vector<ShardSum> shards(kWitnessShards);
  const auto run_shard = [&](std::size_t s) {
    Rng rng(shard_seed(seed, s));
    std::vector<double> y(k - 1);
    const std::size_t begin = samples * s / kWitnessShards;
    const std::size_t end = samples * (s + 1) / kWitnessShards;
    ShardSum acc;
    for (std::size_t i = begin; i < end; ++i) {
      const double v = draw(rng, y);
      const double angle = 2.0 * std::numbers::pi * (v - std::floor(v));
      acc.re += std::cos(angle);
      acc.im += std::sin(angle);
    }
    shards[s] = acc;
  };

  const unsigned workers = std::max(1U, std::min<unsigned>(jobs, kWitnessShards));
  if (workers == 1) {
    for (std::size_t s = 0; s < kWitnessShards; ++s) run_shard(s);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t s = w; s < kWitnessShards; s += workers) run_shard(s);
      });
    for (auto& t : pool) t.join();
  }

  FourierWitness out;
  out.k = k;
  out.m = m;
  out.target = target;
  out.samples = samples;
  out.seed = seed;
  for (const ShardSum& s : shards) {
    out.re += s.re;
    out.im += s.im;
  }
  const double n = static_cast<double>(samples);
  out.re /= n;
  out.im /= n;
  out.estimate = std::hypot(out.re, out.im);
  // |exp(i theta)| = 1, so the per-sample variance is 1 - |mean|^2.
  const double variance = std::max(0.0, 1.0 - out.estimate * out.estimate) * n / (n - 1.0);
  out.radius = 3.0 * std::sqrt(variance / n);
  return out;
}

}  // namespace floorpoly
