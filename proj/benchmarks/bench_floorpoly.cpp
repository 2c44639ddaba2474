#include "floorpoly/equidist.hpp"
#include "floorpoly/f_construction.hpp"
#include "floorpoly/identity.hpp"
#include "floorpoly/partition_poly.hpp"
#include "floorpoly/random.hpp"

#include <benchmark/benchmark.h>

using namespace floorpoly;

namespace {

std::vector<Rational> random_vector(unsigned n) {
  Rng rng(1);
  std::vector<Rational> xs;
  for (unsigned i = 0; i < n; ++i) xs.push_back(random_rational(rng, 1000000, 1000000, true));
  return xs;
}

void BM_GenerateTerms(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(generate_terms(n));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(identity_term_count(n)));
}
BENCHMARK(BM_GenerateTerms)->DenseRange(4, 16, 4);

void BM_EvalIdentityExact(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  const auto terms = generate_terms(n);
  const auto xs = random_vector(n);
  for (auto _ : state) benchmark::DoNotOptimize(eval_identity(std::span<const Rational>(xs), terms));
}
BENCHMARK(BM_EvalIdentityExact)->DenseRange(2, 10, 2);

void BM_CancellationCertificate(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cancellation_certificate(n));
}
BENCHMARK(BM_CancellationCertificate)->DenseRange(3, 9, 2)->Unit(benchmark::kMillisecond);

void BM_MixedExpansion(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mixed_expansion(n));
}
BENCHMARK(BM_MixedExpansion)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_Lemma1(benchmark::State& state) {
  const auto k = static_cast<unsigned>(state.range(0));
  const Rational x(Integer(2718281), Integer(100000));
  for (auto _ : state) benchmark::DoNotOptimize(verify_lemma1(x, k, 2));
}
BENCHMARK(BM_Lemma1)->DenseRange(2, 5);

void BM_ChainScan(benchmark::State& state) {
  SequenceSpec spec;
  spec.variant = SequenceVariant::power_chain;
  spec.alphas = {AlphaSpec::pi()};
  spec.k = 3;
  spec.N = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(generate(spec));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ChainScan)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_StarDiscrepancy(benchmark::State& state) {
  Rng rng(2);
  std::vector<double> xs(static_cast<std::size_t>(state.range(0)));
  for (double& v : xs) v = uniform01(rng);
  for (auto _ : state) benchmark::DoNotOptimize(star_discrepancy(xs));
}
BENCHMARK(BM_StarDiscrepancy)->Arg(10000)->Arg(1000000);

void BM_FourierWitness(benchmark::State& state) {
  const auto k = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fourier_witness(k, 1, 100000, 1));
}
BENCHMARK(BM_FourierWitness)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
