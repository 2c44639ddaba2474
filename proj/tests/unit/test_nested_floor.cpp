#include "floorpoly/nested_floor.hpp"
#include "floorpoly/random.hpp"

#include "../support/oracles.hpp"

#include <gtest/gtest.h>

using namespace floorpoly;

namespace {

Rational q(long p, long d = 1) { return Rational(Integer(p), Integer(d)); }

}  // namespace

TEST(EvalChain, EmptyChainIsOne) {
  const std::vector<Rational> xs{q(5, 2), q(7, 3)};
  for (long a = -3; a < 5; ++a) EXPECT_EQ(eval_chain(std::span<const Rational>(xs), a, a), Rational(1));
}

TEST(EvalChain, Examples) {
  const std::vector<Rational> xs(4, q(5, 2));
  EXPECT_EQ(eval_chain(std::span<const Rational>(xs), 1, 4), q(25, 2));
  const std::vector<Rational> half(3, q(1, 2));
  EXPECT_EQ(eval_chain(std::span<const Rational>(half), 0, 2), Rational(0));
}

TEST(EvalChain, CyclicIndexing) {
  const std::vector<Rational> xs{q(3, 2), q(5, 2), q(7, 2)};
  // X^{2:5} = x2 fl(x0 fl(x1)) = 7/2 * fl(3/2 * 2) = 21/2
  EXPECT_EQ(eval_chain(std::span<const Rational>(xs), 2, 5), q(21, 2));
  EXPECT_EQ(eval_chain(std::span<const Rational>(xs), 5, 8), q(21, 2));
  EXPECT_EQ(eval_chain(std::span<const Rational>(xs), -1, 2), q(21, 2));
}

TEST(EvalChain, RejectsReversedBounds) {
  const std::vector<Rational> xs{q(1)};
  EXPECT_THROW((void)eval_chain(std::span<const Rational>(xs), 2, 1), std::invalid_argument);
  const std::vector<Rational> none;
  EXPECT_THROW((void)eval_chain(std::span<const Rational>(none), 0, 1), std::invalid_argument);
}

TEST(EvalChain, MatchesRecursiveOracle) {
  Rng rng(21);
  for (int t = 0; t < 1000; ++t) {
    const auto n = static_cast<std::size_t>(uniform_int(rng, 1, 6));
    std::vector<Rational> xs;
    for (std::size_t i = 0; i < n; ++i) xs.push_back(random_rational(rng, 10000, 100, true));
    const long a = static_cast<long>(uniform_int(rng, 0, 10)) - 5;
    const long b = a + static_cast<long>(uniform_int(rng, 0, 9));
    EXPECT_EQ(eval_chain(std::span<const Rational>(xs), a, b), oracle::chain(xs, a, b));
  }
}

TEST(PowerChain, Examples) {
  EXPECT_EQ(power_chain(q(5, 2), 3), q(25, 2));
  EXPECT_EQ(power_chain(q(5, 2), 0), Rational(1));
  EXPECT_EQ(power_chain(q(3), 4), q(81));
  EXPECT_EQ(power_chain(q(-3, 2), 2), q(3));  // -3/2 * fl(-3/2) = -3/2 * -2
}

TEST(PowerChain, ConstantChainEqualsPowerChain) {
  Rng rng(22);
  for (int t = 0; t < 1000; ++t) {
    const Rational x = random_rational(rng, 100000, 1000, true);
    const auto k = static_cast<unsigned>(uniform_int(rng, 0, 8));
    const std::vector<Rational> xs(std::max(1U, k), x);
    EXPECT_EQ(eval_chain(std::span<const Rational>(xs), 0, k), power_chain(x, k));
    EXPECT_EQ(power_chain(x, k), oracle::power_chain(x, k));
  }
}

TEST(PowerChain, ArbitraryBracket) {
  // with the bracket v -> v the chain is the ordinary power
  const auto id = [](const Rational& v) { return v; };
  EXPECT_EQ(power_chain(q(5, 2), 4, id), pow(q(5, 2), 4));
  const auto zero = [](const Rational&) { return Rational(0); };
  EXPECT_EQ(power_chain(q(5, 2), 1, zero), q(5, 2));
  EXPECT_EQ(power_chain(q(5, 2), 2, zero), Rational(0));
}

TEST(PowerChain, CertifiedMatchesMpfr) {
  // (sqrt2 * 1000)^{:3} = x fl(x fl(x))
  const AdaptiveReal x = AdaptiveReal::nth_root(q(2), 2) * AdaptiveReal(q(1000));
  const Integer f = certified_floor(power_chain(x, 3));
  // x = 1414.2135..., fl(x) = 1414 and fl(1414 x) = 1999697
  const oracle::Mp ref = oracle::Mp::root(2, 2).times(1000);
  const double inner = std::floor(ref.times(1414).to_double());
  EXPECT_EQ(inner, 1999697.0);
  const oracle::Mp outer = oracle::Mp::root(2, 2).times(1000).times(1999697);
  EXPECT_EQ(f.get_d(), std::floor(outer.to_double()));
}

TEST(ABSeq, Examples) {
  const ABSeq s = ab_seq(q(5, 2), 3);
  EXPECT_EQ(s.a, (std::vector<Rational>{q(1, 2), q(0), q(1, 2)}));
  EXPECT_EQ(s.b, (std::vector<Integer>{2, 5, 12}));
  EXPECT_EQ(s.a[1] + Rational(s.b[1]), q(5, 2) * Rational(s.b[0]));
  const ABSeq i = ab_seq(q(3), 5);
  for (unsigned k = 1; k <= 5; ++k) {
    EXPECT_EQ(i.a[k - 1], Rational(0));
    EXPECT_EQ(Rational(i.b[k - 1]), pow(q(3), k));
  }
  EXPECT_THROW((void)ab_seq(q(1), 0), std::invalid_argument);
}

TEST(ABSeq, RecurrenceAndDirectEvaluation) {
  Rng rng(23);
  for (int t = 0; t < 1000; ++t) {
    const Rational x = random_rational(rng, 1000000, 1000, true);
    const ABSeq s = ab_seq(x, 30);
    for (unsigned k = 1; k <= 30; ++k) {
      EXPECT_GE(s.a[k - 1], Rational(0));
      EXPECT_LT(s.a[k - 1], Rational(1));
      ASSERT_EQ(s.a[k - 1] + Rational(s.b[k - 1]), x * Rational(s.b_at(k - 1)));
    }
    for (unsigned k = 1; k <= 6; ++k) {
      const Rational direct = oracle::power_chain(x, k);
      EXPECT_EQ(s.a[k - 1], oracle::frac_of(direct));
      EXPECT_EQ(Rational(s.b[k - 1]), oracle::floor_of(direct));
    }
  }
}

TEST(ABSeq, CertifiedPiSequence) {
  const RealABSeq s = ab_seq(AdaptiveReal::pi(), 6);
  // pi^{:k}: 3, 3pi = 9.42 -> 9, 9pi = 28.27 -> 28, 28pi = 87.96 -> 87, ...
  EXPECT_EQ(s.b[0], 3);
  EXPECT_EQ(s.b[1], 9);
  EXPECT_EQ(s.b[2], 28);
  EXPECT_EQ(s.b[3], 87);
  EXPECT_EQ(s.b[4], 273);
  EXPECT_EQ(s.b[5], 857);
}
