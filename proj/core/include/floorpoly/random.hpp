#pragma once

// Deterministic random sources shared by the Monte Carlo estimators, the
// verification suites and the tests. std::mt19937_64 has a fully specified
// output sequence; the conversions below avoid the implementation-defined
// standard distributions so that seeded runs are bit-identical everywhere.

#include "floorpoly/rational.hpp"

#include <cstdint>
#include <random>

namespace floorpoly {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed for shard `index` of a run with master seed `master`.
inline std::uint64_t shard_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(master ^ splitmix64(index + 1));
}

using Rng = std::mt19937_64;

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Uniform integer in [lo, hi] by rejection.
inline std::uint64_t uniform_int(Rng& rng, std::uint64_t lo, std::uint64_t hi) {
  const std::uint64_t span = hi - lo + 1;
  if (span == 0) return rng();
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t v;
  do v = rng();
  while (v >= limit);
  return lo + v % span;
}

/// p/q with 0 <= p <= max_num, 1 <= q <= max_den, optionally signed.
inline Rational random_rational(Rng& rng, std::uint64_t max_num, std::uint64_t max_den, bool allow_negative = false) {
  const auto p = uniform_int(rng, 0, max_num);
  const auto q = uniform_int(rng, 1, max_den);
  Rational r(Integer(static_cast<unsigned long>(p)), Integer(static_cast<unsigned long>(q)));
  if (allow_negative && (rng() & 1U)) r = -r;
  return r;
}

/// Rational in [0, 1) with denominator at most max_den.
inline Rational random_unit_rational(Rng& rng, std::uint64_t max_den) {
  const auto q = uniform_int(rng, 1, max_den);
  const auto p = uniform_int(rng, 0, q - 1);
  return Rational(Integer(static_cast<unsigned long>(p)), Integer(static_cast<unsigned long>(q)));
}

}  // namespace floorpoly
