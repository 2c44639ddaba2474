#pragma once

// Nested floor chains.
//
//   X^{a:b}  = 1                          if a == b
//            = x_a * [X^{(a+1):b}]        otherwise, indices taken mod n
//   x^{:k}   = 1 (k == 0),  x * [x^{:(k-1)}]
//   a_k = {x^{:k}},  b_k = [x^{:k}]
//
// [.] is the floor by default but every routine also accepts an arbitrary
// bracket map, with {v} read as v - bracket(v). The innermost factor of a
// chain of length one is the bare entry (X^{a:a+1} = x_a), so a bracket that
// does not fix 1 still composes correctly with the product identity.

#include "floorpoly/adaptive_real.hpp"
#include "floorpoly/rational.hpp"

#include <span>
#include <stdexcept>
#include <vector>

namespace floorpoly {

struct ExactFloor {
  Rational operator()(const Rational& v) const { return Rational(v.floor()); }
};

struct CertifiedFloor {
  long precision_cap = kDefaultPrecisionCap;
  AdaptiveReal operator()(const AdaptiveReal& v) const {
    return AdaptiveReal(Rational(certified_floor(v, precision_cap)));
  }
};

namespace detail {
inline std::size_t cyclic(long i, std::size_t n) {
  const long m = static_cast<long>(n);
  return static_cast<std::size_t>(((i % m) + m) % m);
}
}  // namespace detail

/// X^{a:b}, evaluated innermost-first in O(b - a) steps.
template <class Num, class Bracket>
Num eval_chain(std::span<const Num> xs, long a, long b, const Bracket& bracket) {
  if (xs.empty()) throw std::invalid_argument("eval_chain: empty chain input");
  if (a > b) throw std::invalid_argument("eval_chain: requires a <= b");
  if (a == b) return Num(1);
  Num v = xs[detail::cyclic(b - 1, xs.size())];
  for (long i = b - 2; i >= a; --i) v = xs[detail::cyclic(i, xs.size())] * bracket(v);
  return v;
}

inline Rational eval_chain(std::span<const Rational> xs, long a, long b) {
  return eval_chain(xs, a, b, ExactFloor{});
}

inline AdaptiveReal eval_chain(std::span<const AdaptiveReal> xs, long a, long b,
                               long precision_cap = kDefaultPrecisionCap) {
  return eval_chain(xs, a, b, CertifiedFloor{precision_cap});
}

/// x^{:k}
template <class Num, class Bracket>
Num power_chain(const Num& x, unsigned k, const Bracket& bracket) {
  if (k == 0) return Num(1);
  Num v = x;
  for (unsigned i = 1; i < k; ++i) v = x * bracket(v);
  return v;
}

inline Rational power_chain(const Rational& x, unsigned k) { return power_chain(x, k, ExactFloor{}); }

inline AdaptiveReal power_chain(const AdaptiveReal& x, unsigned k, long precision_cap = kDefaultPrecisionCap) {
  return power_chain(x, k, CertifiedFloor{precision_cap});
}

/// a[i] = a_{i+1}, b[i] = b_{i+1}; b_0 = 1 is implicit.
template <class Num>
struct BasicABSeq {
  std::vector<Num> a;
  std::vector<Integer> b;

  std::size_t size() const { return b.size(); }
  /// b_k with b_0 = 1.
  Integer b_at(std::size_t k) const { return k == 0 ? Integer(1) : b[k - 1]; }
};

using ABSeq = BasicABSeq<Rational>;
using RealABSeq = BasicABSeq<AdaptiveReal>;

/// Incremental a_k, b_k from x^{:k} = x * b_{k-1}.
inline ABSeq ab_seq(const Rational& x, unsigned K) {
  if (K == 0) throw std::invalid_argument("ab_seq: K must be positive");
  ABSeq s;
  s.a.reserve(K);
  s.b.reserve(K);
  Integer prev = 1;
  for (unsigned k = 1; k <= K; ++k) {
    const Rational chain = x * Rational(prev);
    Integer fl = chain.floor();
    s.a.push_back(chain - Rational(fl));
    s.b.push_back(fl);
    prev = std::move(fl);
  }
  return s;
}

/// Same recurrence with certified floors; throws UnresolvableFloor.
inline RealABSeq ab_seq(const AdaptiveReal& x, unsigned K, long precision_cap = kDefaultPrecisionCap) {
  if (K == 0) throw std::invalid_argument("ab_seq: K must be positive");
  RealABSeq s;
  Integer prev = 1;
  for (unsigned k = 1; k <= K; ++k) {
    const AdaptiveReal chain = x * AdaptiveReal(Rational(prev));
    Integer fl = certified_floor(chain, precision_cap);
    s.a.push_back(chain - AdaptiveReal(Rational(fl)));
    s.b.push_back(fl);
    prev = std::move(fl);
  }
  return s;
}

}  // namespace floorpoly
