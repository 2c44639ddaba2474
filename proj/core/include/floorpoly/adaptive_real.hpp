#pragma once

// Real numbers as refinable interval oracles.
//
// An AdaptiveReal is an immutable expression DAG over a few leaf kinds
// (exact rationals, d-th roots of non-negative rationals, pi) closed under
// +, * and negation. Every node can produce an enclosure [lo, hi] with
// hi - lo <= 2^-bits for any requested bits, and caches the tightest
// enclosure seen so far. The true value is always inside the enclosure.
//
// Nodes are shared between copies and may be refined from several threads;
// each node guards its cache with its own mutex.

#include "floorpoly/rational.hpp"

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

namespace floorpoly {

struct Interval {
  Rational lo;
  Rational hi;

  Rational width() const { return hi - lo; }
  bool contains(const Rational& v) const { return lo <= v && v <= hi; }
};

namespace detail {
struct RealNode;
}

class AdaptiveReal {
 public:
  enum class Kind { rational, nth_root, pi, sum, product, negation };

  /// The rational 0.
  AdaptiveReal();
  AdaptiveReal(const Rational& q);  // NOLINT(google-explicit-constructor)
  template <std::integral T>
  AdaptiveReal(T v)  // NOLINT(google-explicit-constructor)
      : AdaptiveReal(Rational(v)) {}

  /// base^(1/degree); base >= 0, degree >= 1.
  static AdaptiveReal nth_root(const Rational& base, unsigned degree);
  static AdaptiveReal pi();

  Kind kind() const;
  /// Non-null only for rational descriptors.
  const Rational* as_rational() const;
  bool is_rational() const { return as_rational() != nullptr; }

  /// Enclosure of width <= 2^-bits (exact [q, q] for rational descriptors).
  /// bits must be non-negative.
  Interval enclosure(long bits) const;
  /// Highest precision level for which a cached enclosure exists.
  long cached_bits() const;

  friend AdaptiveReal operator+(const AdaptiveReal& a, const AdaptiveReal& b);
  friend AdaptiveReal operator*(const AdaptiveReal& a, const AdaptiveReal& b);
  friend AdaptiveReal operator-(const AdaptiveReal& a);
  friend AdaptiveReal operator-(const AdaptiveReal& a, const AdaptiveReal& b) { return a + (-b); }

  AdaptiveReal& operator+=(const AdaptiveReal& o) { return *this = *this + o; }
  AdaptiveReal& operator*=(const AdaptiveReal& o) { return *this = *this * o; }
  AdaptiveReal& operator-=(const AdaptiveReal& o) { return *this = *this - o; }

  /// Short human-readable description, e.g. "(root(2,3) * 5)".
  std::string describe() const;

 private:
  explicit AdaptiveReal(std::shared_ptr<const detail::RealNode> node) : node_(std::move(node)) {}
  friend struct detail::RealNode;
  std::shared_ptr<const detail::RealNode> node_;
};

AdaptiveReal pow(const AdaptiveReal& base, unsigned exponent);

/// Refinement starts at this many bits and doubles per step.
inline constexpr long kInitialFloorBits = 64;
inline constexpr long kDefaultPrecisionCap = 4096;

/// Either a certified floor or the enclosure that still straddled an
/// integer when the precision cap was reached.
class FloorResult {
 public:
  static FloorResult resolved(Integer v, Interval enclosure, long bits);
  static FloorResult unresolvable(Interval enclosure, long bits);

  bool ok() const { return value_.has_value(); }
  explicit operator bool() const { return ok(); }
  /// Throws std::logic_error when unresolvable.
  const Integer& value() const;
  const Interval& enclosure() const { return enclosure_; }
  long bits() const { return bits_; }

 private:
  std::optional<Integer> value_;
  Interval enclosure_;
  long bits_ = 0;
};

/// Certified floor. Rational descriptors are floored exactly; otherwise the
/// enclosure is refined from kInitialFloorBits, doubling up to precision_cap.
FloorResult real_floor(const AdaptiveReal& x, long precision_cap = kDefaultPrecisionCap);

class UnresolvableFloor : public std::runtime_error {
 public:
  UnresolvableFloor(const std::string& what, Interval enclosure, long bits)
      : std::runtime_error(what), enclosure_(std::move(enclosure)), bits_(bits) {}
  const Interval& enclosure() const { return enclosure_; }
  long bits() const { return bits_; }

 private:
  Interval enclosure_;
  long bits_;
};

/// real_floor that throws UnresolvableFloor instead of returning a marker.
Integer certified_floor(const AdaptiveReal& x, long precision_cap = kDefaultPrecisionCap);

/// {x} as a double, certified: the floor is resolved first and the result is
/// read from an enclosure of width <= 2^-bits. Throws UnresolvableFloor.
double certified_frac_double(const AdaptiveReal& x, long precision_cap = kDefaultPrecisionCap,
                             long bits = 64);

}  // namespace floorpoly
