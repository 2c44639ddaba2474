#include "floorpoly/adaptive_real.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>

namespace floorpoly {
namespace detail {

// [lo * 2^exp, hi * 2^exp]
struct Dyadic {
  Integer lo;
  Integer hi;
  long exp = 0;
};

namespace {

Integer shl(const Integer& v, unsigned long s) {
  Integer r;
  mpz_mul_2exp(r.get_mpz_t(), v.get_mpz_t(), s);
  return r;
}

Integer floor_shr(const Integer& v, unsigned long s) {
  Integer r;
  mpz_fdiv_q_2exp(r.get_mpz_t(), v.get_mpz_t(), s);
  return r;
}

Integer ceil_shr(const Integer& v, unsigned long s) {
  Integer r;
  mpz_cdiv_q_2exp(r.get_mpz_t(), v.get_mpz_t(), s);
  return r;
}

// Outward rounding onto the grid 2^target. Exact when the grid is finer.
Dyadic round_out(const Dyadic& d, long target) {
  if (d.exp >= target) {
    const auto s = static_cast<unsigned long>(d.exp - target);
    return {shl(d.lo, s), shl(d.hi, s), target};
  }
  const auto s = static_cast<unsigned long>(target - d.exp);
  return {floor_shr(d.lo, s), ceil_shr(d.hi, s), target};
}

Dyadic align_exact(const Dyadic& d, long target) {
  const auto s = static_cast<unsigned long>(d.exp - target);
  return {shl(d.lo, s), shl(d.hi, s), target};
}

// Smallest e >= 0 with |v| <= 2^e for every v in the interval.
long magnitude_bits(const Dyadic& d) {
  const Integer a = abs(d.lo);
  const Integer b = abs(d.hi);
  const Integer& m = a > b ? a : b;
  if (m == 0) return 0;
  const long bits = static_cast<long>(mpz_sizeinbase(m.get_mpz_t(), 2));
  return std::max(0L, bits + d.exp);
}

Integer dyadic_floor(const Integer& v, long exp) {
  if (exp >= 0) return shl(v, static_cast<unsigned long>(exp));
  return floor_shr(v, static_cast<unsigned long>(-exp));
}

Rational to_rational(const Integer& v, long exp) {
  if (exp >= 0) return Rational(shl(v, static_cast<unsigned long>(exp)));
  return Rational(v, shl(Integer(1), static_cast<unsigned long>(-exp)));
}

// 2^w * atan(1/x), with the absolute error (in units of 2^-w) it carries.
std::pair<Integer, Integer> atan_inv(unsigned long x, unsigned long w) {
  const Integer x2 = Integer(x) * x;
  Integer term = shl(Integer(1), w) / x;
  Integer sum = 0;
  unsigned long k = 0;
  while (term != 0) {
    const Integer t = term / (2 * k + 1);
    if (k % 2 == 0)
      sum += t;
    else
      sum -= t;
    term /= x2;
    ++k;
  }
  // Each summand is off by < 2 ulps; the omitted tail is < 1 ulp.
  return {sum, Integer(2 * k + 1)};
}

Dyadic pi_enclosure(long bits) {
  const auto w = static_cast<unsigned long>(bits + 48);
  auto [a5, e5] = atan_inv(5, w);
  auto [a239, e239] = atan_inv(239, w);
  const Integer p = 16 * a5 - 4 * a239;
  const Integer err = 16 * e5 + 4 * e239 + 1;
  return {p - err, p + err, -static_cast<long>(w)};
}

}  // namespace

struct RealNode {
  using Kind = AdaptiveReal::Kind;

  Kind kind = Kind::rational;
  Rational value;  // rational leaf, or nth_root base
  unsigned degree = 1;
  std::shared_ptr<const RealNode> left;
  std::shared_ptr<const RealNode> right;

  mutable std::mutex mutex;
  mutable std::optional<Dyadic> cache;
  mutable long cache_bits = -1;

  static AdaptiveReal wrap(std::shared_ptr<const RealNode> n) { return AdaptiveReal(std::move(n)); }
  static const std::shared_ptr<const RealNode>& node_of(const AdaptiveReal& r) { return r.node_; }

  Dyadic refine(long bits) const {
    std::lock_guard lock(mutex);
    if (cache && cache_bits >= bits) return *cache;
    Dyadic fresh = compute(bits);
    if (cache) {
      // Intersect so that widths never grow as precision increases.
      const long e = std::min(fresh.exp, cache->exp);
      Dyadic a = align_exact(fresh, e);
      Dyadic b = align_exact(*cache, e);
      fresh = {a.lo > b.lo ? a.lo : b.lo, a.hi < b.hi ? a.hi : b.hi, e};
    }
    cache = fresh;
    cache_bits = bits;
    return fresh;
  }

  Dyadic compute(long bits) const {
    const auto ubits = static_cast<unsigned long>(bits);
    switch (kind) {
      case Kind::rational: {
        Integer lo;
        Integer hi;
        const Integer scaled = shl(value.numerator(), ubits);
        const Integer den = value.denominator();
        mpz_fdiv_q(lo.get_mpz_t(), scaled.get_mpz_t(), den.get_mpz_t());
        mpz_cdiv_q(hi.get_mpz_t(), scaled.get_mpz_t(), den.get_mpz_t());
        return {lo, hi, -bits};
      }
      case Kind::nth_root: {
        if (value.sign() == 0) return {0, 0, -bits};
        const Integer scaled = shl(value.numerator(), ubits * degree);
        const Integer den = value.denominator();
        Integer m;
        Integer rem;
        mpz_fdiv_qr(m.get_mpz_t(), rem.get_mpz_t(), scaled.get_mpz_t(), den.get_mpz_t());
        Integer r;
        const int exact = mpz_root(r.get_mpz_t(), m.get_mpz_t(), degree);
        if (exact != 0 && rem == 0) return {r, r, -bits};
        return {r, r + 1, -bits};
      }
      case Kind::pi: return pi_enclosure(bits);
      case Kind::negation: {
        const Dyadic c = left->refine(bits);
        return {-c.hi, -c.lo, c.exp};
      }
      case Kind::sum: {
        const Dyadic a = left->refine(bits + 2);
        const Dyadic b = right->refine(bits + 2);
        const long e = std::min(a.exp, b.exp);
        const Dyadic aa = align_exact(a, e);
        const Dyadic bb = align_exact(b, e);
        return round_out({aa.lo + bb.lo, aa.hi + bb.hi, e}, -(bits + 2));
      }
      case Kind::product: {
        const long ea = magnitude_bits(left->refine(0));
        const long eb = magnitude_bits(right->refine(0));
        const Dyadic a = left->refine(bits + 3 + eb);
        const Dyadic b = right->refine(bits + 3 + ea);
        const Integer c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
        const Integer lo = *std::min_element(std::begin(c), std::end(c));
        const Integer hi = *std::max_element(std::begin(c), std::end(c));
        return round_out({lo, hi, a.exp + b.exp}, -(bits + 2));
      }
    }
    throw std::logic_error("unknown real node kind");
  }

  std::string describe() const {
    std::ostringstream os;
    switch (kind) {
      case Kind::rational: os << value; break;
      case Kind::nth_root: os << "root(" << value << "," << degree << ")"; break;
      case Kind::pi: os << "pi"; break;
      case Kind::negation: os << "-(" << left->describe() << ")"; break;
      case Kind::sum: os << "(" << left->describe() << " + " << right->describe() << ")"; break;
      case Kind::product: os << "(" << left->describe() << " * " << right->describe() << ")"; break;
    }
    return os.str();
  }
};

}  // namespace detail

using detail::RealNode;

namespace {

std::shared_ptr<const RealNode> make_rational(const Rational& q) {
  auto n = std::make_shared<RealNode>();
  n->kind = AdaptiveReal::Kind::rational;
  n->value = q;
  return n;
}

std::shared_ptr<const RealNode> make_binary(AdaptiveReal::Kind kind, std::shared_ptr<const RealNode> a,
                                            std::shared_ptr<const RealNode> b) {
  auto n = std::make_shared<RealNode>();
  n->kind = kind;
  n->left = std::move(a);
  n->right = std::move(b);
  return n;
}

}  // namespace

AdaptiveReal::AdaptiveReal() : AdaptiveReal(Rational(0)) {}

AdaptiveReal::AdaptiveReal(const Rational& q) : node_(make_rational(q)) {}

AdaptiveReal AdaptiveReal::nth_root(const Rational& base, unsigned degree) {
  if (degree == 0) throw std::invalid_argument("nth_root: degree must be positive");
  if (base.sign() < 0) throw std::invalid_argument("nth_root: base must be non-negative");
  if (degree == 1) return AdaptiveReal(base);
  auto n = std::make_shared<RealNode>();
  n->kind = Kind::nth_root;
  n->value = base;
  n->degree = degree;
  return AdaptiveReal(std::shared_ptr<const RealNode>(std::move(n)));
}

AdaptiveReal AdaptiveReal::pi() {
  static const std::shared_ptr<const RealNode> node = [] {
    auto n = std::make_shared<RealNode>();
    n->kind = Kind::pi;
    return std::shared_ptr<const RealNode>(std::move(n));
  }();
  return AdaptiveReal(node);
}

AdaptiveReal::Kind AdaptiveReal::kind() const { return node_->kind; }

const Rational* AdaptiveReal::as_rational() const {
  return node_->kind == Kind::rational ? &node_->value : nullptr;
}

Interval AdaptiveReal::enclosure(long bits) const {
  if (bits < 0) throw std::invalid_argument("enclosure: bits must be non-negative");
  if (const Rational* q = as_rational()) return {*q, *q};
  const detail::Dyadic d = node_->refine(bits);
  return {detail::to_rational(d.lo, d.exp), detail::to_rational(d.hi, d.exp)};
}

long AdaptiveReal::cached_bits() const {
  std::lock_guard lock(node_->mutex);
  return node_->cache_bits;
}

AdaptiveReal operator+(const AdaptiveReal& a, const AdaptiveReal& b) {
  const Rational* qa = a.as_rational();
  const Rational* qb = b.as_rational();
  if (qa && qb) return AdaptiveReal(*qa + *qb);
  if (qa && qa->sign() == 0) return b;
  if (qb && qb->sign() == 0) return a;
  return RealNode::wrap(make_binary(AdaptiveReal::Kind::sum, a.node_, b.node_));
}

AdaptiveReal operator*(const AdaptiveReal& a, const AdaptiveReal& b) {
  const Rational* qa = a.as_rational();
  const Rational* qb = b.as_rational();
  if (qa && qb) return AdaptiveReal(*qa * *qb);
  if ((qa && qa->sign() == 0) || (qb && qb->sign() == 0)) return AdaptiveReal(Rational(0));
  if (qa && *qa == Rational(1)) return b;
  if (qb && *qb == Rational(1)) return a;
  return RealNode::wrap(make_binary(AdaptiveReal::Kind::product, a.node_, b.node_));
}

AdaptiveReal operator-(const AdaptiveReal& a) {
  if (const Rational* q = a.as_rational()) return AdaptiveReal(-*q);
  return RealNode::wrap(make_binary(AdaptiveReal::Kind::negation, a.node_, nullptr));
}

std::string AdaptiveReal::describe() const { return node_->describe(); }

AdaptiveReal pow(const AdaptiveReal& base, unsigned exponent) {
  AdaptiveReal result(Rational(1));
  AdaptiveReal square = base;
  while (exponent != 0) {
    if (exponent & 1U) result = result * square;
    exponent >>= 1U;
    if (exponent != 0) square = square * square;
  }
  return result;
}

FloorResult FloorResult::resolved(Integer v, Interval enclosure, long bits) {
  FloorResult r;
  r.value_ = std::move(v);
  r.enclosure_ = std::move(enclosure);
  r.bits_ = bits;
  return r;
}

FloorResult FloorResult::unresolvable(Interval enclosure, long bits) {
  FloorResult r;
  r.enclosure_ = std::move(enclosure);
  r.bits_ = bits;
  return r;
}

const Integer& FloorResult::value() const {
  if (!value_) throw std::logic_error("FloorResult::value on an unresolvable floor");
  return *value_;
}

FloorResult real_floor(const AdaptiveReal& x, long precision_cap) {
  if (precision_cap <= 0) throw std::invalid_argument("real_floor: precision cap must be positive");
  if (const Rational* q = x.as_rational()) return FloorResult::resolved(q->floor(), {*q, *q}, 0);
  const auto& node = RealNode::node_of(x);
  long bits = std::min(kInitialFloorBits, precision_cap);
  for (;;) {
    const detail::Dyadic d = node->refine(bits);
    Integer lo = detail::dyadic_floor(d.lo, d.exp);
    const Integer hi = detail::dyadic_floor(d.hi, d.exp);
    Interval enc{detail::to_rational(d.lo, d.exp), detail::to_rational(d.hi, d.exp)};
    if (lo == hi) return FloorResult::resolved(std::move(lo), std::move(enc), bits);
    if (bits >= precision_cap) return FloorResult::unresolvable(std::move(enc), bits);
    bits = std::min(bits * 2, precision_cap);
  }
}

Integer certified_floor(const AdaptiveReal& x, long precision_cap) {
  FloorResult r = real_floor(x, precision_cap);
  if (!r) {
    throw UnresolvableFloor("floor of " + x.describe() + " unresolved at " + std::to_string(r.bits()) +
                                " bits",
                            r.enclosure(), r.bits());
  }
  return r.value();
}

double certified_frac_double(const AdaptiveReal& x, long precision_cap, long bits) {
  const Integer fl = certified_floor(x, precision_cap);
  if (const Rational* q = x.as_rational()) return q->frac().to_double();
  const Interval enc = x.enclosure(std::max(bits, 0L));
  // lo - fl lies in [0, 1); the conversion truncates so it stays below 1.
  return (enc.lo - Rational(fl)).to_double();
}

}  // namespace floorpoly
