#include "floorpoly/partition_poly.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace floorpoly {

unsigned Partition::weight() const {
  unsigned w = 0;
  for (std::size_t i = 0; i < multiplicity.size(); ++i) w += static_cast<unsigned>(i + 1) * multiplicity[i];
  return w;
}

unsigned Partition::parts() const {
  unsigned p = 0;
  for (unsigned k : multiplicity) p += k;
  return p;
}

std::vector<Partition> partitions(unsigned n) {
  if (n < 1 || n > kMaxPartitionN)
    throw std::out_of_range("partitions: n must be in [1, " + std::to_string(kMaxPartitionN) + "]");
  std::vector<Partition> out;
  std::vector<unsigned> mult(n, 0);
  // Parts are chosen in non-increasing order, so each partition appears once.
  std::function<void(unsigned, unsigned)> rec = [&](unsigned remaining, unsigned max_part) {
    if (remaining == 0) {
      out.push_back({mult});
      return;
    }
    for (unsigned p = std::min(remaining, max_part); p >= 1; --p) {
      ++mult[p - 1];
      rec(remaining - p, p);
      --mult[p - 1];
    }
  };
  rec(n, n);
  return out;
}

// ---------------------------------------------------------------------------

Monomial::Monomial(const Variable& v, unsigned exp) {
  if (exp != 0) factors_.emplace_back(v, exp);
}

unsigned Monomial::exponent(const Variable& v) const {
  for (const auto& [var, e] : factors_)
    if (var == v) return e;
  return 0;
}

unsigned Monomial::degree() const {
  unsigned d = 0;
  for (const auto& f : factors_) d += f.second;
  return d;
}

Monomial Monomial::part(Family f) const {
  Monomial m;
  for (const auto& fac : factors_)
    if (fac.first.family == f) m.factors_.push_back(fac);
  return m;
}

Monomial operator*(const Monomial& x, const Monomial& y) {
  Monomial r;
  auto i = x.factors_.begin();
  auto j = y.factors_.begin();
  while (i != x.factors_.end() || j != y.factors_.end()) {
    if (j == y.factors_.end() || (i != x.factors_.end() && i->first < j->first)) {
      r.factors_.push_back(*i++);
    } else if (i == x.factors_.end() || j->first < i->first) {
      r.factors_.push_back(*j++);
    } else {
      r.factors_.emplace_back(i->first, i->second + j->second);
      ++i;
      ++j;
    }
  }
  return r;
}

std::string Monomial::render() const {
  if (factors_.empty()) return "1";
  std::string s;
  for (const auto& [v, e] : factors_) {
    if (!s.empty()) s += "*";
    s += (v.family == Family::a ? "a" : "b") + std::to_string(v.index);
    if (e != 1) s += "^" + std::to_string(e);
  }
  return s;
}

Assignment Assignment::from(const ABSeq& s) {
  Assignment out;
  out.a = s.a;
  out.b.reserve(s.b.size());
  for (const Integer& v : s.b) out.b.emplace_back(v);
  return out;
}

const Rational& Assignment::value(const Variable& v) const {
  const auto& vals = v.family == Family::a ? a : b;
  if (v.index == 0 || v.index > vals.size()) throw std::out_of_range("Assignment: unassigned variable");
  return vals[v.index - 1];
}

// ---------------------------------------------------------------------------

PartitionPolynomial::PartitionPolynomial(const Integer& c) { add(Monomial(), c); }

PartitionPolynomial::PartitionPolynomial(const Variable& v) { add(Monomial(v), 1); }

PartitionPolynomial::PartitionPolynomial(const Monomial& m, const Integer& c) { add(m, c); }

void PartitionPolynomial::add(const Monomial& m, const Integer& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Integer PartitionPolynomial::coefficient(const Monomial& m) const {
  const auto it = terms_.find(m);
  return it == terms_.end() ? Integer(0) : it->second;
}

bool PartitionPolynomial::all_coefficients_nonnegative() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second >= 0; });
}

PartitionPolynomial PartitionPolynomial::negate_family(Family family) const {
  PartitionPolynomial r;
  for (const auto& [m, c] : terms_) {
    unsigned deg = 0;
    for (const auto& [v, e] : m.factors())
      if (v.family == family) deg += e;
    r.add(m, deg % 2 == 0 ? c : Integer(-c));
  }
  return r;
}

PartitionPolynomial PartitionPolynomial::rename_family(Family from, Family to) const {
  PartitionPolynomial r;
  for (const auto& [m, c] : terms_) {
    Monomial renamed;
    for (const auto& [v, e] : m.factors())
      renamed = renamed * Monomial(v.family == from ? Variable{to, v.index} : v, e);
    r.add(renamed, c);
  }
  return r;
}

Rational PartitionPolynomial::evaluate(const Assignment& values) const {
  Rational sum(0);
  for (const auto& [m, c] : terms_) {
    Rational t(c);
    for (const auto& [v, e] : m.factors()) t *= pow(values.value(v), e);
    sum += t;
  }
  return sum;
}

namespace {

// Exponent vector of one family, indices 1..max.
std::vector<unsigned> exponents(const Monomial& m, Family f, unsigned max_index) {
  std::vector<unsigned> e(max_index, 0);
  for (const auto& [v, x] : m.factors())
    if (v.family == f) e[v.index - 1] = x;
  return e;
}

unsigned max_index(const std::map<Monomial, Integer>& terms) {
  unsigned mx = 0;
  for (const auto& t : terms)
    for (const auto& f : t.first.factors()) mx = std::max(mx, f.first.index);
  return mx;
}

// Descending lexicographic order on (k_1, k_2, ...) within a family.
bool family_before(const Monomial& x, const Monomial& y, Family f, unsigned mx) {
  const auto ex = exponents(x, f, mx);
  const auto ey = exponents(y, f, mx);
  return ex > ey;
}

std::string format_term(const Integer& c, const Monomial& m, bool first) {
  const bool neg = c < 0;
  const Integer mag = abs(c);
  std::string body;
  if (m.is_constant())
    body = mag.get_str();
  else if (mag == 1)
    body = m.render();
  else
    body = mag.get_str() + "*" + m.render();
  if (first) return neg ? "-" + body : body;
  return (neg ? " - " : " + ") + body;
}

}  // namespace

std::string PartitionPolynomial::render() const {
  if (terms_.empty()) return "0";
  const unsigned mx = max_index(terms_);
  std::vector<std::pair<Monomial, Integer>> v(terms_.begin(), terms_.end());
  std::stable_sort(v.begin(), v.end(), [&](const auto& x, const auto& y) {
    const bool xb = !x.first.part(Family::b).is_constant();
    const bool yb = !y.first.part(Family::b).is_constant();
    if (xb != yb) return !xb;
    const auto xa = exponents(x.first, Family::a, mx);
    const auto ya = exponents(y.first, Family::a, mx);
    if (xa != ya) return xa > ya;
    return family_before(x.first, y.first, Family::b, mx);
  });
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += format_term(v[i].second, v[i].first, i == 0);
  return out;
}

std::string PartitionPolynomial::render_grouped_by_b() const {
  if (terms_.empty()) return "0";
  std::map<Monomial, PartitionPolynomial> groups;
  for (const auto& [m, c] : terms_) groups[m.part(Family::b)].add(m.part(Family::a), c);
  std::string out;
  bool first = true;
  for (const auto& [bpart, apoly] : groups) {
    if (bpart.is_constant()) {
      const std::string s = apoly.render();
      out += first ? s : (s[0] == '-' ? " - " + s.substr(1) : " + " + s);
    } else if (apoly.size() == 1) {
      const auto& [am, ac] = *apoly.terms().begin();
      out += format_term(ac, am * bpart, first);
    } else {
      out += (first ? "(" : " + (") + apoly.render() + ")*" + bpart.render();
    }
    first = false;
  }
  return out;
}

PartitionPolynomial& PartitionPolynomial::operator+=(const PartitionPolynomial& o) {
  for (const auto& [m, c] : o.terms_) add(m, c);
  return *this;
}

PartitionPolynomial& PartitionPolynomial::operator-=(const PartitionPolynomial& o) {
  for (const auto& [m, c] : o.terms_) add(m, -c);
  return *this;
}

PartitionPolynomial operator-(const PartitionPolynomial& x) {
  PartitionPolynomial r;
  for (const auto& [m, c] : x.terms_) r.add(m, -c);
  return r;
}

PartitionPolynomial operator*(const PartitionPolynomial& x, const PartitionPolynomial& y) {
  PartitionPolynomial r;
  for (const auto& [mx, cx] : x.terms_)
    for (const auto& [my, cy] : y.terms_) r.add(mx * my, cx * cy);
  return r;
}

// ---------------------------------------------------------------------------

PartitionPolynomial p_poly(unsigned n) {
  PartitionPolynomial p;
  for (const Partition& part : partitions(n)) {
    Integer num = factorial(part.parts() - 1) * n;
    Integer den = 1;
    Monomial m;
    for (std::size_t i = 0; i < part.multiplicity.size(); ++i) {
      const unsigned k = part.multiplicity[i];
      if (k == 0) continue;
      den *= factorial(k);
      m = m * Monomial(a_var(static_cast<unsigned>(i + 1)), k);
    }
    if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t()))
      throw std::logic_error("p_poly: non-integral coefficient for n = " + std::to_string(n));
    Integer c;
    mpz_divexact(c.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    p.add(m, c);
  }
  return p;
}

PartitionPolynomial p_hat(unsigned n) {
  if (n < 2) throw std::invalid_argument("p_hat: n must be at least 2");
  PartitionPolynomial p = p_poly(n);
  p.add(Monomial(a_var(n)), -Integer(n));
  return p;
}

PartitionPolynomial power_identity_poly(unsigned n) {
  const PartitionPolynomial pa = p_poly(n);
  return pa - pa.rename_family(Family::a, Family::b).negate_family(Family::b);
}

namespace {

using PolySeries = TruncatedSeries<PartitionPolynomial>;
using RatSeries = TruncatedSeries<Rational>;

// 1 / (1 - sum a_k z^k), symbolically.
PolySeries composition_series(unsigned order) {
  PolySeries denom(order);
  denom[0] = PartitionPolynomial(1);
  for (unsigned k = 1; k <= order; ++k) denom[k] = -PartitionPolynomial(a_var(k));
  return denom.inverse_unit();
}

}  // namespace

PartitionPolynomial mixed_expansion(unsigned n) {
  if (n < 1 || n > kMaxPartitionN)
    throw std::out_of_range("mixed_expansion: n must be in [1, " + std::to_string(kMaxPartitionN) + "]");
  PolySeries numer(n);
  numer[0] = PartitionPolynomial(1);
  for (unsigned k = 1; k <= n; ++k) numer[k] = PartitionPolynomial(b_var(k));
  return (numer * composition_series(n))[n];
}

bool power_identity_check(const Rational& x, unsigned n) {
  if (n < 1 || n > kMaxPartitionN) throw std::out_of_range("power_identity_check: n out of range");
  const Assignment v = Assignment::from(ab_seq(x, n));
  const PartitionPolynomial pa = p_poly(n);
  Assignment neg_b{v.b, {}};
  for (Rational& r : neg_b.a) r = -r;
  return pa.evaluate(v) - pa.evaluate(neg_b) == pow(x, n);
}

bool mixed_identity_check(const Rational& x, unsigned n) {
  const Assignment v = Assignment::from(ab_seq(x, n));
  return mixed_expansion(n).evaluate(v) == pow(x, n);
}

bool series_consistency_check(const Rational& x, unsigned N) {
  if (N < 1 || N > kMaxPartitionN) throw std::out_of_range("series_consistency_check: N out of range");

  // Symbolic: (sum k a_k z^k) / (1 - sum a_k z^k) has coefficients p_n(a),
  // and (sum k b_k z^k) / (1 + sum b_k z^k) has coefficients -p_n(-b).
  const PolySeries inv_a = composition_series(N);
  PolySeries deriv_a(N);
  PolySeries denom_b(N);
  PolySeries deriv_b(N);
  denom_b[0] = PartitionPolynomial(1);
  for (unsigned k = 1; k <= N; ++k) {
    deriv_a[k] = PartitionPolynomial(Monomial(a_var(k)), k);
    deriv_b[k] = PartitionPolynomial(Monomial(b_var(k)), k);
    denom_b[k] = PartitionPolynomial(b_var(k));
  }
  const PolySeries lhs_a = deriv_a * inv_a;
  const PolySeries lhs_b = deriv_b * denom_b.inverse_unit();
  for (unsigned n = 1; n <= N; ++n) {
    const PartitionPolynomial pa = p_poly(n);
    if (!(lhs_a[n] == pa)) return false;
    if (!(lhs_b[n] == -pa.rename_family(Family::a, Family::b).negate_family(Family::b))) return false;
  }

  // Numeric, over the actual a_k, b_k of x.
  const ABSeq s = ab_seq(x, N);
  Integer prev = 1;
  for (unsigned k = 1; k <= N; ++k) {
    if (s.a[k - 1] + Rational(s.b[k - 1]) != x * Rational(prev)) return false;
    prev = s.b[k - 1];
  }
  RatSeries a_num(N), a_den(N), b_num(N), b_den(N), mixed_num(N);
  a_den[0] = 1;
  b_den[0] = 1;
  mixed_num[0] = 1;
  for (unsigned k = 1; k <= N; ++k) {
    const Rational ak = s.a[k - 1];
    const Rational bk(s.b[k - 1]);
    a_num[k] = Rational(k) * ak;
    a_den[k] = -ak;
    b_num[k] = Rational(k) * bk;
    b_den[k] = bk;
    mixed_num[k] = bk;
  }
  const RatSeries inv_den = a_den.inverse_unit();
  const RatSeries log_deriv = a_num * inv_den;
  const RatSeries log_deriv_b = b_num * b_den.inverse_unit();
  const RatSeries mixed = mixed_num * inv_den;
  for (unsigned n = 1; n <= N; ++n) {
    const Rational xn = pow(x, n);
    if (log_deriv[n] + log_deriv_b[n] != xn) return false;
    if (mixed[n] != xn) return false;
  }
  return true;
}

}  // namespace floorpoly
