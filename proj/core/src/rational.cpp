#include "floorpoly/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace floorpoly {

Rational::Rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  const auto strip = [](std::string& t) {
    const auto b = t.find_first_not_of(" \t");
    const auto e = t.find_last_not_of(" \t");
    t = (b == std::string::npos) ? std::string() : t.substr(b, e - b + 1);
  };
  strip(s);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  const auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  strip(num);
  strip(den);
  const auto valid = [](const std::string& t, bool allow_sign) {
    if (t.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && (t[0] == '-' || t[0] == '+')) i = 1;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  if (!valid(num, true) || !valid(den, false))
    throw std::invalid_argument("malformed rational literal: " + std::string(text));
  if (num[0] == '+') num.erase(0, 1);
  return Rational(Integer(num, 10), Integer(den, 10));
}

Integer Rational::floor() const {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return q;
}

Integer Rational::ceil() const {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return q;
}

Rational Rational::frac() const { return *this - Rational(floor()); }

Rational Rational::abs() const { return sign() < 0 ? -*this : *this; }

Rational& Rational::operator/=(const Rational& o) {
  if (o.sign() == 0) throw std::domain_error("rational division by zero");
  value_ /= o.value_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational pow(const Rational& base, unsigned exponent) {
  Integer num;
  Integer den;
  mpz_pow_ui(num.get_mpz_t(), base.raw().get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.raw().get_den_mpz_t(), exponent);
  return Rational(num, den);
}

ScaledFracIdentities scaled_frac_identities(const Rational& x, unsigned long l) {
  if (l == 0) throw std::invalid_argument("scaled_frac_identities: l must be positive");
  const Rational lx = Rational(l) * x;
  const Rational direct = lx.frac();
  const Rational via_frac = (Rational(l) * x.frac()).frac();
  if (direct != via_frac) throw std::logic_error("{lx} != {l{x}} for x = " + x.str());

  Integer sum = 0;
  for (unsigned long i = 0; i < l; ++i) sum += (x + Rational(Integer(i), Integer(l))).floor();
  if (sum != lx.floor()) throw std::logic_error("floor(lx) != sum floor(x + i/l) for x = " + x.str());
  return {direct, sum};
}

Integer factorial(unsigned n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

}  // namespace floorpoly
