#pragma once

// The floor-bracket expansion of a product x_0 x_1 ... x_{n-1}.
//
// For every nonempty S = {s_1 < ... < s_k} of {0..n-1} the identity carries
//
//     {X^{s_1:s_2}} {X^{s_2:s_3}} ... {X^{s_k:s_1+n}}
//   - (-1)^k [X^{s_1:s_2}] [X^{s_2:s_3}] ... [X^{s_k:s_1+n}]
//
// and for |S| = 1 the pair collapses to the single chain X^{s:s+n}, giving
// 2^{n+1} - n - 2 terms in total. Terms render in a plain-text syntax where
// fl(...) is the bracket and fr(...) the matching fractional part.

#include "floorpoly/nested_floor.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace floorpoly {

inline constexpr unsigned kMaxIdentityN = 20;
inline constexpr unsigned kMaxCertificateN = 9;

/// A chain X^{begin:end} over cyclic indices; begin < end <= begin + n.
struct Segment {
  long begin = 0;
  long end = 0;
  friend bool operator==(const Segment&, const Segment&) = default;
};

/// Renders X^{a:b}: "1", "x3", "x1*fl(x2*fl(x3))".
std::string render_chain(long a, long b, unsigned n);

enum class TermKind { combined, split_fractional, split_floor };

struct TermExpr {
  TermKind kind = TermKind::combined;
  std::uint32_t cut_mask = 0;  // bit s set iff s in S
  int sign = 1;
  unsigned n = 1;

  std::vector<unsigned> cut_points() const;
  std::size_t k() const;
  /// (s_1:s_2), ..., (s_k:s_1+n); a combined term has the single (s:s+n).
  std::vector<Segment> factors() const;
  /// Signed rendering such as "- fl(x0)*fl(x1)"; the leading sign is
  /// always present.
  std::string render() const;
};

std::uint64_t identity_term_count(unsigned n);

/// Throws std::out_of_range unless 1 <= n <= kMaxIdentityN.
std::vector<TermExpr> generate_terms(unsigned n);

/// "x0*fl(x1) + x1*fl(x0) - fl(x0)*fl(x1) + fr(x0)*fr(x1)"
std::string render_identity(std::span<const TermExpr> terms);

template <class Num, class Bracket>
Num eval_term(std::span<const Num> xs, const TermExpr& t, const Bracket& bracket,
              std::vector<std::optional<Num>>& memo) {
  const unsigned n = t.n;
  const auto chain = [&](const Segment& s) -> const Num& {
    const auto base = static_cast<std::size_t>(s.begin);
    auto& slot = memo[base * (n + 1) + static_cast<std::size_t>(s.end - s.begin)];
    if (!slot) slot = eval_chain(xs, s.begin, s.end, bracket);
    return *slot;
  };
  const auto f = t.factors();
  if (t.kind == TermKind::combined) return chain(f.front());
  Num prod(1);
  for (const Segment& s : f) {
    const Num& v = chain(s);
    prod = prod * (t.kind == TermKind::split_floor ? bracket(v) : v - bracket(v));
  }
  return t.sign < 0 ? Num(0) - prod : prod;
}

/// Sum of the given identity terms at xs; terms must all share n == xs.size().
template <class Num, class Bracket>
Num eval_identity(std::span<const Num> xs, std::span<const TermExpr> terms, const Bracket& bracket) {
  if (xs.empty()) throw std::invalid_argument("eval_identity: empty input");
  const unsigned n = static_cast<unsigned>(xs.size());
  std::vector<std::optional<Num>> memo(static_cast<std::size_t>(n) * (n + 1));
  Num sum(0);
  for (const TermExpr& t : terms) {
    if (t.n != n) throw std::invalid_argument("eval_identity: term length does not match input");
    sum = sum + eval_term(xs, t, bracket, memo);
  }
  return sum;
}

inline Rational eval_identity(std::span<const Rational> xs, std::span<const TermExpr> terms) {
  return eval_identity(xs, terms, ExactFloor{});
}

inline AdaptiveReal eval_identity(std::span<const AdaptiveReal> xs, std::span<const TermExpr> terms,
                                  long precision_cap = kDefaultPrecisionCap) {
  return eval_identity(xs, terms, CertifiedFloor{precision_cap});
}

Rational product_of(std::span<const Rational> xs);

using RationalBracket = std::function<Rational(const Rational&)>;

/// Evaluates the identity with [.] replaced by `bracket` and {v} by
/// v - bracket(v); true iff it still sums to the plain product.
bool verify_arbitrary_bracket(std::span<const Rational> xs, const RationalBracket& bracket);

// ---------------------------------------------------------------------------
// Symbolic cancellation certificate.

/// A monomial produced by expanding every {v} as v - [v]: cyclic runs of
/// bare variables separated by bracketed chains [X^{v:u}].
class ExpansionTerm {
 public:
  enum class Cell : std::uint8_t { bare, floor_start, floor_continue };

  explicit ExpansionTerm(std::vector<Cell> cells);
  /// Bracketed chains given as (v, u) with v in [0, n); every position not
  /// covered is a bare variable.
  static ExpansionTerm from_floor_blocks(unsigned n, const std::vector<Segment>& blocks);

  unsigned n() const { return static_cast<unsigned>(cells_.size()); }
  const std::vector<Cell>& cells() const { return cells_; }
  std::vector<Segment> floor_blocks() const;
  std::vector<unsigned> bare_positions() const;
  bool is_bare_product() const;

  /// "BFCB..." one character per position.
  std::string key() const;
  /// "x1*fl(x2*fl(x3))*x4*x5*fl(x6)*fl(x7*fl(x8*fl(x0)))"
  std::string render() const;

  Rational evaluate(std::span<const Rational> xs) const;

  friend bool operator==(const ExpansionTerm&, const ExpansionTerm&) = default;
  friend auto operator<=>(const ExpansionTerm& a, const ExpansionTerm& b) { return a.cells_ <=> b.cells_; }

 private:
  std::vector<Cell> cells_;
};

struct Contribution {
  std::uint32_t subset = 0;
  int sign = 1;
  bool from_floor_term = false;  // the all-bracket half of the S pair
  friend bool operator==(const Contribution&, const Contribution&) = default;
};

struct CertificateGroup {
  ExpansionTerm term;
  long coefficient = 0;
  std::vector<Contribution> contributions;
};

struct CancellationCertificate {
  unsigned n = 0;
  std::size_t expanded_products = 0;
  std::vector<CertificateGroup> groups;  // sorted by term

  bool bare_product_ok = false;      // coefficient +1, only from S = {0..n-1}
  bool residuals_zero = false;       // every other group sums to 0
  bool characterization_ok = false;  // contributing S match the predicted family
  std::vector<std::string> notes;

  bool certified() const { return bare_product_ok && residuals_zero && characterization_ok; }
  const CertificateGroup* find(const ExpansionTerm& t) const;
  std::string summary() const;
};

/// Throws std::out_of_range unless 1 <= n <= kMaxCertificateN.
CancellationCertificate cancellation_certificate(unsigned n);

/// Predicted contributing subsets (non-bracket half) for a residual term:
/// the forced positions together with every subset of the optional ones.
std::vector<Contribution> predicted_contributions(const ExpansionTerm& t);

std::vector<unsigned> mask_to_set(std::uint32_t mask);
std::uint32_t set_to_mask(std::span<const unsigned> set);

}  // namespace floorpoly
