#include "floorpoly/identity.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace floorpoly {

namespace {

std::string var(long i, unsigned n) {
  return "x" + std::to_string(detail::cyclic(i, n));
}

// Subsets of {0..n-1} ordered by size, then by mask value.
std::vector<std::uint32_t> subsets_by_size(unsigned n) {
  std::vector<std::uint32_t> out;
  out.reserve((std::size_t{1} << n) - 1);
  const std::uint32_t limit = std::uint32_t{1} << n;
  for (unsigned k = 1; k <= n; ++k) {
    std::uint32_t m = (std::uint32_t{1} << k) - 1;
    while (m < limit) {
      out.push_back(m);
      // Gosper's hack for the next mask with the same popcount.
      const std::uint32_t c = m & (~m + 1);
      const std::uint32_t r = m + c;
      if (r == 0 || r >= limit) break;
      m = (((r ^ m) >> 2) / c) | r;
    }
  }
  return out;
}

}  // namespace

std::string render_chain(long a, long b, unsigned n) {
  if (a == b) return "1";
  std::string s = var(b - 1, n);
  for (long i = b - 2; i >= a; --i) s = var(i, n) + "*fl(" + s + ")";
  return s;
}

std::vector<unsigned> mask_to_set(std::uint32_t mask) {
  std::vector<unsigned> out;
  for (unsigned i = 0; mask != 0; ++i, mask >>= 1U)
    if (mask & 1U) out.push_back(i);
  return out;
}

std::uint32_t set_to_mask(std::span<const unsigned> set) {
  std::uint32_t m = 0;
  for (unsigned s : set) m |= std::uint32_t{1} << s;
  return m;
}

std::vector<unsigned> TermExpr::cut_points() const { return mask_to_set(cut_mask); }

std::size_t TermExpr::k() const { return static_cast<std::size_t>(std::popcount(cut_mask)); }

std::vector<Segment> TermExpr::factors() const {
  const auto s = cut_points();
  std::vector<Segment> out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const long begin = s[i];
    const long end = i + 1 < s.size() ? static_cast<long>(s[i + 1]) : static_cast<long>(s[0] + n);
    out.push_back({begin, end});
  }
  return out;
}

std::string TermExpr::render() const {
  std::string body;
  const auto f = factors();
  if (kind == TermKind::combined) {
    body = render_chain(f.front().begin, f.front().end, n);
  } else {
    const char* op = kind == TermKind::split_floor ? "fl(" : "fr(";
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (i) body += "*";
      body += op + render_chain(f[i].begin, f[i].end, n) + ")";
    }
  }
  return (sign < 0 ? "- " : "+ ") + body;
}

std::uint64_t identity_term_count(unsigned n) {
  return (std::uint64_t{1} << (n + 1)) - n - 2;
}

std::vector<TermExpr> generate_terms(unsigned n) {
  if (n < 1 || n > kMaxIdentityN)
    throw std::out_of_range("generate_terms: n must be in [1, " + std::to_string(kMaxIdentityN) + "]");
  const auto masks = subsets_by_size(n);
  std::vector<TermExpr> terms;
  terms.reserve(identity_term_count(n));
  for (unsigned s = 0; s < n; ++s) terms.push_back({TermKind::combined, std::uint32_t{1} << s, 1, n});
  for (std::uint32_t m : masks) {
    const int k = std::popcount(m);
    if (k < 2) continue;
    // -(-1)^k
    terms.push_back({TermKind::split_floor, m, k % 2 == 0 ? -1 : 1, n});
  }
  for (std::uint32_t m : masks) {
    if (std::popcount(m) < 2) continue;
    terms.push_back({TermKind::split_fractional, m, 1, n});
  }
  return terms;
}

std::string render_identity(std::span<const TermExpr> terms) {
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    std::string t = terms[i].render();
    if (i == 0) {
      if (t.starts_with("+ ")) t.erase(0, 2);
      else t = "-" + t.substr(2);
      out += t;
    } else {
      out += " " + t;
    }
  }
  return out;
}

Rational product_of(std::span<const Rational> xs) {
  Rational p(1);
  for (const Rational& x : xs) p *= x;
  return p;
}

bool verify_arbitrary_bracket(std::span<const Rational> xs, const RationalBracket& bracket) {
  const auto terms = generate_terms(static_cast<unsigned>(xs.size()));
  return eval_identity(xs, std::span<const TermExpr>(terms), bracket) == product_of(xs);
}

// ---------------------------------------------------------------------------

ExpansionTerm::ExpansionTerm(std::vector<Cell> cells) : cells_(std::move(cells)) {
  if (cells_.empty()) throw std::invalid_argument("ExpansionTerm: empty");
  const bool any_start = std::any_of(cells_.begin(), cells_.end(), [](Cell c) { return c == Cell::floor_start; });
  const bool any_cont = std::any_of(cells_.begin(), cells_.end(), [](Cell c) { return c == Cell::floor_continue; });
  if (any_cont && !any_start) throw std::invalid_argument("ExpansionTerm: continuation without a block start");
  const std::size_t n = cells_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (cells_[i] == Cell::floor_continue && cells_[(i + n - 1) % n] == Cell::bare)
      throw std::invalid_argument("ExpansionTerm: continuation after a bare variable");
  }
}

ExpansionTerm ExpansionTerm::from_floor_blocks(unsigned n, const std::vector<Segment>& blocks) {
  std::vector<Cell> cells(n, Cell::bare);
  std::vector<bool> used(n, false);
  for (const Segment& b : blocks) {
    if (b.begin < 0 || b.begin >= static_cast<long>(n) || b.end <= b.begin || b.end - b.begin > static_cast<long>(n))
      throw std::invalid_argument("ExpansionTerm: bad block");
    for (long i = b.begin; i < b.end; ++i) {
      const auto p = detail::cyclic(i, n);
      if (used[p]) throw std::invalid_argument("ExpansionTerm: overlapping blocks");
      used[p] = true;
      cells[p] = i == b.begin ? Cell::floor_start : Cell::floor_continue;
    }
  }
  return ExpansionTerm(std::move(cells));
}

std::vector<Segment> ExpansionTerm::floor_blocks() const {
  const long n = static_cast<long>(cells_.size());
  std::vector<Segment> out;
  for (long i = 0; i < n; ++i) {
    if (cells_[static_cast<std::size_t>(i)] != Cell::floor_start) continue;
    long e = i + 1;
    while (e < i + n && cells_[detail::cyclic(e, cells_.size())] == Cell::floor_continue) ++e;
    out.push_back({i, e});
  }
  return out;
}

std::vector<unsigned> ExpansionTerm::bare_positions() const {
  std::vector<unsigned> out;
  for (unsigned i = 0; i < cells_.size(); ++i)
    if (cells_[i] == Cell::bare) out.push_back(i);
  return out;
}

bool ExpansionTerm::is_bare_product() const {
  return std::all_of(cells_.begin(), cells_.end(), [](Cell c) { return c == Cell::bare; });
}

std::string ExpansionTerm::key() const {
  std::string k;
  for (Cell c : cells_) k += c == Cell::bare ? 'B' : (c == Cell::floor_start ? 'F' : 'C');
  return k;
}

std::string ExpansionTerm::render() const {
  const unsigned n = this->n();
  unsigned start = 0;
  while (start < n && cells_[start] == Cell::floor_continue) ++start;
  std::string out;
  for (unsigned off = 0; off < n; ++off) {
    const unsigned i = (start + off) % n;
    std::string piece;
    if (cells_[i] == Cell::bare) {
      piece = var(i, n);
    } else if (cells_[i] == Cell::floor_start) {
      long e = i + 1;
      while (e < static_cast<long>(i + n) && cells_[detail::cyclic(e, n)] == Cell::floor_continue) ++e;
      piece = "fl(" + render_chain(i, e, n) + ")";
    } else {
      continue;
    }
    if (!out.empty()) out += "*";
    out += piece;
  }
  return out;
}

Rational ExpansionTerm::evaluate(std::span<const Rational> xs) const {
  if (xs.size() != cells_.size()) throw std::invalid_argument("ExpansionTerm::evaluate: length mismatch");
  Rational p(1);
  for (unsigned i : bare_positions()) p *= xs[i];
  for (const Segment& b : floor_blocks()) p *= Rational(eval_chain(xs, b.begin, b.end).floor());
  return p;
}

const CertificateGroup* CancellationCertificate::find(const ExpansionTerm& t) const {
  const auto it = std::lower_bound(groups.begin(), groups.end(), t,
                                   [](const CertificateGroup& g, const ExpansionTerm& v) { return g.term < v; });
  return it != groups.end() && it->term == t ? &*it : nullptr;
}

std::string CancellationCertificate::summary() const {
  std::ostringstream os;
  std::size_t residual = 0;
  for (const auto& g : groups)
    if (!g.term.is_bare_product()) ++residual;
  os << "n = " << n << ": " << expanded_products << " expanded products in " << groups.size() << " groups\n";
  os << "bare product coefficient +1 from the full set: " << (bare_product_ok ? "yes" : "NO") << "\n";
  os << (residuals_zero ? "all residual coefficients zero" : "NONZERO residual coefficients") << " (" << residual
     << " residual terms)\n";
  os << "contributing sets match the predicted family: " << (characterization_ok ? "yes" : "NO") << "\n";
  for (const auto& note : notes) os << "note: " << note << "\n";
  os << (certified() ? "certificate: PASS" : "certificate: FAIL") << "\n";
  return os.str();
}

namespace {

using Cell = ExpansionTerm::Cell;

void mark_floor(std::vector<Cell>& cells, long a, long b) {
  const unsigned n = static_cast<unsigned>(cells.size());
  cells[detail::cyclic(a, n)] = Cell::floor_start;
  for (long i = a + 1; i < b; ++i) cells[detail::cyclic(i, n)] = Cell::floor_continue;
}

}  // namespace

std::vector<Contribution> predicted_contributions(const ExpansionTerm& t) {
  const unsigned n = t.n();
  const auto& cells = t.cells();
  std::uint32_t forced = 0;
  std::vector<unsigned> optional;
  for (unsigned i = 0; i < n; ++i) {
    if (cells[i] == Cell::bare) {
      forced |= std::uint32_t{1} << i;
    } else if (cells[i] == Cell::floor_start) {
      if (cells[(i + n - 1) % n] == Cell::bare)
        optional.push_back(i);
      else
        forced |= std::uint32_t{1} << i;
    }
  }
  std::vector<Contribution> out;
  for (std::uint32_t pick = 0; pick < (std::uint32_t{1} << optional.size()); ++pick) {
    std::uint32_t s = forced;
    for (std::size_t j = 0; j < optional.size(); ++j)
      if (pick & (std::uint32_t{1} << j)) s |= std::uint32_t{1} << optional[j];
    int floors = 0;
    for (unsigned i = 0; i < n; ++i)
      if (cells[i] == Cell::floor_start && (s & (std::uint32_t{1} << i))) ++floors;
    out.push_back({s, floors % 2 == 0 ? 1 : -1, false});
  }
  if (optional.empty() && !t.is_bare_product()) {
    const int k = std::popcount(forced);
    out.push_back({forced, k % 2 == 0 ? -1 : 1, true});
  }
  return out;
}

CancellationCertificate cancellation_certificate(unsigned n) {
  if (n < 1 || n > kMaxCertificateN)
    throw std::out_of_range("cancellation_certificate: n must be in [1, " + std::to_string(kMaxCertificateN) + "]");

  std::map<std::vector<Cell>, CertificateGroup> acc;
  const auto add = [&](std::vector<Cell> cells, Contribution c) {
    auto it = acc.find(cells);
    if (it == acc.end()) it = acc.emplace(cells, CertificateGroup{ExpansionTerm(cells), 0, {}}).first;
    it->second.coefficient += c.sign;
    it->second.contributions.push_back(c);
  };

  CancellationCertificate cert;
  cert.n = n;
  const std::uint32_t full = (std::uint32_t{1} << n) - 1;
  for (std::uint32_t s = 1; s <= full; ++s) {
    const TermExpr shape{TermKind::split_fractional, s, 1, n};
    const auto f = shape.factors();
    const int k = static_cast<int>(f.size());
    // Fractional half: each {X} becomes X - [X]; bit i of `choice` picks [X].
    for (std::uint32_t choice = 0; choice < (std::uint32_t{1} << k); ++choice) {
      std::vector<Cell> cells(n, Cell::bare);
      for (int i = 0; i < k; ++i) {
        const auto& seg = f[static_cast<std::size_t>(i)];
        if (choice & (std::uint32_t{1} << i)) {
          mark_floor(cells, seg.begin, seg.end);
        } else {
          cells[detail::cyclic(seg.begin, n)] = Cell::bare;
          if (seg.end > seg.begin + 1) mark_floor(cells, seg.begin + 1, seg.end);
        }
      }
      add(std::move(cells), {s, std::popcount(choice) % 2 == 0 ? 1 : -1, false});
      ++cert.expanded_products;
    }
    // Bracket half: -(-1)^k prod [X].
    std::vector<Cell> cells(n, Cell::bare);
    for (const auto& seg : f) mark_floor(cells, seg.begin, seg.end);
    add(std::move(cells), {s, k % 2 == 0 ? -1 : 1, true});
    ++cert.expanded_products;
  }

  cert.groups.reserve(acc.size());
  for (auto& [cells, g] : acc) cert.groups.push_back(std::move(g));

  cert.bare_product_ok = false;
  cert.residuals_zero = true;
  cert.characterization_ok = true;
  const auto by_subset = [](const Contribution& a, const Contribution& b) {
    return std::tie(a.subset, a.from_floor_term, a.sign) < std::tie(b.subset, b.from_floor_term, b.sign);
  };
  for (auto& g : cert.groups) {
    std::sort(g.contributions.begin(), g.contributions.end(), by_subset);
    if (g.term.is_bare_product()) {
      cert.bare_product_ok = g.coefficient == 1 && g.contributions.size() == 1 &&
                             g.contributions.front().subset == full && !g.contributions.front().from_floor_term;
      continue;
    }
    if (g.coefficient != 0) cert.residuals_zero = false;
    auto predicted = predicted_contributions(g.term);
    std::sort(predicted.begin(), predicted.end(), by_subset);
    if (predicted != g.contributions) cert.characterization_ok = false;
  }

  if (n == 3) {
    // The cubic identity is sometimes quoted with -x2*fl(x0*fl(x1)) where
    // the construction gives -fl(x0*fl(x1))*fl(x2). Record that the quoted
    // variant is not an identity, with an exact counterexample.
    const std::vector<Rational> xs{Rational(3, 2), Rational(5, 2), Rational(7, 2)};
    auto terms = generate_terms(3);
    const Rational good = eval_identity(std::span<const Rational>(xs), std::span<const TermExpr>(terms));
    const Rational inner = Rational(eval_chain(std::span<const Rational>(xs), 0, 2).floor());
    const Rational variant = good + inner * Rational(xs[2].floor()) - xs[2] * inner;
    std::ostringstream os;
    os << "variant term -x2*fl(x0*fl(x1)) in place of -fl(x0*fl(x1))*fl(x2) fails at x = (3/2, 5/2, 7/2): "
       << "sum " << variant << " vs product " << product_of(xs) << "; generated form gives " << good;
    cert.notes.push_back(os.str());
  }
  return cert;
}

}  // namespace floorpoly
