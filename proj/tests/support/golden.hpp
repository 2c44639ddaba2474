#pragma once

// Reference formulas written by hand in the fl()/fr() syntax,
// with x, y, z written as x0, x1, x2, plus a normalizer that compares two
// renderings up to the order of terms and of factors inside a term.

#include <algorithm>
#include <string>
#include <vector>

namespace golden {

// xy = fl(x) y + x fl(y) - fl(x) fl(y) + {x}{y}
inline const std::string kIdentity2 = "fl(x0)*x1 + x0*fl(x1) - fl(x0)*fl(x1) + fr(x0)*fr(x1)";

// The cubic product identity with the sixth term in the variant form
// -z fl(x fl(y)), which is not an identity ...
inline const std::string kIdentity3MisplacedFloor =
    "x0*fl(x1*fl(x2)) + x1*fl(x2*fl(x0)) + x2*fl(x0*fl(x1))"
    " - fl(x0)*fl(x1*fl(x2)) - fl(x1)*fl(x2*fl(x0)) - x2*fl(x0*fl(x1))"
    " + fl(x0)*fl(x1)*fl(x2)"
    " + fr(x0)*fr(x1*fl(x2)) + fr(x1)*fr(x2*fl(x0)) + fr(x2)*fr(x0*fl(x1))"
    " + fr(x0)*fr(x1)*fr(x2)";

// ... and with the sixth term as the subset construction produces it,
// -fl(z) fl(x fl(y)).
inline const std::string kIdentity3Corrected =
    "x0*fl(x1*fl(x2)) + x1*fl(x2*fl(x0)) + x2*fl(x0*fl(x1))"
    " - fl(x0)*fl(x1*fl(x2)) - fl(x1)*fl(x2*fl(x0)) - fl(x2)*fl(x0*fl(x1))"
    " + fl(x0)*fl(x1)*fl(x2)"
    " + fr(x0)*fr(x1*fl(x2)) + fr(x1)*fr(x2*fl(x0)) + fr(x2)*fr(x0*fl(x1))"
    " + fr(x0)*fr(x1)*fr(x2)";

/// Splits "a + b - c" at top-level " + " / " - " into signed terms, sorts the
/// top-level '*' factors of each term, then sorts the terms.
inline std::vector<std::string> normalize(const std::string& s) {
  std::vector<std::string> terms;
  std::string cur = "+";
  int depth = 0;
  std::size_t i = 0;
  if (s.starts_with("- ")) {
    cur = "-";
    i = 2;
  }
  const auto flush = [&] {
    std::vector<std::string> factors;
    std::string f;
    int d = 0;
    for (std::size_t j = 1; j < cur.size(); ++j) {
      const char c = cur[j];
      if (c == '(') ++d;
      if (c == ')') --d;
      if (c == '*' && d == 0) {
        factors.push_back(f);
        f.clear();
      } else {
        f += c;
      }
    }
    factors.push_back(f);
    std::sort(factors.begin(), factors.end());
    std::string t(1, cur[0]);
    for (std::size_t j = 0; j < factors.size(); ++j) t += (j ? "*" : "") + factors[j];
    terms.push_back(t);
  };
  for (; i < s.size(); ++i) {
    const char c = s[i];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (depth == 0 && c == ' ' && i + 2 < s.size() && (s[i + 1] == '+' || s[i + 1] == '-') && s[i + 2] == ' ') {
      flush();
      cur = std::string(1, s[i + 1]);
      i += 2;
      continue;
    }
    cur += c;
  }
  flush();
  std::sort(terms.begin(), terms.end());
  return terms;
}

// Power formulas.
inline const std::string kPowerIdentity2 = "a1^2 + 2*a2 - b1^2 + 2*b2";
inline const std::string kPowerIdentity3 = "a1^3 + 3*a1*a2 + 3*a3 + b1^3 - 3*b1*b2 + 3*b3";
inline const std::string kPowerIdentity4 =
    "a1^4 + 4*a1^2*a2 + 4*a1*a3 + 2*a2^2 + 4*a4 - b1^4 + 4*b1^2*b2 - 4*b1*b3 - 2*b2^2 + 4*b4";

inline const std::string kP2 = "a1^2 + 2*a2";
inline const std::string kP3 = "a1^3 + 3*a1*a2 + 3*a3";
inline const std::string kP4 = "a1^4 + 4*a1^2*a2 + 4*a1*a3 + 2*a2^2 + 4*a4";

inline const std::string kMixed2 = "a1^2 + a2 + a1*b1 + b2";
inline const std::string kMixed3 = "a1^3 + 2*a1*a2 + a3 + (a1^2 + a2)*b1 + a1*b2 + b3";
inline const std::string kMixed4 =
    "a1^4 + 3*a1^2*a2 + 2*a1*a3 + a2^2 + a4 + (a1^3 + 2*a1*a2 + a3)*b1 + (a1^2 + a2)*b2 + a1*b3 + b4";

}  // namespace golden
