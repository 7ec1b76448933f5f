#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "weber/eliminate.hpp"
#include "weber/poly2.hpp"

namespace weber::cli {

// Canonical text: terms by total degree descending, then x-exponent
// descending; explicit "*" and "^"; unit coefficients omitted.

namespace detail {

inline std::vector<std::pair<Monomial, Rational>> graded_terms(const Poly2& p) {
  std::vector<std::pair<Monomial, Rational>> terms(p.terms().begin(), p.terms().end());
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    if (a.first.degree() != b.first.degree()) return a.first.degree() > b.first.degree();
    return a.first.i > b.first.i;
  });
  return terms;
}

inline std::string monomial_text(const Monomial& m) {
  std::string s;
  auto factor = [&](const char* var, int e) {
    if (e == 0) return;
    if (!s.empty()) s += '*';
    s += var;
    if (e > 1) s += '^' + std::to_string(e);
  };
  factor("x", m.i);
  factor("y", m.j);
  return s;
}

inline std::string join(const std::vector<std::pair<Monomial, Rational>>& terms) {
  if (terms.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms) {
    const bool negative = c < 0;
    const Rational mag = abs(c);
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    const std::string mono = monomial_text(m);
    if (mono.empty()) {
      out += mag.get_str();
    } else if (mag == 1) {
      out += mono;
    } else {
      out += mag.get_str() + "*" + mono;
    }
  }
  return out;
}

}  // namespace detail

/// Polynomial exactly as stored, in canonical term order.
inline std::string format_poly(const Poly2& p) { return detail::join(detail::graded_terms(p)); }

/// Primitive integer form of p = 0, signed so the first printed term is positive.
inline std::string format_equation(const Poly2& p) {
  Poly2 q = primitive_part(p);
  auto terms = detail::graded_terms(q);
  if (terms.front().second < 0) q = -q;
  return format_poly(q) + " = 0";
}

/// Constraint as "<poly> >= 0" with coprime integer coefficients ("p <= 0" is
/// printed as "-p >= 0"). When the leading term is negative and the constant
/// positive, the constant is printed first, e.g. "41 - x^2 - y^2 >= 0".
inline std::string format_constraint(const Constraint& c) {
  const Poly2 p = primitive_part(c.poly());
  auto terms = detail::graded_terms(c.sense() == Sense::GreaterEqual ? p : -p);
  const auto constant = std::find_if(terms.begin(), terms.end(), [](const auto& t) { return t.first.degree() == 0; });
  if (terms.front().second < 0 && constant != terms.end() && constant->second > 0)
    std::rotate(terms.begin(), constant, constant + 1);
  return detail::join(terms) + " >= 0";
}

}  // namespace weber::cli
