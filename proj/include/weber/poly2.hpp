#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <type_traits>
#include <utility>
#include <vector>

#include "weber/error.hpp"
#include "weber/rational.hpp"

namespace weber {

/// Exponent pair x^i y^j. Ordered lexicographically by i, then j; that order
/// also fixes the leading term used for sign normalization.
struct Monomial {
  int i = 0;
  int j = 0;

  int degree() const { return i + j; }
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

/// Exact sparse bivariate polynomial over the rationals.
///
/// Zero coefficients are never stored, so two polynomials are equal exactly
/// when their term maps are equal.
class Poly2 {
 public:
  using Terms = std::map<Monomial, Rational>;

  Poly2() = default;
  /// Constant polynomial; implicit so scalars mix freely with polynomials.
  template <class T>
    requires std::is_constructible_v<Rational, const T&>
  Poly2(const T& c) {  // NOLINT(google-explicit-constructor)
    add_term({0, 0}, Rational(c));
  }

  static Poly2 x() { return monomial(1, 0); }
  static Poly2 y() { return monomial(0, 1); }
  static Poly2 monomial(int i, int j, const Rational& c = 1) {
    if (i < 0 || j < 0) throw Error("negative exponent");
    Poly2 p;
    p.add_term({i, j}, c);
    return p;
  }
  static Poly2 from_terms(std::initializer_list<std::pair<Monomial, Rational>> list) {
    Poly2 p;
    for (const auto& [m, c] : list) p.add_term(m, c);
    return p;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Total degree; -1 for the zero polynomial.
  int degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
  }
  bool is_constant() const { return degree() <= 0; }

  Rational coeff(int i, int j) const {
    auto it = terms_.find({i, j});
    return it == terms_.end() ? Rational(0) : it->second;
  }

  /// Coefficient of the lexicographically greatest exponent pair.
  const Rational& leading_coeff() const {
    if (terms_.empty()) throw Error("zero polynomial has no leading term");
    return terms_.rbegin()->second;
  }

  Rational max_abs_coeff() const {
    Rational m = 0;
    for (const auto& [mon, c] : terms_) m = std::max<Rational>(m, abs(c));
    return m;
  }

  Poly2& operator+=(const Poly2& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Poly2& operator-=(const Poly2& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  Poly2& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  friend Poly2 operator+(Poly2 a, const Poly2& b) { return a += b; }
  friend Poly2 operator-(Poly2 a, const Poly2& b) { return a -= b; }
  friend Poly2 operator-(Poly2 a) { return a *= Rational(-1); }

  friend Poly2 operator*(const Poly2& a, const Poly2& b) {
    Poly2 r;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) r.add_term({ma.i + mb.i, ma.j + mb.j}, ca * cb);
    return r;
  }
  Poly2& operator*=(const Poly2& o) { return *this = *this * o; }

  friend bool operator==(const Poly2& a, const Poly2& b) { return a.terms_ == b.terms_; }

  Poly2 pow(unsigned e) const {
    Poly2 result(1);
    Poly2 base = *this;
    while (e) {
      if (e & 1u) result *= base;
      e >>= 1u;
      if (e) base *= base;
    }
    return result;
  }

  Rational eval_exact(const Rational& x, const Rational& y) const {
    Rational sum = 0;
    for (const auto& [m, c] : terms_) {
      Rational t = c;
      for (int k = 0; k < m.i; ++k) t *= x;
      for (int k = 0; k < m.j; ++k) t *= y;
      sum += t;
    }
    return sum;
  }

  /// Floating-point evaluation with coefficients rounded to double.
  double eval(double x, double y) const;

 private:
  void add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Terms terms_;
};

/// Double-precision image of a Poly2, laid out for nested Horner evaluation:
/// rows_[j] holds the x-polynomial multiplying y^j.
class CompiledPoly2 {
 public:
  CompiledPoly2() = default;
  explicit CompiledPoly2(const Poly2& p) {
    int max_j = -1;
    for (const auto& [m, c] : p.terms()) max_j = std::max(max_j, m.j);
    rows_.assign(static_cast<std::size_t>(max_j + 1), {});
    for (const auto& [m, c] : p.terms()) {
      auto& row = rows_[static_cast<std::size_t>(m.j)];
      if (row.size() <= static_cast<std::size_t>(m.i)) row.resize(static_cast<std::size_t>(m.i) + 1, 0.0);
      row[static_cast<std::size_t>(m.i)] = c.get_d();
    }
  }

  double operator()(double x, double y) const {
    double acc = 0.0;
    for (auto row = rows_.rbegin(); row != rows_.rend(); ++row) {
      double inner = 0.0;
      for (auto c = row->rbegin(); c != row->rend(); ++c) inner = inner * x + *c;
      acc = acc * y + inner;
    }
    return acc;
  }

  bool empty() const { return rows_.empty(); }

 private:
  std::vector<std::vector<double>> rows_;
};

inline double Poly2::eval(double x, double y) const { return CompiledPoly2(*this)(x, y); }

/// Positive rational c such that p / c has coprime integer coefficients.
inline Rational content(const Poly2& p) {
  if (p.is_zero()) throw Error("zero polynomial has no content");
  Integer g = 0, l = 1;
  for (const auto& [m, c] : p.terms()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num().get_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
  }
  Rational r(g, l);
  r.canonicalize();
  return r;
}

/// Coprime integer coefficients, sign preserved.
inline Poly2 primitive_part(const Poly2& p) {
  if (p.is_zero()) throw Error("cannot normalize zero");
  Poly2 q = p;
  q *= Rational(1 / content(p));
  return q;
}

/// Coprime integer coefficients with a positive coefficient on the
/// lexicographically greatest exponent pair.
inline Poly2 normalize(const Poly2& p) {
  if (p.is_zero()) throw Error("cannot normalize zero");
  Poly2 q = primitive_part(p);
  if (q.leading_coeff() < 0) q *= Rational(-1);
  return q;
}

inline bool equal_up_to_scale(const Poly2& p, const Poly2& q) {
  if (p.is_zero() || q.is_zero()) throw Error("equal_up_to_scale: zero polynomial");
  return normalize(p) == normalize(q);
}

}  // namespace weber
