#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "weber/error.hpp"
#include "weber/geometry.hpp"
#include "weber/poly2.hpp"
#include "weber/rational.hpp"

namespace weber {

/// A real parameter with an optional exact value. Scenes built from
/// rationals carry both; float-only scenes (irrational geometry) carry only
/// the double and can be traced but not derived symbolically.
class Number {
 public:
  Number() : Number(Rational(0)) {}
  Number(const Rational& q) : approx_(q.get_d()), exact_(q) {}  // NOLINT
  Number(long v) : Number(Rational(v)) {}                      // NOLINT
  Number(int v) : Number(Rational(v)) {}                       // NOLINT
  static Number inexact(double v) {
    if (!std::isfinite(v)) throw Error("non-finite scene parameter");
    Number n;
    n.approx_ = v;
    n.exact_.reset();
    return n;
  }

  double value() const { return approx_; }
  bool is_exact() const { return exact_.has_value(); }
  const Rational& exact() const {
    if (!exact_) throw UnsupportedError("scene parameter is not an exact rational");
    return *exact_;
  }

 private:
  double approx_ = 0.0;
  std::optional<Rational> exact_;
};

struct Focus {
  Number x;
  Number y;

  Point point() const { return {x.value(), y.value()}; }
  bool is_exact() const { return x.is_exact() && y.is_exact(); }

  /// (X - x)^2 + (Y - y)^2 as an exact polynomial.
  Poly2 squared_distance() const {
    const Poly2 dx = Poly2::x() - Poly2(x.exact());
    const Poly2 dy = Poly2::y() - Poly2(y.exact());
    return dx * dx + dy * dy;
  }
};

/// Line a*x + b*y + c = 0, kept exactly as given; distances divide by
/// sqrt(a^2 + b^2).
class Directrix {
 public:
  Directrix(Number a, Number b, Number c) : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
    norm_ = std::hypot(a_.value(), b_.value());
    if (!(norm_ > 0.0)) throw Error("directrix needs a nonzero normal (a, b)");
  }

  const Number& a() const { return a_; }
  const Number& b() const { return b_; }
  const Number& c() const { return c_; }
  bool is_exact() const { return a_.is_exact() && b_.is_exact() && c_.is_exact(); }

  /// Exact a^2 + b^2.
  Rational norm2() const { return a_.exact() * a_.exact() + b_.exact() * b_.exact(); }

  double signed_value(Point p) const { return a_.value() * p.x + b_.value() * p.y + c_.value(); }
  double distance(Point p) const { return std::abs(signed_value(p)) / norm_; }

  /// (a x + b y + c) / |(a, b)|, exact; refuses lines whose norm is irrational.
  Poly2 unit_linear_form() const {
    if (!is_exact()) throw UnsupportedError("directrix not rationally normalizable: inexact coefficients");
    auto n = rational_sqrt(norm2());
    if (!n) throw UnsupportedError("directrix not rationally normalizable");
    Poly2 form = Poly2::x() * Poly2(a_.exact()) + Poly2::y() * Poly2(b_.exact()) + Poly2(c_.exact());
    form *= Rational(1 / *n);
    return form;
  }

 private:
  Number a_, b_, c_;
  double norm_ = 1.0;
};

using SignVector = std::vector<int>;

/// Weighted sum of focal and directrix distances set equal to a threshold:
///   sum_i alpha_i R_i + sum_j beta_j r_j = S.
class FocalScene {
 public:
  FocalScene(std::vector<Focus> foci, std::vector<Number> alpha, std::vector<Directrix> directrices,
             std::vector<Number> beta, Number threshold)
      : foci_(std::move(foci)),
        directrices_(std::move(directrices)),
        alpha_(std::move(alpha)),
        beta_(std::move(beta)),
        threshold_(std::move(threshold)) {
    if (foci_.empty()) throw Error("scene needs at least one focus");
    if (foci_.size() > 3 || directrices_.size() > 3)
      throw Error("scene supports at most three foci and three directrices");
    if (alpha_.size() != foci_.size()) throw Error("need one alpha weight per focus");
    if (beta_.size() != directrices_.size()) throw Error("need one beta weight per directrix");
  }

  const std::vector<Focus>& foci() const { return foci_; }
  const std::vector<Directrix>& directrices() const { return directrices_; }
  const std::vector<Number>& alpha() const { return alpha_; }
  const std::vector<Number>& beta() const { return beta_; }
  const Number& threshold() const { return threshold_; }

  bool is_exact() const {
    for (const auto& f : foci_)
      if (!f.is_exact()) return false;
    for (const auto& d : directrices_)
      if (!d.is_exact()) return false;
    for (const auto& a : alpha_)
      if (!a.is_exact()) return false;
    for (const auto& b : beta_)
      if (!b.is_exact()) return false;
    return threshold_.is_exact();
  }

  double focal_distance(std::size_t i, Point p) const {
    if (i >= foci_.size()) throw Error("focus index out of range");
    return distance(foci_[i].point(), p);
  }

  double directrix_distance(std::size_t j, Point p) const {
    if (j >= directrices_.size()) throw Error("directrix index out of range");
    return directrices_[j].distance(p);
  }

  /// w(p) = sum alpha_i R_i(p) + sum beta_j r_j(p) - S; the locus is w = 0.
  double residual(Point p) const {
    double w = -threshold_.value();
    for (std::size_t i = 0; i < foci_.size(); ++i) w += alpha_[i].value() * distance(foci_[i].point(), p);
    for (std::size_t j = 0; j < directrices_.size(); ++j) w += beta_[j].value() * directrices_[j].distance(p);
    return w;
  }

  /// Sum of |alpha| and |beta|, the Lipschitz constant of the residual.
  double lipschitz() const {
    double l = 0.0;
    for (const auto& a : alpha_) l += std::abs(a.value());
    for (const auto& b : beta_) l += std::abs(b.value());
    return l;
  }

  SignVector sign_vector(Point p) const {
    SignVector s;
    s.reserve(directrices_.size());
    for (const auto& d : directrices_) {
      const double v = d.signed_value(p);
      s.push_back(v > 0.0 ? 1 : (v < 0.0 ? -1 : 0));
    }
    return s;
  }

  /// Linear right-hand side S - sum_j beta_j eps_j (a_j x + b_j y + c_j)/n_j
  /// of the focal part, valid where every directrix sign equals eps_j.
  Poly2 region_rhs(const SignVector& eps) const {
    if (eps.size() != directrices_.size()) throw Error("sign vector length must match directrix count");
    Poly2 rhs(threshold_.exact());
    for (std::size_t j = 0; j < directrices_.size(); ++j) {
      if (eps[j] == 0) throw Error("on-line region is measure zero");
      if (eps[j] != 1 && eps[j] != -1) throw Error("sign vector entries must be -1 or +1");
      Poly2 term = directrices_[j].unit_linear_form();
      term *= Rational(beta_[j].exact() * eps[j]);
      rhs -= term;
    }
    return rhs;
  }

  /// All 2^k sign vectors over the directrices, (+1,...,+1) first.
  std::vector<SignVector> sign_regions() const {
    const std::size_t k = directrices_.size();
    std::vector<SignVector> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
      SignVector s(k);
      for (std::size_t j = 0; j < k; ++j) s[j] = (mask >> j) & 1u ? -1 : 1;
      out.push_back(std::move(s));
    }
    return out;
  }

 private:
  std::vector<Focus> foci_;
  std::vector<Directrix> directrices_;
  std::vector<Number> alpha_;
  std::vector<Number> beta_;
  Number threshold_;
};

inline Focus exact_focus(const Rational& x, const Rational& y) { return {Number(x), Number(y)}; }
inline Focus numeric_focus(double x, double y) { return {Number::inexact(x), Number::inexact(y)}; }

/// Directrix through two points, oriented so that `inside` has a positive sign.
inline Directrix directrix_through(const Focus& p, const Focus& q, const Focus& inside) {
  if (p.is_exact() && q.is_exact() && inside.is_exact()) {
    Rational a = p.y.exact() - q.y.exact();
    Rational b = q.x.exact() - p.x.exact();
    Rational c = -(a * p.x.exact() + b * p.y.exact());
    const Rational s = a * inside.x.exact() + b * inside.y.exact() + c;
    if (s == 0) throw Error("collinear points");
    if (s < 0) {
      a = -a;
      b = -b;
      c = -c;
    }
    return {Number(a), Number(b), Number(c)};
  }
  double a = p.y.value() - q.y.value();
  double b = q.x.value() - p.x.value();
  double c = -(a * p.x.value() + b * p.y.value());
  const double s = a * inside.x.value() + b * inside.y.value() + c;
  if (s == 0.0) throw Error("collinear points");
  if (s < 0.0) {
    a = -a;
    b = -b;
    c = -c;
  }
  return {Number::inexact(a), Number::inexact(b), Number::inexact(c)};
}

}  // namespace weber
