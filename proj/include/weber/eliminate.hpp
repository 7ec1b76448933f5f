#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "weber/error.hpp"
#include "weber/geometry.hpp"
#include "weber/poly2.hpp"
#include "weber/scene.hpp"

namespace weber {

/// c * sqrt(Q) with Q a (scaled) squared distance to a point.
struct RadicalTerm {
  Rational weight;
  Poly2 radicand;
};

/// sum_k c_k sqrt(Q_k) = P with 1..3 radicals and P of degree <= 1.
struct RadicalEquation {
  std::vector<RadicalTerm> terms;
  Poly2 rhs;
};

enum class Sense { GreaterEqual, LessEqual };

inline const char* to_string(Sense s) { return s == Sense::GreaterEqual ? ">=" : "<="; }
inline Sense flipped(Sense s) { return s == Sense::GreaterEqual ? Sense::LessEqual : Sense::GreaterEqual; }

/// Semialgebraic condition poly >= 0 or poly <= 0.
class Constraint {
 public:
  Constraint(Poly2 poly, Sense sense) : poly_(std::move(poly)), sense_(sense) {
    if (poly_.is_zero()) throw Error("constraint polynomial must be nonzero");
    compiled_ = CompiledPoly2(poly_);
    scale_ = poly_.max_abs_coeff().get_d();
  }

  const Poly2& poly() const { return poly_; }
  Sense sense() const { return sense_; }
  double scale() const { return scale_; }

  /// Value oriented so that the constraint reads "margin >= 0".
  double margin(Point p) const {
    const double v = compiled_(p.x, p.y);
    return sense_ == Sense::GreaterEqual ? v : -v;
  }

  bool holds(Point p, double slack) const { return margin(p) >= -slack * scale_; }

  Constraint negated_sense() const { return {poly_, flipped(sense_)}; }

 private:
  Poly2 poly_;
  Sense sense_;
  CompiledPoly2 compiled_;
  double scale_ = 1.0;
};

/// Same semialgebraic set: positive multiples with equal sense, or negative
/// multiples with opposite sense.
inline bool equivalent(const Constraint& a, const Constraint& b) {
  const Poly2 pa = primitive_part(a.poly());
  const Poly2 pb = primitive_part(b.poly());
  if (pa == pb) return a.sense() == b.sense();
  if (pa == -pb) return a.sense() != b.sense();
  return false;
}

/// Implicit curve plus the validity regions of every squaring step.
struct DerivedCurve {
  Poly2 implicit;
  std::vector<Constraint> constraints;
  /// Isolated right-hand side before each squaring.
  std::vector<Poly2> steps;
};

namespace detail {

inline void check_radicand(const Poly2& q) {
  // k((x-u)^2 + (y-v)^2): equal positive x^2, y^2 coefficients, no xy term and
  // a vanishing minimum.
  if (q.degree() != 2) throw Error("radicand must be a quadratic squared distance");
  const Rational k = q.coeff(2, 0);
  if (k <= 0 || q.coeff(0, 2) != k || q.coeff(1, 1) != 0)
    throw Error("radicand must be a positive multiple of (x-u)^2 + (y-v)^2");
  const Rational l = q.coeff(1, 0), m = q.coeff(0, 1), n = q.coeff(0, 0);
  if (4 * k * n != l * l + m * m) throw Error("radicand must be a squared distance to a point");
}

inline void check_equation(const RadicalEquation& eq) {
  if (eq.terms.empty()) throw Error("radical equation needs at least one radical");
  if (eq.terms.size() > 3) throw UnsupportedError("at most three radicals are supported");
  if (eq.rhs.degree() > 1) throw Error("right-hand side must have degree <= 1");
  for (const auto& t : eq.terms) {
    if (t.weight == 0) throw Error("radical weights must be nonzero");
    check_radicand(t.radicand);
  }
}

/// Emitted for all-positive weights unless P is a positive constant.
inline bool needs_rhs_constraint(const Poly2& p) {
  return !p.is_constant() || p.coeff(0, 0) < 0;
}

inline Constraint oriented(const Poly2& p, int sign_factor) {
  return {sign_factor < 0 ? -p : p, Sense::GreaterEqual};
}

/// Flips every weight and the right-hand side so that the leading block of
/// weights is positive; the solution set is unchanged.
inline RadicalEquation negated(const RadicalEquation& eq) {
  RadicalEquation out;
  for (const auto& t : eq.terms) out.terms.push_back({-t.weight, t.radicand});
  out.rhs = -eq.rhs;
  return out;
}

inline DerivedCurve eliminate_one(const RadicalEquation& eq) {
  const auto& [c1, q1] = eq.terms[0];
  const Poly2& p = eq.rhs;
  DerivedCurve dc;
  dc.steps.push_back(p);
  if (!p.is_zero()) dc.constraints.push_back(oriented(p, sign(c1)));
  dc.implicit = Poly2(c1 * c1) * q1 - p * p;
  return dc;
}

inline DerivedCurve eliminate_two(const RadicalEquation& eq) {
  const auto& [c1, q1] = eq.terms[0];
  const auto& [c2, q2] = eq.terms[1];
  const Poly2& p = eq.rhs;
  DerivedCurve dc;
  dc.steps.push_back(p);
  if (c1 > 0 && c2 > 0 && needs_rhs_constraint(p)) dc.constraints.emplace_back(p, Sense::GreaterEqual);
  // 2 c1 c2 sqrt(Q1 Q2) = P^2 - c1^2 Q1 - c2^2 Q2
  const Poly2 e1 = p * p - Poly2(c1 * c1) * q1 - Poly2(c2 * c2) * q2;
  dc.steps.push_back(e1);
  if (!e1.is_zero()) dc.constraints.push_back(oriented(e1, sign(c1) * sign(c2)));
  dc.implicit = Poly2(4 * c1 * c1 * c2 * c2) * q1 * q2 - e1 * e1;
  return dc;
}

inline DerivedCurve eliminate_three(const RadicalEquation& eq, bool with_constraints) {
  const auto& [c1, q1] = eq.terms[0];
  const auto& [c2, q2] = eq.terms[1];
  const auto& [c3, q3] = eq.terms[2];
  const Poly2& p = eq.rhs;
  const Rational c1s = c1 * c1, c2s = c2 * c2, c3s = c3 * c3;
  DerivedCurve dc;

  // c1 sqrt(Q1) + c2 sqrt(Q2) = P - c3 sqrt(Q3)
  dc.steps.push_back(p);
  if (with_constraints) {
    if (needs_rhs_constraint(p)) dc.constraints.emplace_back(p, Sense::GreaterEqual);
    dc.constraints.emplace_back(p * p - Poly2(c3s) * q3, Sense::GreaterEqual);
  }

  // 2 c1 c2 sqrt(Q1 Q2) + 2 c3 P sqrt(Q3) = P^2 + c3^2 Q3 - c1^2 Q1 - c2^2 Q2
  const Poly2 e1 = p * p + Poly2(c3s) * q3 - Poly2(c1s) * q1 - Poly2(c2s) * q2;
  dc.steps.push_back(e1);
  if (with_constraints) dc.constraints.emplace_back(e1, Sense::GreaterEqual);

  // 8 c1 c2 c3 P sqrt(Q1 Q2 Q3) = E1^2 - 4 c1^2 c2^2 Q1 Q2 - 4 c3^2 P^2 Q3
  const Poly2 p2 = p * p;
  const Poly2 e2 = e1 * e1 - Poly2(4 * c1s * c2s) * q1 * q2 - Poly2(4 * c3s) * p2 * q3;
  dc.steps.push_back(e2);
  if (with_constraints) dc.constraints.emplace_back(e2, Sense::GreaterEqual);

  dc.implicit = Poly2(64 * c1s * c2s * c3s) * p2 * q1 * q2 * q3 - e2 * e2;
  return dc;
}

inline DerivedCurve finish(DerivedCurve dc) {
  if (dc.implicit.is_zero()) throw Error("elimination produced the zero polynomial");
  dc.implicit = normalize(dc.implicit);
  return dc;
}

}  // namespace detail

/// Eliminates 1-3 square roots from sum c_k sqrt(Q_k) = P by repeated
/// squaring. Each squaring is reversible only where the isolated side is
/// nonnegative; those conditions are returned, in derivation order, as
/// constraints of the form E >= 0. For three radicals sqrt(Q3) is isolated
/// first.
inline DerivedCurve eliminate(const RadicalEquation& input) {
  detail::check_equation(input);
  switch (input.terms.size()) {
    case 1:
      return detail::finish(detail::eliminate_one(input));
    case 2: {
      const bool both_negative = input.terms[0].weight < 0 && input.terms[1].weight < 0;
      return detail::finish(detail::eliminate_two(both_negative ? detail::negated(input) : input));
    }
    default: {
      const auto positive = std::count_if(input.terms.begin(), input.terms.end(),
                                          [](const RadicalTerm& t) { return t.weight > 0; });
      if (positive == 3) return detail::finish(detail::eliminate_three(input, true));
      if (positive == 0) return detail::finish(detail::eliminate_three(detail::negated(input), true));
      throw UnsupportedError("three radicals with mixed-sign weights: no validity constraints available");
    }
  }
}

/// Implicit polynomial only. The final polynomial depends on the weights only
/// through their squares, so this also serves mixed-sign three-radical
/// equations; the constraint list is left empty and membership must be
/// decided by the residual alone.
inline DerivedCurve eliminate_unconstrained(const RadicalEquation& input) {
  detail::check_equation(input);
  if (input.terms.size() < 3) {
    DerivedCurve dc = eliminate(input);
    dc.constraints.clear();
    return dc;
  }
  RadicalEquation flipped_eq = input;
  for (auto& t : flipped_eq.terms) t.weight = abs(t.weight);
  return detail::finish(detail::eliminate_three(flipped_eq, false));
}

inline bool satisfies_constraints(const DerivedCurve& dc, Point p, double slack) {
  return std::all_of(dc.constraints.begin(), dc.constraints.end(),
                     [&](const Constraint& c) { return c.holds(p, slack); });
}

enum class PointClass { OnArc, ZariskiOnly, OffCurve };

inline const char* to_string(PointClass c) {
  switch (c) {
    case PointClass::OnArc:
      return "on_arc";
    case PointClass::ZariskiOnly:
      return "zariski_only";
    default:
      return "off_curve";
  }
}

/// Central-difference gradient norm of a polynomial field.
inline double gradient_norm(const CompiledPoly2& f, Point p) {
  const double hx = 1e-6 * std::max(1.0, std::abs(p.x));
  const double hy = 1e-6 * std::max(1.0, std::abs(p.y));
  const double gx = (f(p.x + hx, p.y) - f(p.x - hx, p.y)) / (2 * hx);
  const double gy = (f(p.x, p.y + hy) - f(p.x, p.y - hy)) / (2 * hy);
  return std::hypot(gx, gy);
}

/// |f(p)| <= tol * (|grad f(p)| + 1).
inline bool near_zero_set(const CompiledPoly2& f, Point p, double tol) {
  return std::abs(f(p.x, p.y)) <= tol * (gradient_norm(f, p) + 1.0);
}

inline PointClass classify_point(const DerivedCurve& dc, const ResidualFn& residual, Point p, double tol) {
  if (!(tol > 0)) throw Error("classify_point: tol must be positive");
  const CompiledPoly2 f(dc.implicit);
  if (!near_zero_set(f, p, tol)) return PointClass::OffCurve;
  return std::abs(residual(p)) <= tol ? PointClass::OnArc : PointClass::ZariskiOnly;
}

/// The focal part of a scene as a radical equation for one sign region of the
/// directrices. Foci with zero weight are dropped.
inline RadicalEquation radical_equation(const FocalScene& scene, const SignVector& eps) {
  RadicalEquation eq;
  for (std::size_t i = 0; i < scene.foci().size(); ++i) {
    const Rational& a = scene.alpha()[i].exact();
    if (a == 0) continue;
    eq.terms.push_back({a, scene.foci()[i].squared_distance()});
  }
  eq.rhs = scene.region_rhs(eps);
  return eq;
}

/// Half-plane constraints eps_j (a_j x + b_j y + c_j) >= 0 of a sign region.
inline std::vector<Constraint> region_constraints(const FocalScene& scene, const SignVector& eps) {
  std::vector<Constraint> out;
  for (std::size_t j = 0; j < scene.directrices().size(); ++j) {
    const auto& d = scene.directrices()[j];
    Poly2 line = Poly2::x() * Poly2(d.a().exact()) + Poly2::y() * Poly2(d.b().exact()) + Poly2(d.c().exact());
    out.emplace_back(eps.at(j) < 0 ? -line : line, Sense::GreaterEqual);
  }
  return out;
}

}  // namespace weber
