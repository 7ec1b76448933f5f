#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "weber/eliminate.hpp"
#include "weber/error.hpp"
#include "weber/geometry.hpp"
#include "weber/poly2.hpp"
#include "weber/scene.hpp"

namespace weber {

/// One symbolic piece of a family: the radical equation valid in a sign
/// region (or for one sign choice of an absolute value), the scene whose
/// residual decides membership, and the half-planes bounding the region.
struct Branch {
  std::string label;
  FocalScene scene;
  RadicalEquation equation;
  std::vector<Constraint> region;
};

struct FamilyInstance {
  std::string name;
  FocalScene scene;
  /// Empty for numeric-only instances.
  std::vector<Branch> branches;
  std::optional<Poly2> expected_implicit;
  std::optional<std::vector<Constraint>> expected_constraints;
  Window window;
  std::string notes;

  bool symbolic() const { return !branches.empty(); }

  const RadicalEquation& equation() const {
    if (branches.empty()) throw UnsupportedError(name + ": numeric-only instance has no radical equation");
    return branches.front().equation;
  }

  /// Signed residual of the branch closest to its own locus; the zero set is
  /// the union of all branch loci.
  double residual(Point p) const {
    if (branches.empty()) return scene.residual(p);
    double best = branches.front().scene.residual(p);
    for (std::size_t k = 1; k < branches.size(); ++k) {
      const double w = branches[k].scene.residual(p);
      if (std::abs(w) < std::abs(best)) best = w;
    }
    return best;
  }

  /// Self-contained copy of residual(), safe to outlive the instance.
  ResidualFn residual_fn() const {
    std::vector<FocalScene> scenes;
    for (const auto& b : branches) scenes.push_back(b.scene);
    if (scenes.empty()) scenes.push_back(scene);
    return [scenes = std::move(scenes)](Point p) {
      double best = scenes.front().residual(p);
      for (std::size_t k = 1; k < scenes.size(); ++k) {
        const double w = scenes[k].residual(p);
        if (std::abs(w) < std::abs(best)) best = w;
      }
      return best;
    };
  }
};

/// eliminate() for a branch, with region half-planes placed first. Region
/// constraints already implied verbatim by the derivation are not repeated.
inline DerivedCurve derive(const Branch& branch) {
  DerivedCurve dc = eliminate(branch.equation);
  std::vector<Constraint> all;
  for (const auto& r : branch.region) {
    const bool duplicate = std::any_of(dc.constraints.begin(), dc.constraints.end(),
                                       [&](const Constraint& c) { return equivalent(c, r); });
    if (!duplicate) all.push_back(r);
  }
  all.insert(all.end(), dc.constraints.begin(), dc.constraints.end());
  dc.constraints = std::move(all);
  return dc;
}

/// One branch per sign region of the scene's directrices (a single branch
/// when there are none).
inline std::vector<Branch> scene_branches(const FocalScene& scene) {
  std::vector<Branch> out;
  for (const auto& eps : scene.sign_regions()) {
    std::string label = "region";
    if (eps.empty()) label = "scene";
    for (int e : eps) label += e > 0 ? " +" : " -";
    out.push_back({label, scene, radical_equation(scene, eps), region_constraints(scene, eps)});
  }
  return out;
}

namespace detail {

inline Poly2 circle_interior(const Rational& cx, const Rational& cy, const Rational& radius2) {
  const Poly2 dx = Poly2::x() - Poly2(cx);
  const Poly2 dy = Poly2::y() - Poly2(cy);
  return Poly2(radius2) - dx * dx - dy * dy;
}

inline Rational exact_sqrt_or_throw(const Rational& q, const std::string& what) {
  auto r = rational_sqrt(q);
  if (!r) throw Error(what + " is not the square of a rational");
  return *r;
}

inline Window square_window(double half) { return {-half, half, -half, half, 512, 512}; }

}  // namespace detail

/// Focus (p/2, 0), directrix x = -p/2: R1 - r1 = 0.
inline FamilyInstance parabola(const Rational& p) {
  if (p <= 0) throw Error("parabola: focal parameter p must be positive");
  const Rational half = p / 2;
  FocalScene scene({exact_focus(half, 0)}, {Number(1)}, {Directrix(Number(1), Number(0), Number(half))},
                   {Number(-1)}, Number(0));
  const SignVector eps{1};
  FamilyInstance f{"parabola", scene, {}, std::nullopt, std::nullopt, detail::square_window(8), ""};
  f.branches.push_back({"x >= -p/2", scene, radical_equation(scene, eps), region_constraints(scene, eps)});
  const Poly2 x = Poly2::x(), y = Poly2::y();
  f.expected_implicit = y * y - Poly2(2 * p) * x;
  f.expected_constraints = std::vector<Constraint>{{x + Poly2(half), Sense::GreaterEqual}};
  f.notes = "p=" + to_string(p) + "; the half-plane x < -p/2 holds no locus points";
  return f;
}

/// Foci (-c, 0), (c, 0) with c^2 = a^2 - b^2: R1 + R2 = 2a.
inline FamilyInstance ellipse(const Rational& a, const Rational& b) {
  if (!(b > 0) || a < b) throw Error("ellipse: need a >= b > 0");
  const Rational c = detail::exact_sqrt_or_throw(a * a - b * b, "ellipse: a^2 - b^2");
  FocalScene scene({exact_focus(-c, 0), exact_focus(c, 0)}, {Number(1), Number(1)}, {}, {}, Number(2 * a));
  const double extent = 1.6 * a.get_d();
  FamilyInstance f{"ellipse", scene, {}, std::nullopt, std::nullopt, detail::square_window(extent), ""};
  f.branches.push_back({"R1 + R2 = 2a", scene, radical_equation(scene, {}), {}});
  const Poly2 x = Poly2::x(), y = Poly2::y();
  f.expected_implicit = Poly2(b * b) * x * x + Poly2(a * a) * y * y - Poly2(a * a * b * b);
  f.expected_constraints = std::vector<Constraint>{{detail::circle_interior(0, 0, a * a + b * b), Sense::GreaterEqual}};
  f.notes = "a=" + to_string(a) + " b=" + to_string(b) + " c=" + to_string(c);
  return f;
}

/// Foci (-c, 0), (c, 0) with c^2 = a^2 + b^2: |R1 - R2| = 2a, one branch per sign.
inline FamilyInstance hyperbola(const Rational& a, const Rational& b) {
  if (!(b > 0) || a < b) throw Error("hyperbola: need a >= b > 0");
  const Rational c = detail::exact_sqrt_or_throw(a * a + b * b, "hyperbola: a^2 + b^2");
  const std::vector<Focus> foci{exact_focus(-c, 0), exact_focus(c, 0)};
  FocalScene right(foci, {Number(1), Number(-1)}, {}, {}, Number(2 * a));
  FocalScene left(foci, {Number(-1), Number(1)}, {}, {}, Number(2 * a));
  FamilyInstance f{"hyperbola", right, {}, std::nullopt, std::nullopt, detail::square_window(10), ""};
  f.branches.push_back({"R1 - R2 = 2a", right, radical_equation(right, {}), {}});
  f.branches.push_back({"R2 - R1 = 2a", left, radical_equation(left, {}), {}});
  const Poly2 x = Poly2::x(), y = Poly2::y();
  f.expected_implicit = Poly2(b * b) * x * x - Poly2(a * a) * y * y - Poly2(a * a * b * b);
  f.expected_constraints =
      std::vector<Constraint>{{x * x + y * y - Poly2(a * a - b * b), Sense::GreaterEqual}};
  f.notes = "a=" + to_string(a) + " b=" + to_string(b) + " c=" + to_string(c);
  return f;
}

/// Single-branch scene R1 - R2 = 2a (no absolute value); its algebraic
/// closure also contains the opposite branch.
inline FamilyInstance hyperbola_branch(const Rational& a, const Rational& b) {
  FamilyInstance f = hyperbola(a, b);
  f.name = "hyperbola_branch";
  f.branches.erase(f.branches.begin() + 1, f.branches.end());
  return f;
}

enum class OvalBranch { Plus, Minus };

/// m R1 +/- n R2 = S with R1 measured to (c, 0) and R2 to (-c, 0).
inline FamilyInstance cartesian_oval(const Rational& c, long m, long n, const Rational& s, OvalBranch branch) {
  if (!(c > 0)) throw Error("cartesian_oval: c must be positive");
  if (m <= 0 || n <= 0) throw Error("cartesian_oval: m and n must be positive integers");
  if (!(s > 0)) throw Error("cartesian_oval: S must be positive");
  const Rational mm = m * m, nn = n * n, sum = mm + nn;
  if (!(s * s * sum > 4 * c * c * mm * nn)) throw Error("cartesian_oval: need S > 2cmn/sqrt(m^2+n^2)");
  if (branch == OvalBranch::Minus && m == n) throw Error("cartesian_oval: minus branch needs m != n");

  const Rational n_weight = branch == OvalBranch::Plus ? Rational(n) : Rational(-n);
  FocalScene scene({exact_focus(c, 0), exact_focus(-c, 0)}, {Number(Rational(m)), Number(n_weight)}, {}, {},
                   Number(s));
  const bool plus = branch == OvalBranch::Plus;
  FamilyInstance f{plus ? "cartesian_oval_plus" : "cartesian_oval_minus", scene, {}, std::nullopt, std::nullopt,
                   detail::square_window(plus ? 5 : 12), ""};
  f.branches.push_back({plus ? "mR1 + nR2 = S" : "mR1 - nR2 = S", scene, radical_equation(scene, {}), {}});

  // Squaring  +/-2mn sqrt(Q1 Q2) = S^2 - (m^2+n^2)(x^2+y^2) + 2c(m^2-n^2)x - c^2(m^2+n^2).
  const Poly2 x = Poly2::x(), y = Poly2::y();
  const Poly2 q1 = (x - Poly2(c)) * (x - Poly2(c)) + y * y;
  const Poly2 q2 = (x + Poly2(c)) * (x + Poly2(c)) + y * y;
  const Poly2 rhs = Poly2(s * s) - Poly2(sum) * (x * x + y * y) + Poly2(2 * c * (mm - nn)) * x - Poly2(c * c * sum);
  f.expected_implicit = rhs * rhs - Poly2(4 * mm * nn) * q1 * q2;

  const Rational cx = c * (mm - nn) / sum;
  const Rational radius2 = (s * s * sum - 4 * c * c * mm * nn) / (sum * sum);
  const Constraint interior(detail::circle_interior(cx, 0, radius2), Sense::GreaterEqual);
  f.expected_constraints = std::vector<Constraint>{plus ? interior : interior.negated_sense()};
  f.notes = "circle center (" + to_string(cx) + ", 0), radius^2 " + to_string(radius2) +
            (plus ? ", oval inside" : ", oval outside");
  return f;
}

/// Foci (p, 0), (q, 0), (0, r): R1 + R2 + R3 = S, with sqrt(Q3) isolated first.
inline FamilyInstance trifocal(const Rational& p, const Rational& q, const Rational& r, const Rational& s) {
  if (!(s > 0)) throw Error("trifocal: S must be positive");
  const Rational rho2_sq = s * s + 2 * p * q + 2 * r * r;
  if (!(rho2_sq > 0)) throw Error("trifocal: empty constraint circle, need S^2 + 2pq + 2r^2 > 0");
  FocalScene scene({exact_focus(p, 0), exact_focus(q, 0), exact_focus(0, r)}, {Number(1), Number(1), Number(1)}, {},
                   {}, Number(s));
  const double spread = std::max({std::abs(p.get_d()), std::abs(q.get_d()), std::abs(r.get_d())});
  FamilyInstance f{"trifocal", scene, {}, std::nullopt, std::nullopt,
                   detail::square_window(std::ceil(spread + s.get_d() / 2 + 1)), ""};
  f.branches.push_back({"R1 + R2 + R3 = S", scene, radical_equation(scene, {}), {}});

  const Poly2 x = Poly2::x(), y = Poly2::y();
  const Poly2 S(s);
  const Poly2 S2 = S * S;
  const Poly2 q1 = (x - Poly2(p)) * (x - Poly2(p)) + y * y;
  const Poly2 q2 = (x - Poly2(q)) * (x - Poly2(q)) + y * y;
  const Poly2 q3 = x * x + (y - Poly2(r)) * (y - Poly2(r));

  // Octic written out literally in x, y.
  const Poly2 inner = S2 + x * x + (y - Poly2(r)).pow(2) - (x - Poly2(q)).pow(2) - (x - Poly2(p)).pow(2) - 2 * y * y;
  f.expected_implicit = 64 * S2 * q1 * q2 * q3 - (inner * inner - 4 * q1 * q2 - 4 * S2 * q3).pow(2);

  // The quartic bounding the last squaring, in expanded form.
  const Poly2 P(p), Q(q), R(r);
  const Poly2 alpha = 3 * x.pow(4) + 6 * x * x * y * y + 3 * y.pow(4) - 4 * (P + Q) * x.pow(3) -
                      4 * R * x * x * y - 4 * (P + Q) * x * y * y - 4 * R * y.pow(3) +
                      2 * (3 * S2 + R * R - P * P + 4 * P * Q - Q * Q) * x * x + 8 * R * (P + Q) * x * y +
                      2 * (3 * S2 + P * P + Q * Q - R * R) * y * y -
                      4 * (P + Q) * (S2 + R * R - (P - Q) * (P - Q)) * x -
                      4 * R * (S2 + P * P + Q * Q - R * R) * y - S2 * S2 + 2 * (P * P + Q * Q + R * R) * S2 +
                      (P + Q + R) * (P + Q - R) * (P - Q + R) * (-P + Q + R);

  f.expected_constraints = std::vector<Constraint>{
      {detail::circle_interior(0, r, s * s), Sense::GreaterEqual},
      {detail::circle_interior(p + q, -r, rho2_sq), Sense::GreaterEqual},
      {alpha, Sense::LessEqual},
  };
  f.notes = "rho1^2 = " + to_string(Rational(s * s)) + " about (0, " + to_string(r) + "); rho2^2 = " +
            to_string(rho2_sq) + " about (" + to_string(Rational(p + q)) + ", " + to_string(Rational(-r)) + ")";
  return f;
}

/// Float-only three-focus scene R1 + R2 + R3 = S (irrational geometry, tracing only).
inline FocalScene trifocal_scene(Point f1, Point f2, Point f3, double s) {
  return FocalScene({numeric_focus(f1.x, f1.y), numeric_focus(f2.x, f2.y), numeric_focus(f3.x, f3.y)},
                    {Number(1), Number(1), Number(1)}, {}, {}, Number::inexact(s));
}

namespace detail {

inline FocalScene erdos_mordell_scene(const std::array<Focus, 3>& v) {
  // Directrix j is the side opposite vertex j, oriented toward it.
  std::vector<Directrix> sides{directrix_through(v[1], v[2], v[0]), directrix_through(v[2], v[0], v[1]),
                               directrix_through(v[0], v[1], v[2])};
  return FocalScene({v[0], v[1], v[2]}, {Number(1), Number(1), Number(1)}, std::move(sides),
                    {Number(-2), Number(-2), Number(-2)}, Number(0));
}

inline Window padded_window(const std::array<Point, 3>& v, double pad_factor) {
  double xmin = v[0].x, xmax = v[0].x, ymin = v[0].y, ymax = v[0].y;
  for (const auto& p : v) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  const double pad = pad_factor * std::max(xmax - xmin, ymax - ymin);
  return {xmin - pad, xmax + pad, ymin - pad, ymax + pad, 512, 512};
}

}  // namespace detail

/// R_A + R_B + R_C - 2(r_a + r_b + r_c) = 0 for triangle vertices A, B, C and
/// inward-oriented side lines. Symbolic branches (one per sign region) exist
/// only when every side normal has rational length.
inline FamilyInstance erdos_mordell(const Rational& ax, const Rational& ay, const Rational& bx, const Rational& by,
                                    const Rational& cx, const Rational& cy) {
  const std::array<Focus, 3> v{exact_focus(ax, ay), exact_focus(bx, by), exact_focus(cx, cy)};
  FocalScene scene = detail::erdos_mordell_scene(v);
  const std::array<Point, 3> pts{v[0].point(), v[1].point(), v[2].point()};
  FamilyInstance f{"erdos_mordell", scene, {}, std::nullopt, std::nullopt, detail::padded_window(pts, 0.6), ""};
  const bool rational_sides = std::all_of(scene.directrices().begin(), scene.directrices().end(),
                                          [](const Directrix& d) { return rational_sqrt(d.norm2()).has_value(); });
  if (rational_sides) {
    f.branches = scene_branches(scene);
    f.notes = "8 sign regions";
  } else {
    f.notes = "side normals are irrational: numeric-only instance";
  }
  return f;
}

inline FamilyInstance erdos_mordell_numeric(Point a, Point b, Point c) {
  const std::array<Focus, 3> v{numeric_focus(a.x, a.y), numeric_focus(b.x, b.y), numeric_focus(c.x, c.y)};
  FamilyInstance f{"erdos_mordell", detail::erdos_mordell_scene(v), {}, std::nullopt, std::nullopt,
                   detail::padded_window({a, b, c}, 0.6), "numeric-only instance"};
  return f;
}

/// Any exact scene: one branch per directrix sign region.
inline FamilyInstance from_scene(const FocalScene& scene, Window window) {
  FamilyInstance f{"scene", scene, {}, std::nullopt, std::nullopt, window, ""};
  if (scene.is_exact()) {
    try {
      f.branches = scene_branches(scene);
    } catch (const UnsupportedError& e) {
      f.notes = std::string(e.what()) + ": numeric-only instance";
    }
  } else {
    f.notes = "inexact parameters: numeric-only instance";
  }
  return f;
}

struct FermatPoint {
  Point point;
  double value = 0.0;
};

/// Minimizer of R1 + R2 + R3 by Weiszfeld iteration seeded at the centroid;
/// vertex optima are caught by comparing against the value at each focus.
inline FermatPoint fermat_torricelli(Point a, Point b, Point c) {
  const std::array<Point, 3> v{a, b, c};
  auto f = [&](Point p) { return distance(p, v[0]) + distance(p, v[1]) + distance(p, v[2]); };
  if (a == b && b == c) throw Error("fermat_torricelli: foci all coincide");

  Point x{(a.x + b.x + c.x) / 3, (a.y + b.y + c.y) / 3};
  constexpr double kSnap = 1e-12;
  for (int iter = 0; iter < 100000; ++iter) {
    double wx = 0, wy = 0, wsum = 0;
    bool at_focus = false;
    for (const auto& p : v) {
      const double d = distance(x, p);
      if (d < kSnap) {
        at_focus = true;
        break;
      }
      wx += p.x / d;
      wy += p.y / d;
      wsum += 1 / d;
    }
    if (at_focus) break;
    const Point next{wx / wsum, wy / wsum};
    const double step = distance(next, x);
    x = next;
    if (step <= 1e-15 * std::max(1.0, std::hypot(x.x, x.y))) break;
  }

  FermatPoint best{x, f(x)};
  for (const auto& p : v) {
    const double fp = f(p);
    if (fp < best.value) best = {p, fp};
  }
  return best;
}

/// Fermat-Torricelli point of the trifocal foci (p, 0), (q, 0), (0, r).
inline FermatPoint trifocal_fermat_point(const Rational& p, const Rational& q, const Rational& r) {
  return fermat_torricelli(Point{p.get_d(), 0}, Point{q.get_d(), 0}, Point{0, r.get_d()});
}

}  // namespace weber
