#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "weber/families.hpp"
#include "weber/trace.hpp"

using namespace weber;

namespace {

ArcSet trace_family(const FamilyInstance& f, const Window& win, double tol = 1e-6) {
  ArcSet all;
  for (const auto& b : f.branches)
    all.merge(trace_implicit(derive(b), [&](Point p) { return b.scene.residual(p); }, win, tol));
  return all;
}

double nearest(const std::vector<Point>& pts, Point q) {
  double best = INFINITY;
  for (const auto& p : pts) best = std::min(best, distance(p, q));
  return best;
}

std::vector<FamilyInstance> constant_rhs_families() {
  return {ellipse(5, 4), hyperbola(4, 3), cartesian_oval(1, 2, 1, 5, OvalBranch::Plus),
          cartesian_oval(1, 2, 1, 5, OvalBranch::Minus), trifocal(-1, 1, 1, 5)};
}

std::vector<FamilyInstance> all_families() {
  auto out = constant_rhs_families();
  out.push_back(parabola(2));
  out.push_back(erdos_mordell(0, 0, 4, 0, 0, 3));
  return out;
}

}  // namespace

TEST(TraceImplicit, EllipseClosedCurve) {
  const FamilyInstance f = ellipse(5, 4);
  const Window win{-8, 8, -8, 8, 512, 512};
  const ArcSet arcs = trace_family(f, win);
  ASSERT_EQ(arcs.arcs.size(), 1u);
  EXPECT_TRUE(arcs.arcs[0].closed);
  EXPECT_LE(arcs.stats.max_abs_residual, 1e-6);
  for (const auto& p : arcs.vertices()) ASSERT_LE(p.x * p.x + p.y * p.y, 41.0);
  std::vector<Point> param;
  for (int k = 0; k < 2000; ++k) {
    const double t = 2 * std::numbers::pi * k / 2000;
    param.push_back({5 * std::cos(t), 4 * std::sin(t)});
  }
  for (const auto& p : arcs.vertices()) ASSERT_LE(nearest(param, p), 2 * win.cell_diagonal());
  EXPECT_NEAR(arcs.stats.total_length, 28.3617, 0.01);  // perimeter of the 5x4 ellipse
}

TEST(TraceImplicit, HyperbolaTwoOpenBranches) {
  const FamilyInstance f = hyperbola(4, 3);
  const ArcSet arcs = trace_family(f, {-8, 8, -8, 8, 512, 512});
  ASSERT_EQ(arcs.arcs.size(), 2u);
  for (const auto& a : arcs.arcs) EXPECT_FALSE(a.closed);
  for (const auto& p : arcs.vertices()) ASSERT_GE(p.x * p.x + p.y * p.y, 7.0);
}

TEST(TraceImplicit, OvalMinusRejectsMirror) {
  const FamilyInstance f = cartesian_oval(1, 2, 1, 5, OvalBranch::Minus);
  const ArcSet arcs = trace_family(f, f.window);
  ASSERT_FALSE(arcs.empty());
  for (const auto& p : arcs.vertices()) ASSERT_LE(std::abs(f.scene.residual(p)), 1e-6);
  ASSERT_FALSE(arcs.zariski_rejects.empty());
  // Rejected points lie on the plus oval 2 R1 + R2 = 5.
  const FocalScene plus = cartesian_oval(1, 2, 1, 5, OvalBranch::Plus).scene;
  for (const auto& r : arcs.zariski_rejects) {
    ASSERT_GT(r.residual, 1e-6);
    ASSERT_LE(std::abs(plus.residual(r.point)), 1e-6);
  }
}

TEST(TraceResidual, TrifocalEgg) {
  const FamilyInstance f = trifocal(-1, 1, 1, 5);
  const ArcSet arcs = trace_residual(f.scene, f.window, 1e-6);
  ASSERT_EQ(arcs.arcs.size(), 1u);
  EXPECT_TRUE(arcs.arcs[0].closed);
}

TEST(TraceResidual, EquilateralBelowThresholdEmpty) {
  const FocalScene s = trifocal_scene({-1, 0}, {1, 0}, {0, std::sqrt(3.0)}, 3.4);
  EXPECT_TRUE(trace_residual(s, {-2, 2, -1.5, 2.5, 512, 512}, 1e-6).empty());
}

TEST(TraceResidual, ParabolaMatchesSamples) {
  const FamilyInstance f = parabola(2);
  const Window win = f.window;
  const ArcSet arcs = trace_residual(f.scene, win, 1e-6);
  ASSERT_EQ(arcs.arcs.size(), 1u);
  EXPECT_FALSE(arcs.arcs[0].closed);
  std::vector<Point> samples;
  for (int k = -4000; k <= 4000; ++k) {
    const double y = 8.0 * k / 4000;
    samples.push_back({y * y / 4, y});
  }
  for (const auto& p : arcs.vertices()) ASSERT_LE(nearest(samples, p), 2 * win.cell_diagonal());
}

TEST(TraceZeroSet, Circle) {
  const Poly2 c = Poly2::x() * Poly2::x() + Poly2::y() * Poly2::y() - Poly2(4);
  const ArcSet arcs = trace_zero_set(c, {-3, 3, -3, 3, 128, 128});
  ASSERT_EQ(arcs.arcs.size(), 1u);
  EXPECT_NEAR(arcs.stats.total_length, 4 * std::numbers::pi, 0.01);
}

TEST(Trace, SaddleCellsDoNotCrossLinks) {
  // x*y = 0 through cell centres and corners: two straight lines.
  const Poly2 cross = Poly2::x() * Poly2::y();
  const ArcSet arcs = trace_zero_set(cross, {-1.05, 0.95, -1.05, 0.95, 40, 40});
  EXPECT_GE(arcs.arcs.size(), 2u);
  for (const auto& p : arcs.vertices()) ASSERT_LT(std::min(std::abs(p.x), std::abs(p.y)), 1e-12);
}

TEST(Trace, DegenerateWindow) {
  const FamilyInstance f = ellipse(5, 4);
  EXPECT_THROW(trace_residual(f.scene, {1, 1, -1, 1, 16, 16}, 1e-6), Error);
  EXPECT_THROW(trace_residual(f.scene, {-1, 1, 2, -2, 16, 16}, 1e-6), Error);
  EXPECT_THROW(trace_residual(f.scene, {-1, 1, -1, 1, 1, 16}, 1e-6), Error);
  EXPECT_THROW(trace_family(f, {-1, 1, 1, 1, 16, 16}), Error);
}

TEST(Hausdorff, Examples) {
  const std::vector<Point> a{{0, 0}, {1, 1}};
  EXPECT_EQ(hausdorff(a, a), 0.0);
  EXPECT_EQ(hausdorff(std::vector<Point>{{0, 0}}, std::vector<Point>{{3, 4}}), 5.0);
  EXPECT_EQ(hausdorff(std::vector<Point>{{0, 0}}, std::vector<Point>{{0, 0}, {0, 2}}), 2.0);
  EXPECT_THROW(hausdorff(std::vector<Point>{}, a), Error);
  EXPECT_THROW(hausdorff(a, std::vector<Point>{}), Error);
}

TEST(TraceProperty, ImplicitAgreesWithResidual) {
  for (const auto& f : constant_rhs_families()) {
    const Window win = f.window;
    const auto implicit = trace_family(f, win).vertices();
    const auto direct = trace_residual(f.residual_fn(), win, 1e-6).vertices();
    ASSERT_FALSE(implicit.empty()) << f.name;
    ASSERT_LE(hausdorff(implicit, direct), 2 * win.cell_diagonal()) << f.name;
  }
}

TEST(TraceProperty, KeptVerticesSatisfyResidual) {
  for (const auto& f : all_families()) {
    const double tol = 1e-6;
    const ArcSet arcs = trace_family(f, f.window, tol);
    const auto w = f.residual_fn();
    for (const auto& a : arcs.arcs) {
      ASSERT_GE(a.points.size(), 2u);
      for (const auto& p : a.points) ASSERT_LE(std::abs(w(p)), tol) << f.name;
    }
    const ArcSet direct = trace_residual(w, f.window, tol);
    for (const auto& p : direct.vertices()) ASSERT_LE(std::abs(w(p)), tol) << f.name;
  }
}

TEST(TraceProperty, ZariskiSeparation) {
  const FamilyInstance f = hyperbola_branch(4, 3);
  const ArcSet arcs = trace_family(f, f.window);
  const FocalScene& s = f.scene;
  auto gap = [&](Point p) { return s.focal_distance(0, p) - s.focal_distance(1, p); };
  ASSERT_FALSE(arcs.empty());
  for (const auto& p : arcs.vertices()) ASSERT_GT(gap(p), 0);
  const bool mirror = std::any_of(arcs.zariski_rejects.begin(), arcs.zariski_rejects.end(),
                                  [&](const RejectedPoint& r) { return gap(r.point) < 0; });
  EXPECT_TRUE(mirror);
}

TEST(TraceProperty, ResolutionConvergence) {
  // Kept vertices sit at the bisection limit, so max |w| is round-off at both
  // resolutions; it is compared against a floor of a few ulps of the scene
  // scale rather than strictly.
  for (const auto& f : all_families()) {
    const Window coarse = f.window.with_resolution(256, 256);
    const Window fine = f.window.with_resolution(512, 512);
    const ArcSet a = trace_family(f, coarse), b = trace_family(f, fine);
    const double floor = 1e-13 * (1 + std::abs(f.scene.threshold().value()) + f.window.xmax - f.window.xmin);
    EXPECT_LE(b.stats.max_abs_residual, std::max(a.stats.max_abs_residual, floor)) << f.name;
    EXPECT_GE(b.stats.total_length, 0.99 * a.stats.total_length) << f.name;
  }
}

TEST(TraceRegression, EquilateralErdosMordellArches) {
  // Empirical: one closed contour whose vertices pass through six distinct
  // directrix sign regions, i.e. six arches of region-wise algebraic curves.
  const FamilyInstance f = erdos_mordell_numeric({-1, 0}, {1, 0}, {0, std::sqrt(3.0)});
  for (std::size_t n : {256, 512}) {
    const ArcSet arcs = trace_residual(f.scene, f.window.with_resolution(n, n), 1e-6);
    ASSERT_EQ(arcs.arcs.size(), 1u);
    const Polyline& line = arcs.arcs[0];
    ASSERT_TRUE(line.closed);
    int changes = 0;
    SignVector prev = f.scene.sign_vector(line.points.back());
    for (const auto& p : line.points) {
      const SignVector s = f.scene.sign_vector(p);
      if (s != prev) ++changes;
      prev = s;
    }
    EXPECT_EQ(changes, 6) << n;
  }
}

TEST(TraceRegression, RightTriangleErdosMordellComponents) {
  // Reported, not a claim: the curve leaves the default window, which clips it
  // into open arcs. The per-region implicit trace splits them further at the
  // side lines.
  const FamilyInstance f = erdos_mordell(0, 0, 4, 0, 0, 3);
  const ArcSet arcs = trace_residual(f.scene, f.window, 1e-6);
  EXPECT_EQ(arcs.arcs.size(), 3u);
  for (const auto& a : arcs.arcs) EXPECT_FALSE(a.closed);
}
