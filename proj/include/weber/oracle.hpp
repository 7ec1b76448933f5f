#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "weber/eliminate.hpp"
#include "weber/error.hpp"
#include "weber/geometry.hpp"
#include "weber/scene.hpp"

namespace weber {

// Brute-force locus finder. Deliberately self-contained: it only evaluates the
// residual and never looks at derived polynomials or the tracer.

struct OraclePoint {
  Point point;
  double abs_residual = 0.0;
};

struct OraclePointSet {
  std::vector<OraclePoint> points;
  Window window;
  double tol = 0.0;

  bool empty() const { return points.empty(); }
  std::vector<Point> positions() const {
    std::vector<Point> out;
    out.reserve(points.size());
    for (const auto& p : points) out.push_back(p.point);
    return out;
  }
};

inline OraclePointSet oracle_points(const ResidualFn& w, const Window& win, double tol) {
  win.validate();
  if (!(tol > 0)) throw Error("oracle: tol must be positive");
  OraclePointSet out{{}, win, tol};
  const double merge_radius = 0.5 * win.cell_diagonal();

  // Spatial hash with buckets of merge_radius so duplicates are found in the
  // 3x3 neighbourhood.
  std::unordered_map<std::int64_t, std::vector<std::size_t>> buckets;
  auto key = [&](std::int64_t bx, std::int64_t by) { return bx * 1000003 + by; };
  auto bucket_of = [&](Point p) {
    return std::pair<std::int64_t, std::int64_t>{static_cast<std::int64_t>(std::floor((p.x - win.xmin) / merge_radius)),
                                                 static_cast<std::int64_t>(std::floor((p.y - win.ymin) / merge_radius))};
  };
  auto insert = [&](Point p, double r) {
    const auto [bx, by] = bucket_of(p);
    for (std::int64_t ox = -1; ox <= 1; ++ox)
      for (std::int64_t oy = -1; oy <= 1; ++oy) {
        auto it = buckets.find(key(bx + ox, by + oy));
        if (it == buckets.end()) continue;
        for (std::size_t idx : it->second)
          if (distance(out.points[idx].point, p) < merge_radius) return;
      }
    buckets[key(bx, by)].push_back(out.points.size());
    out.points.push_back({p, r});
  };

  // Bisect a bracketing interval until |w| <= tol.
  auto refine = [&](Point a, double wa, Point b) {
    for (int k = 0; k < 200; ++k) {
      const Point m{0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
      const double wm = w(m);
      if (std::abs(wm) <= tol) return insert(m, std::abs(wm));
      if (m == a || m == b) return;
      if ((wm < 0) == (wa < 0)) {
        a = m;
        wa = wm;
      } else {
        b = m;
      }
    }
  };

  const std::size_t nx = win.nx, ny = win.ny;
  std::vector<double> xs(nx + 1), ys(ny + 1);
  for (std::size_t i = 0; i <= nx; ++i) xs[i] = win.xmin + (win.xmax - win.xmin) * static_cast<double>(i) / nx;
  for (std::size_t j = 0; j <= ny; ++j) ys[j] = win.ymin + (win.ymax - win.ymin) * static_cast<double>(j) / ny;

  // Rows.
  for (std::size_t j = 0; j <= ny; ++j) {
    double prev = w({xs[0], ys[j]});
    for (std::size_t i = 1; i <= nx; ++i) {
      const double cur = w({xs[i], ys[j]});
      if (std::abs(prev) <= tol) insert({xs[i - 1], ys[j]}, std::abs(prev));
      else if ((prev < 0) != (cur < 0) && std::abs(cur) > tol) refine({xs[i - 1], ys[j]}, prev, {xs[i], ys[j]});
      prev = cur;
    }
    if (std::abs(prev) <= tol) insert({xs[nx], ys[j]}, std::abs(prev));
  }
  // Columns.
  for (std::size_t i = 0; i <= nx; ++i) {
    double prev = w({xs[i], ys[0]});
    for (std::size_t j = 1; j <= ny; ++j) {
      const double cur = w({xs[i], ys[j]});
      if ((prev < 0) != (cur < 0) && std::abs(prev) > tol && std::abs(cur) > tol)
        refine({xs[i], ys[j - 1]}, prev, {xs[i], ys[j]});
      prev = cur;
    }
  }
  return out;
}

inline OraclePointSet oracle_points(const FocalScene& scene, const Window& win, double tol) {
  return oracle_points([&scene](Point p) { return scene.residual(p); }, win, tol);
}

struct Offender {
  Point point;
  double implicit_value = 0.0;
  /// Index of the first violated constraint, or -1 when only the implicit failed.
  int constraint = -1;
};

struct VerificationReport {
  std::size_t total = 0;
  std::size_t passed = 0;
  std::size_t implicit_failures = 0;
  /// Failures per constraint, aligned with the derived constraint list.
  std::vector<std::size_t> constraint_failures;
  std::vector<Offender> worst;

  bool all_passed() const { return total > 0 && passed == total; }
  double pass_rate() const { return total ? static_cast<double>(passed) / static_cast<double>(total) : 0.0; }
};

/// Checks every oracle point against the implicit curve (|f| <= tol (|grad f| + 1))
/// and every constraint (slack relative to the constraint's coefficient scale).
inline VerificationReport verify_derivation(const DerivedCurve& dc, const OraclePointSet& ops, double tol = 1e-6,
                                            double slack = 1e-9) {
  if (ops.empty()) throw Error("verify_derivation: no oracle points");
  const CompiledPoly2 f(dc.implicit);
  VerificationReport rep;
  rep.constraint_failures.assign(dc.constraints.size(), 0);
  for (const auto& op : ops.points) {
    ++rep.total;
    const Point p = op.point;
    bool ok = true;
    int first_bad = -1;
    if (!near_zero_set(f, p, tol)) {
      ++rep.implicit_failures;
      ok = false;
    }
    for (std::size_t k = 0; k < dc.constraints.size(); ++k) {
      if (!dc.constraints[k].holds(p, slack)) {
        ++rep.constraint_failures[k];
        if (first_bad < 0) first_bad = static_cast<int>(k);
        ok = false;
      }
    }
    if (ok) {
      ++rep.passed;
    } else if (rep.worst.size() < 10) {
      rep.worst.push_back({p, f(p.x, p.y), first_bad});
    }
  }
  return rep;
}

/// A point passes when at least one branch derivation accepts it; the locus
/// of a multi-branch family is the union of its branch loci.
inline VerificationReport verify_branches(const std::vector<DerivedCurve>& curves, const OraclePointSet& ops,
                                          double tol = 1e-6, double slack = 1e-9) {
  if (ops.empty()) throw Error("verify_derivation: no oracle points");
  if (curves.empty()) throw Error("verify_branches: no derivations");
  std::vector<CompiledPoly2> fs;
  for (const auto& dc : curves) fs.emplace_back(dc.implicit);
  VerificationReport rep;
  for (const auto& op : ops.points) {
    ++rep.total;
    bool ok = false;
    bool on_some_implicit = false;
    for (std::size_t b = 0; b < curves.size() && !ok; ++b) {
      if (!near_zero_set(fs[b], op.point, tol)) continue;
      on_some_implicit = true;
      ok = satisfies_constraints(curves[b], op.point, slack);
    }
    if (ok) {
      ++rep.passed;
      continue;
    }
    if (!on_some_implicit) ++rep.implicit_failures;
    if (rep.worst.size() < 10) rep.worst.push_back({op.point, fs.front()(op.point.x, op.point.y), -1});
  }
  return rep;
}

}  // namespace weber
