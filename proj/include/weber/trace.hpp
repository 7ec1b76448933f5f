#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "weber/eliminate.hpp"
#include "weber/error.hpp"
#include "weber/geometry.hpp"
#include "weber/poly2.hpp"
#include "weber/scene.hpp"

namespace weber {

struct Polyline {
  std::vector<Point> points;
  bool closed = false;

  double length() const {
    double len = 0.0;
    for (std::size_t k = 1; k < points.size(); ++k) len += distance(points[k - 1], points[k]);
    if (closed && points.size() > 2) len += distance(points.back(), points.front());
    return len;
  }
};

struct RejectedPoint {
  Point point;
  /// abs(w) at the point.
  double residual = 0.0;
};

struct ArcStats {
  std::size_t crossings = 0;
  std::size_t rejected = 0;
  std::size_t segments = 0;
  std::size_t vertices = 0;
  double max_abs_residual = 0.0;
  double total_length = 0.0;
};

/// Verified locus polylines plus the curve points that failed verification.
struct ArcSet {
  std::vector<Polyline> arcs;
  std::vector<RejectedPoint> zariski_rejects;
  ArcStats stats;

  bool empty() const { return arcs.empty(); }

  std::vector<Point> vertices() const {
    std::vector<Point> out;
    for (const auto& a : arcs) out.insert(out.end(), a.points.begin(), a.points.end());
    return out;
  }

  /// Appends another set, e.g. the arcs of a second branch.
  void merge(ArcSet other) {
    for (auto& a : other.arcs) arcs.push_back(std::move(a));
    for (auto& r : other.zariski_rejects) zariski_rejects.push_back(r);
    stats.crossings += other.stats.crossings;
    stats.rejected += other.stats.rejected;
    stats.segments += other.stats.segments;
    stats.vertices += other.stats.vertices;
    stats.max_abs_residual = std::max(stats.max_abs_residual, other.stats.max_abs_residual);
    stats.total_length += other.stats.total_length;
  }
};

namespace detail {

struct Verdict {
  bool accepted = false;
  double residual = 0.0;
};

constexpr int kMaxBisections = 60;

template <class Field>
Point bisect_edge(const Field& f, Point a, double fa, Point b) {
  const bool neg_a = fa < 0.0;
  for (int k = 0; k < kMaxBisections; ++k) {
    const Point mid{0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
    if (mid == a || mid == b) break;
    const double fm = f(mid.x, mid.y);
    if ((fm < 0.0) == neg_a) {
      a = mid;
    } else {
      b = mid;
    }
  }
  return {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
}

/// Marching squares on `field` over `win`. Each sign-changing grid edge is
/// refined by bisection and judged once by `judge`; a cell segment is kept
/// only when both of its crossings are accepted. Segments are chained by grid
/// edge identity.
template <class Field, class Judge>
ArcSet march(const Window& win, const Field& field, const Judge& judge) {
  win.validate();
  const std::size_t nx = win.nx, ny = win.ny;
  const std::size_t stride = nx + 1;
  const double dx = win.dx(), dy = win.dy();

  // Node values, row by row; rows are independent.
  std::vector<double> value(stride * (ny + 1));
  std::vector<double> xs(stride), ys(ny + 1);
  for (std::size_t i = 0; i <= nx; ++i) xs[i] = win.x_at(i);
  for (std::size_t j = 0; j <= ny; ++j) ys[j] = win.y_at(j);
  for (std::size_t j = 0; j <= ny; ++j)
    for (std::size_t i = 0; i <= nx; ++i) value[j * stride + i] = field(xs[i], ys[j]);

  auto node = [&](std::size_t i, std::size_t j) { return value[j * stride + i]; };
  auto negative = [](double v) { return v < 0.0; };

  // Edge ids: horizontal (i, j) -> j * nx + i; vertical (i, j) -> H + j * stride + i.
  const std::size_t horizontal = nx * (ny + 1);
  const std::size_t edge_count = horizontal + stride * ny;
  constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> crossing_of(edge_count, kNone);
  std::vector<Point> crossing_point;
  std::vector<Verdict> verdict;

  ArcSet out;
  auto add_crossing = [&](std::size_t edge, Point a, double fa, Point b) {
    const Point p = bisect_edge(field, a, fa, b);
    const Verdict v = judge(p);
    crossing_of[edge] = static_cast<std::uint32_t>(crossing_point.size());
    crossing_point.push_back(p);
    verdict.push_back(v);
    ++out.stats.crossings;
    if (!v.accepted) {
      out.zariski_rejects.push_back({p, std::abs(v.residual)});
      ++out.stats.rejected;
    }
  };

  for (std::size_t j = 0; j <= ny; ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      const double a = node(i, j), b = node(i + 1, j);
      if (std::isnan(a) || std::isnan(b) || negative(a) == negative(b)) continue;
      add_crossing(j * nx + i, {xs[i], ys[j]}, a, {xs[i + 1], ys[j]});
    }
  }
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i <= nx; ++i) {
      const double a = node(i, j), b = node(i, j + 1);
      if (std::isnan(a) || std::isnan(b) || negative(a) == negative(b)) continue;
      add_crossing(horizontal + j * stride + i, {xs[i], ys[j]}, a, {xs[i], ys[j + 1]});
    }
  }

  // Cell segments as pairs of edge ids.
  std::vector<std::array<std::size_t, 2>> segments;
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      // bottom, right, top, left
      const std::array<std::size_t, 4> edges{j * nx + i, horizontal + j * stride + i + 1, (j + 1) * nx + i,
                                             horizontal + j * stride + i};
      std::array<std::size_t, 4> hit{};
      std::size_t count = 0;
      for (std::size_t e = 0; e < 4; ++e)
        if (crossing_of[edges[e]] != kNone) hit[count++] = e;
      if (count < 2) continue;

      std::array<std::array<std::size_t, 2>, 2> pairs{};
      std::size_t npairs = 0;
      if (count == 2) {
        pairs[npairs++] = {edges[hit[0]], edges[hit[1]]};
      } else if (count == 4) {
        const double center = field(xs[i] + 0.5 * dx, ys[j] + 0.5 * dy);
        if (negative(center) == negative(node(i, j))) {
          pairs[npairs++] = {edges[0], edges[1]};
          pairs[npairs++] = {edges[2], edges[3]};
        } else {
          pairs[npairs++] = {edges[3], edges[0]};
          pairs[npairs++] = {edges[1], edges[2]};
        }
      } else {
        continue;  // odd count only with NaN corners
      }
      for (std::size_t k = 0; k < npairs; ++k) {
        const auto [e1, e2] = pairs[k];
        if (verdict[crossing_of[e1]].accepted && verdict[crossing_of[e2]].accepted) segments.push_back({e1, e2});
      }
    }
  }
  out.stats.segments = segments.size();

  // Chain segments through shared edges; every edge touches at most two.
  std::vector<std::array<std::uint32_t, 2>> touching(crossing_point.size(), {kNone, kNone});
  for (std::size_t s = 0; s < segments.size(); ++s) {
    for (std::size_t e : segments[s]) {
      auto& slot = touching[crossing_of[e]];
      (slot[0] == kNone ? slot[0] : slot[1]) = static_cast<std::uint32_t>(s);
    }
  }
  auto other_segment = [&](std::size_t edge, std::size_t from) -> std::uint32_t {
    const auto& slot = touching[crossing_of[edge]];
    return slot[0] == from ? slot[1] : slot[0];
  };
  auto other_edge = [&](std::size_t seg, std::size_t edge) {
    return segments[seg][0] == edge ? segments[seg][1] : segments[seg][0];
  };

  std::vector<bool> used(segments.size(), false);
  for (std::size_t start = 0; start < segments.size(); ++start) {
    if (used[start]) continue;
    used[start] = true;
    std::vector<std::size_t> forward{segments[start][0], segments[start][1]};
    bool closed = false;
    for (std::size_t seg = start;;) {
      const std::size_t edge = forward.back();
      const std::uint32_t next = other_segment(edge, seg);
      if (next == kNone || used[next]) break;
      used[next] = true;
      const std::size_t far = other_edge(next, edge);
      seg = next;
      if (far == forward.front()) {
        closed = true;
        break;
      }
      forward.push_back(far);
    }
    std::vector<std::size_t> backward;
    if (!closed) {
      for (std::size_t seg = start;;) {
        const std::size_t edge = backward.empty() ? forward.front() : backward.back();
        const std::uint32_t next = other_segment(edge, seg);
        if (next == kNone || used[next]) break;
        used[next] = true;
        backward.push_back(other_edge(next, edge));
        seg = next;
      }
    }
    Polyline line;
    line.closed = closed;
    for (auto it = backward.rbegin(); it != backward.rend(); ++it) line.points.push_back(crossing_point[crossing_of[*it]]);
    for (std::size_t e : forward) line.points.push_back(crossing_point[crossing_of[e]]);
    for (const auto* side : {&backward, &forward})
      for (std::size_t e : *side)
        out.stats.max_abs_residual = std::max(out.stats.max_abs_residual, std::abs(verdict[crossing_of[e]].residual));
    out.stats.vertices += line.points.size();
    out.stats.total_length += line.length();
    out.arcs.push_back(std::move(line));
  }
  return out;
}

}  // namespace detail

/// Marching squares on the implicit polynomial. A crossing is kept only when
/// it satisfies every constraint (slack 1e-9 relative to each constraint's
/// coefficient scale) and its focal residual is within tol; everything else on
/// the algebraic curve lands in zariski_rejects.
inline ArcSet trace_implicit(const DerivedCurve& dc, const ResidualFn& residual, const Window& win, double tol) {
  if (!(tol > 0)) throw Error("trace: tol must be positive");
  if (dc.implicit.is_zero()) throw Error("trace: zero implicit polynomial");
  const CompiledPoly2 f(dc.implicit);
  constexpr double kSlack = 1e-9;
  return detail::march(win, f, [&](Point p) {
    const double w = residual(p);
    return detail::Verdict{satisfies_constraints(dc, p, kSlack) && std::abs(w) <= tol, w};
  });
}

/// Marching squares directly on a residual field; no constraints involved.
inline ArcSet trace_residual(const ResidualFn& residual, const Window& win, double tol) {
  if (!(tol > 0)) throw Error("trace: tol must be positive");
  auto field = [&](double x, double y) { return residual({x, y}); };
  return detail::march(win, field, [&](Point p) {
    const double w = residual(p);
    return detail::Verdict{std::abs(w) <= tol, w};
  });
}

inline ArcSet trace_residual(const FocalScene& scene, const Window& win, double tol) {
  return trace_residual([&scene](Point p) { return scene.residual(p); }, win, tol);
}

/// Zero set of an arbitrary polynomial, unfiltered (used for overlays).
inline ArcSet trace_zero_set(const Poly2& poly, const Window& win) {
  const CompiledPoly2 f(poly);
  return detail::march(win, f, [](Point) { return detail::Verdict{true, 0.0}; });
}

/// Symmetric Hausdorff distance between two finite point sets.
inline double hausdorff(std::span<const Point> a, std::span<const Point> b) {
  if (a.empty() || b.empty()) throw Error("hausdorff: empty point set");
  auto directed = [](std::span<const Point> from, std::span<const Point> to) {
    double worst = 0.0;
    for (const auto& p : from) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& q : to) {
        const double d2 = (p.x - q.x) * (p.x - q.x) + (p.y - q.y) * (p.y - q.y);
        if (d2 < best) {
          best = d2;
          if (best <= worst) break;
        }
      }
      worst = std::max(worst, best);
    }
    return std::sqrt(worst);
  };
  return std::max(directed(a, b), directed(b, a));
}

}  // namespace weber
