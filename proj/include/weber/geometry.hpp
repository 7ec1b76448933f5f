#pragma once

#include <cmath>
#include <cstddef>
#include <functional>

#include "weber/error.hpp"

namespace weber {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

inline double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

/// Any scalar field on the plane; the focal residual is the usual one.
using ResidualFn = std::function<double(Point)>;

/// Axis-aligned sampling window split into nx by ny cells.
struct Window {
  double xmin = -1.0;
  double xmax = 1.0;
  double ymin = -1.0;
  double ymax = 1.0;
  std::size_t nx = 512;
  std::size_t ny = 512;

  void validate() const {
    if (!(xmin < xmax) || !(ymin < ymax)) throw Error("degenerate window");
    if (nx < 2 || ny < 2) throw Error("degenerate window: need at least 2 cells per axis");
    if (!std::isfinite(xmin) || !std::isfinite(xmax) || !std::isfinite(ymin) ||
        !std::isfinite(ymax))
      throw Error("degenerate window: non-finite bounds");
  }

  double dx() const { return (xmax - xmin) / static_cast<double>(nx); }
  double dy() const { return (ymax - ymin) / static_cast<double>(ny); }
  double cell_diagonal() const { return std::hypot(dx(), dy()); }
  double x_at(std::size_t i) const { return xmin + dx() * static_cast<double>(i); }
  double y_at(std::size_t j) const { return ymin + dy() * static_cast<double>(j); }

  Window with_resolution(std::size_t cols, std::size_t rows) const {
    Window w = *this;
    w.nx = cols;
    w.ny = rows;
    return w;
  }
};

}  // namespace weber
