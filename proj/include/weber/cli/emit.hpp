#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "weber/eliminate.hpp"
#include "weber/geometry.hpp"
#include "weber/trace.hpp"

namespace weber::cli {

inline std::string fmt_double(double v, int digits = 17) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

/// "arc_id,x,y,residual", one row per vertex, arcs in discovery order.
inline void write_csv(std::ostream& os, const ArcSet& arcs, const ResidualFn& residual) {
  os << "arc_id,x,y,residual\n";
  for (std::size_t a = 0; a < arcs.arcs.size(); ++a)
    for (const auto& p : arcs.arcs[a].points)
      os << a << ',' << fmt_double(p.x) << ',' << fmt_double(p.y) << ',' << fmt_double(residual(p)) << '\n';
}

struct SvgOptions {
  std::vector<Constraint> overlays;
  bool show_rejects = false;
};

/// Plain polyline paths in a viewBox matching the window (y axis flipped).
inline void write_svg(std::ostream& os, const ArcSet& arcs, const Window& win, const SvgOptions& opt = {}) {
  const double width = win.xmax - win.xmin, height = win.ymax - win.ymin;
  const double stroke = std::max(width, height) / 400.0;
  auto sx = [&](double x) { return fmt_double(x, 9); };
  auto sy = [&](double y) { return fmt_double(-y, 9); };
  auto path_of = [&](const Polyline& line) {
    std::string d;
    for (std::size_t k = 0; k < line.points.size(); ++k)
      d += (k ? " L" : "M") + sx(line.points[k].x) + "," + sy(line.points[k].y);
    if (line.closed) d += " Z";
    return d;
  };

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << sx(win.xmin) << ' ' << sy(win.ymax) << ' '
     << fmt_double(width, 9) << ' ' << fmt_double(height, 9) << "\" width=\"800\" height=\""
     << static_cast<int>(800.0 * height / width) << "\">\n";
  os << "<rect x=\"" << sx(win.xmin) << "\" y=\"" << sy(win.ymax) << "\" width=\"" << fmt_double(width, 9)
     << "\" height=\"" << fmt_double(height, 9) << "\" fill=\"white\"/>\n";

  if (!opt.overlays.empty()) {
    const Window coarse = win.with_resolution(256, 256);
    os << "<g class=\"constraints\" fill=\"none\" stroke=\"#3a7bd5\" stroke-dasharray=\"" << fmt_double(4 * stroke, 6)
       << "\" stroke-width=\"" << fmt_double(stroke, 6) << "\">\n";
    for (const auto& c : opt.overlays) {
      const ArcSet boundary = trace_zero_set(c.poly(), coarse);
      for (const auto& line : boundary.arcs) os << "<path d=\"" << path_of(line) << "\"/>\n";
    }
    os << "</g>\n";
  }

  os << "<g class=\"arcs\" fill=\"none\" stroke=\"black\" stroke-width=\"" << fmt_double(2 * stroke, 6) << "\">\n";
  for (const auto& line : arcs.arcs) os << "<path d=\"" << path_of(line) << "\"/>\n";
  os << "</g>\n";

  if (opt.show_rejects && !arcs.zariski_rejects.empty()) {
    os << "<g class=\"rejects\" fill=\"#d53a3a\">\n";
    for (const auto& r : arcs.zariski_rejects)
      os << "<circle cx=\"" << sx(r.point.x) << "\" cy=\"" << sy(r.point.y) << "\" r=\"" << fmt_double(1.5 * stroke, 6)
         << "\"/>\n";
    os << "</g>\n";
  }
  os << "</svg>\n";
}

}  // namespace weber::cli
