#pragma once

#include <chrono>
#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "weber/cli/config.hpp"
#include "weber/cli/emit.hpp"
#include "weber/cli/format.hpp"
#include "weber/eliminate.hpp"
#include "weber/families.hpp"
#include "weber/oracle.hpp"
#include "weber/trace.hpp"

namespace weber::cli {

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kConfigError = 2, kUnsupported = 3 };

struct RunOptions {
  std::optional<Window> window;
  std::size_t nx = 512;
  std::size_t ny = 512;
  double tol = 1e-6;
  std::string format = "csv";
  bool overlay_constraints = false;
  bool show_rejects = false;
  std::string out;
  std::uint64_t seed = 0;
};

namespace detail {

inline Window resolve_window(const FamilyInstance& f, const RunOptions& opt) {
  Window w = opt.window.value_or(f.window);
  w.nx = opt.nx;
  w.ny = opt.ny;
  w.validate();
  return w;
}

inline std::vector<DerivedCurve> derive_all(const FamilyInstance& f) {
  if (!f.symbolic()) throw UnsupportedError(f.name + ": " + (f.notes.empty() ? "not symbolically derivable" : f.notes));
  std::vector<DerivedCurve> out;
  for (const auto& b : f.branches) out.push_back(derive(b));
  return out;
}

/// Union of per-branch implicit traces, each judged by its own branch residual.
inline ArcSet trace_family(const FamilyInstance& f, const std::vector<DerivedCurve>& curves, const Window& win,
                           double tol) {
  ArcSet all;
  for (std::size_t b = 0; b < curves.size(); ++b) {
    const FocalScene& scene = f.branches[b].scene;
    all.merge(trace_implicit(curves[b], [&scene](Point p) { return scene.residual(p); }, win, tol));
  }
  return all;
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

template <class Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const UnsupportedError& e) {
    err << "unsupported: " << e.what() << '\n';
    return kUnsupported;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }
}

}  // namespace detail

/// Implicit equation and constraints of every branch, in canonical text.
inline std::string derive_text(const FamilyInstance& f) {
  const auto curves = detail::derive_all(f);
  std::ostringstream os;
  const bool multi = curves.size() > 1;
  for (std::size_t b = 0; b < curves.size(); ++b) {
    if (multi) os << "# branch " << b + 1 << ": " << f.branches[b].label << '\n';
    os << format_equation(curves[b].implicit) << '\n';
    for (const auto& c : curves[b].constraints) os << format_constraint(c) << '\n';
  }
  return os.str();
}

inline int cmd_derive(const std::string& config_path, const RunOptions& opt, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const detail::Stopwatch clock;
    const FamilyInstance f = load_config(config_path);
    const std::string text = derive_text(f);
    out << text;
    if (!opt.out.empty()) {
      std::ofstream file(opt.out);
      if (!file) throw Error("cannot write '" + opt.out + "'");
      file << text;
    }
    err << "derive: " << f.name << " in " << fmt_double(clock.seconds(), 3) << " s\n";
    return int{kOk};
  });
}

inline int cmd_trace(const std::string& config_path, const RunOptions& opt, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const detail::Stopwatch clock;
    const FamilyInstance f = load_config(config_path);
    const Window win = detail::resolve_window(f, opt);
    if (opt.format != "csv" && opt.format != "svg" && opt.format != "both")
      throw ConfigError("--format must be csv, svg or both");
    if (opt.format == "both" && opt.out.empty()) throw ConfigError("--format both needs --out");

    ArcSet arcs;
    std::vector<Constraint> overlays;
    if (f.symbolic()) {
      const auto curves = detail::derive_all(f);
      arcs = detail::trace_family(f, curves, win, opt.tol);
      for (const auto& dc : curves) overlays.insert(overlays.end(), dc.constraints.begin(), dc.constraints.end());
    } else {
      arcs = trace_residual(f.residual_fn(), win, opt.tol);
    }

    const ResidualFn residual = f.residual_fn();
    SvgOptions svg;
    if (opt.overlay_constraints) svg.overlays = overlays;
    svg.show_rejects = opt.show_rejects;

    std::string stem = opt.out;
    if (stem.size() > 4 && (stem.ends_with(".csv") || stem.ends_with(".svg"))) stem.resize(stem.size() - 4);
    auto emit = [&](const std::string& kind, auto&& writer) {
      if (opt.out.empty()) {
        writer(out);
        return;
      }
      const std::string path = opt.format == "both" || !opt.out.ends_with("." + kind) ? stem + "." + kind : opt.out;
      std::ofstream file(path);
      if (!file) throw Error("cannot write '" + path + "'");
      writer(file);
    };
    if (opt.format == "csv" || opt.format == "both") emit("csv", [&](std::ostream& os) { write_csv(os, arcs, residual); });
    if (opt.format == "svg" || opt.format == "both") emit("svg", [&](std::ostream& os) { write_svg(os, arcs, win, svg); });

    if (arcs.empty()) err << "warning: empty locus\n";
    err << "trace: " << f.name << " arcs=" << arcs.arcs.size() << " vertices=" << arcs.stats.vertices
        << " length=" << fmt_double(arcs.stats.total_length, 6)
        << " max|w|=" << fmt_double(arcs.stats.max_abs_residual, 3) << " rejects=" << arcs.zariski_rejects.size()
        << " time=" << fmt_double(clock.seconds(), 3) << " s\n";
    return int{kOk};
  });
}

/// Oracle points must all satisfy the derived implicit and constraints, and
/// the implicit trace must lie within two cell diagonals of the oracle set.
inline int cmd_verify(const std::string& config_path, const RunOptions& opt, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const detail::Stopwatch clock;
    const FamilyInstance f = load_config(config_path);
    const Window win = detail::resolve_window(f, opt);
    const ResidualFn residual = f.residual_fn();
    const OraclePointSet ops = oracle_points(residual, win, 1e-10);
    const double bound = 2.0 * win.cell_diagonal();

    out << "family: " << f.name << '\n';
    out << "window: " << fmt_double(win.xmin, 6) << ',' << fmt_double(win.xmax, 6) << ',' << fmt_double(win.ymin, 6)
        << ',' << fmt_double(win.ymax, 6) << " res " << win.nx << 'x' << win.ny << '\n';
    out << "seed: " << opt.seed << '\n';
    out << "oracle points: " << ops.points.size() << '\n';

    bool ok = true;
    ArcSet arcs;
    if (f.symbolic()) {
      const auto curves = detail::derive_all(f);
      arcs = detail::trace_family(f, curves, win, opt.tol);
      if (!ops.empty()) {
        const VerificationReport rep = verify_branches(curves, ops);
        out << "derivation pass rate: " << rep.passed << '/' << rep.total << '\n';
        if (!rep.all_passed()) {
          ok = false;
          for (const auto& o : rep.worst)
            out << "  failing point (" << fmt_double(o.point.x, 9) << ", " << fmt_double(o.point.y, 9)
                << ") implicit=" << fmt_double(o.implicit_value, 3) << '\n';
        }
      }
      out << "zariski rejects: " << arcs.zariski_rejects.size() << '\n';
    } else {
      out << "derivation: skipped (numeric-only scene)\n";
      arcs = trace_residual(residual, win, opt.tol);
    }
    out << "arcs: " << arcs.arcs.size() << " max|w|: " << fmt_double(arcs.stats.max_abs_residual, 3) << '\n';

    const auto verts = arcs.vertices();
    const auto oracle = ops.positions();
    if (verts.empty() != oracle.empty()) {
      ok = false;
      out << "hausdorff: undefined (" << (verts.empty() ? "trace" : "oracle") << " empty)\n";
    } else if (!verts.empty()) {
      const double h = hausdorff(verts, oracle);
      const bool close = h <= bound;
      ok = ok && close;
      out << "hausdorff: " << fmt_double(h, 6) << " (bound " << fmt_double(bound, 6) << ")" << (close ? "" : " FAIL")
          << '\n';
    } else {
      out << "hausdorff: empty locus\n";
    }
    out << (ok ? "verify: PASS" : "verify: FAIL") << '\n';
    err << "verify: " << fmt_double(clock.seconds(), 3) << " s\n";
    return int{ok ? kOk : kVerificationFailed};
  });
}

inline int cmd_families(std::ostream& out) {
  out << "Built-in families (config: {\"family\": {\"name\": ..., params}}):\n"
         "  parabola          p                  focus (p/2,0), directrix x=-p/2, R1 - r1 = 0\n"
         "  ellipse           a, b               foci (+-c,0), c^2=a^2-b^2 a rational square, R1 + R2 = 2a\n"
         "  hyperbola         a, b               foci (+-c,0), c^2=a^2+b^2 a rational square, |R1 - R2| = 2a\n"
         "  hyperbola_branch  a, b               single branch R1 - R2 = 2a\n"
         "  cartesian_oval    c, m, n, S, branch foci (c,0),(-c,0), m R1 +/- n R2 = S, branch plus|minus\n"
         "  trifocal          p, q, r, S         foci (p,0),(q,0),(0,r), R1 + R2 + R3 = S\n"
         "  erdos_mordell     A, B, C            triangle vertices [x,y]; R1+R2+R3 = 2(r1+r2+r3)\n"
         "Numbers: integers or \"p/q\" strings. Explicit scenes use foci, directrices, alpha, beta, S;\n"
         "JSON floats are accepted there but make the scene numeric-only (trace/verify, no derive).\n";
  return kOk;
}

}  // namespace weber::cli
