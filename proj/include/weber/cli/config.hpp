#pragma once

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "weber/error.hpp"
#include "weber/families.hpp"
#include "weber/rational.hpp"
#include "weber/scene.hpp"

namespace weber::cli {

/// Malformed or invalid configuration (exit code 2).
class ConfigError : public Error {
 public:
  using Error::Error;
};

using nlohmann::json;

namespace detail {

inline void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [key, value] : obj.items())
    if (!allowed.count(key)) throw ConfigError(where + ": unknown field '" + key + "'");
}

/// Integers and "p/q" strings are exact; JSON floats make the value numeric-only.
inline Number parse_number(const json& v, const std::string& where) {
  try {
    if (v.is_number_integer()) return Number(Rational(v.get<long>()));
    if (v.is_string()) return Number(parse_rational(v.get<std::string>()));
    if (v.is_number_float()) return Number::inexact(v.get<double>());
  } catch (const Error& e) {
    throw ConfigError(where + ": " + e.what());
  }
  throw ConfigError(where + ": expected an integer, a \"p/q\" string or a float");
}

inline Rational parse_exact(const json& v, const std::string& where) {
  const Number n = parse_number(v, where);
  if (!n.is_exact()) throw ConfigError(where + ": family parameters must be exact (integer or \"p/q\")");
  return n.exact();
}

inline const json& require(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) throw ConfigError(where + ": missing field '" + key + "'");
  return obj.at(key);
}

inline std::vector<Number> parse_list(const json& v, const std::string& where) {
  if (!v.is_array()) throw ConfigError(where + ": expected a list");
  std::vector<Number> out;
  for (std::size_t k = 0; k < v.size(); ++k) out.push_back(parse_number(v[k], where + "[" + std::to_string(k) + "]"));
  return out;
}

inline std::pair<Rational, Rational> parse_exact_point(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2) throw ConfigError(where + ": expected [x, y]");
  return {parse_exact(v[0], where + ".x"), parse_exact(v[1], where + ".y")};
}

inline long parse_positive_int(const json& v, const std::string& where) {
  if (!v.is_number_integer() || v.get<long>() <= 0) throw ConfigError(where + ": expected a positive integer");
  return v.get<long>();
}

inline Window default_scene_window(const FocalScene& scene) {
  double cx = 0, cy = 0;
  for (const auto& f : scene.foci()) {
    cx += f.point().x;
    cy += f.point().y;
  }
  cx /= static_cast<double>(scene.foci().size());
  cy /= static_cast<double>(scene.foci().size());
  double spread = 0;
  for (const auto& f : scene.foci()) spread = std::max(spread, distance(f.point(), {cx, cy}));
  const double half = spread + std::abs(scene.threshold().value()) + 1.0;
  return {cx - half, cx + half, cy - half, cy + half, 512, 512};
}

inline FamilyInstance parse_family(const json& fam) {
  const std::string where = "family";
  if (!fam.is_object()) throw ConfigError("family: expected an object");
  const std::string name = require(fam, "name", where).is_string() ? fam.at("name").get<std::string>() : "";
  auto exact = [&](const char* key) { return parse_exact(require(fam, key, where), where + "." + key); };
  if (name == "parabola") {
    reject_unknown(fam, {"name", "p"}, where);
    return parabola(exact("p"));
  }
  if (name == "ellipse" || name == "hyperbola" || name == "hyperbola_branch") {
    reject_unknown(fam, {"name", "a", "b"}, where);
    if (name == "ellipse") return ellipse(exact("a"), exact("b"));
    if (name == "hyperbola") return hyperbola(exact("a"), exact("b"));
    return hyperbola_branch(exact("a"), exact("b"));
  }
  if (name == "cartesian_oval") {
    reject_unknown(fam, {"name", "c", "m", "n", "S", "branch"}, where);
    const std::string branch = fam.value("branch", std::string("plus"));
    if (branch != "plus" && branch != "minus") throw ConfigError("family.branch: expected \"plus\" or \"minus\"");
    return cartesian_oval(exact("c"), parse_positive_int(require(fam, "m", where), "family.m"),
                          parse_positive_int(require(fam, "n", where), "family.n"), exact("S"),
                          branch == "plus" ? OvalBranch::Plus : OvalBranch::Minus);
  }
  if (name == "trifocal") {
    reject_unknown(fam, {"name", "p", "q", "r", "S"}, where);
    return trifocal(exact("p"), exact("q"), exact("r"), exact("S"));
  }
  if (name == "erdos_mordell") {
    reject_unknown(fam, {"name", "A", "B", "C"}, where);
    const auto [ax, ay] = parse_exact_point(require(fam, "A", where), "family.A");
    const auto [bx, by] = parse_exact_point(require(fam, "B", where), "family.B");
    const auto [cx, cy] = parse_exact_point(require(fam, "C", where), "family.C");
    return erdos_mordell(ax, ay, bx, by, cx, cy);
  }
  throw ConfigError("family: unknown name '" + name + "'");
}

inline FamilyInstance parse_scene(const json& cfg) {
  reject_unknown(cfg, {"foci", "directrices", "alpha", "beta", "S"}, "config");
  const json& foci_json = require(cfg, "foci", "config");
  if (!foci_json.is_array()) throw ConfigError("foci: expected a list of [x, y]");
  std::vector<Focus> foci;
  for (std::size_t k = 0; k < foci_json.size(); ++k) {
    const std::string where = "foci[" + std::to_string(k) + "]";
    if (!foci_json[k].is_array() || foci_json[k].size() != 2) throw ConfigError(where + ": expected [x, y]");
    foci.push_back({parse_number(foci_json[k][0], where + ".x"), parse_number(foci_json[k][1], where + ".y")});
  }
  std::vector<Directrix> lines;
  if (cfg.contains("directrices")) {
    const json& d = cfg.at("directrices");
    if (!d.is_array()) throw ConfigError("directrices: expected a list of [a, b, c]");
    for (std::size_t k = 0; k < d.size(); ++k) {
      const std::string where = "directrices[" + std::to_string(k) + "]";
      if (!d[k].is_array() || d[k].size() != 3) throw ConfigError(where + ": expected [a, b, c]");
      try {
        lines.emplace_back(parse_number(d[k][0], where), parse_number(d[k][1], where), parse_number(d[k][2], where));
      } catch (const ConfigError&) {
        throw;
      } catch (const Error& e) {
        throw ConfigError(where + ": " + e.what());
      }
    }
  }
  std::vector<Number> alpha = cfg.contains("alpha") ? parse_list(cfg.at("alpha"), "alpha")
                                                    : std::vector<Number>(foci.size(), Number(1));
  std::vector<Number> beta = cfg.contains("beta") ? parse_list(cfg.at("beta"), "beta") : std::vector<Number>{};
  const Number s = parse_number(require(cfg, "S", "config"), "S");
  try {
    FocalScene scene(std::move(foci), std::move(alpha), std::move(lines), std::move(beta), s);
    return from_scene(scene, default_scene_window(scene));
  } catch (const UnsupportedError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

}  // namespace detail

/// Parses a scene configuration: either {"family": {...}} or an explicit
/// scene with foci, directrices, alpha, beta and S.
inline FamilyInstance parse_config(const json& cfg) {
  if (!cfg.is_object()) throw ConfigError("config: expected a JSON object");
  if (cfg.contains("family")) {
    detail::reject_unknown(cfg, {"family"}, "config");
    try {
      return detail::parse_family(cfg.at("family"));
    } catch (const ConfigError&) {
      throw;
    } catch (const UnsupportedError&) {
      throw;
    } catch (const Error& e) {
      throw ConfigError(e.what());
    }
  }
  return detail::parse_scene(cfg);
}

inline FamilyInstance parse_config_text(const std::string& text) {
  json cfg;
  try {
    cfg = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(cfg);
}

inline FamilyInstance load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

}  // namespace weber::cli
