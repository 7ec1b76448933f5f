#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "weber/cli/commands.hpp"

namespace {

weber::Window parse_window(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) v.push_back(std::stod(item));
  if (v.size() != 4) throw weber::cli::ConfigError("--window expects xmin,xmax,ymin,ymax");
  return {v[0], v[1], v[2], v[3], 512, 512};
}

void parse_resolution(const std::string& text, weber::cli::RunOptions& opt) {
  const auto x = text.find_first_of("xX");
  if (x == std::string::npos) throw weber::cli::ConfigError("--res expects NxN");
  opt.nx = std::stoul(text.substr(0, x));
  opt.ny = std::stoul(text.substr(x + 1));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized Weber curves: symbolic derivation and arc extraction"};
  app.require_subcommand(1);

  std::string config;
  std::string window_text;
  std::string res_text = "512x512";
  weber::cli::RunOptions opt;

  auto add_common = [&](CLI::App* cmd, bool tracing) {
    cmd->add_option("config", config, "Scene configuration (JSON)")->required();
    cmd->add_option("--out", opt.out, "Output path");
    if (!tracing) return;
    cmd->add_option("--window", window_text, "xmin,xmax,ymin,ymax");
    cmd->add_option("--res", res_text, "Grid resolution NxN")->capture_default_str();
    cmd->add_option("--tol", opt.tol, "Residual tolerance for kept vertices")->capture_default_str();
    cmd->add_option("--seed", opt.seed, "Seed for sampled checks")->capture_default_str();
  };

  auto* derive = app.add_subcommand("derive", "Print the implicit equation and validity constraints");
  add_common(derive, false);
  auto* trace = app.add_subcommand("trace", "Extract verified arcs as CSV and/or SVG");
  add_common(trace, true);
  trace->add_option("--format", opt.format, "csv|svg|both")->capture_default_str();
  trace->add_flag("--overlay-constraints", opt.overlay_constraints, "Draw constraint boundaries in SVG");
  trace->add_flag("--show-rejects", opt.show_rejects, "Mark rejected algebraic-curve points in SVG");
  auto* verify = app.add_subcommand("verify", "Check the derivation against the brute-force oracle");
  add_common(verify, true);
  auto* families = app.add_subcommand("families", "List built-in curve families");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : weber::cli::kConfigError;
  }

  try {
    if (!window_text.empty()) opt.window = parse_window(window_text);
    parse_resolution(res_text, opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return weber::cli::kConfigError;
  }

  if (*families) return weber::cli::cmd_families(std::cout);
  if (*derive) return weber::cli::cmd_derive(config, opt, std::cout, std::cerr);
  if (*trace) return weber::cli::cmd_trace(config, opt, std::cout, std::cerr);
  return weber::cli::cmd_verify(config, opt, std::cout, std::cerr);
}
