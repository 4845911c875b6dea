#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "ferronem/cli/commands.hpp"
#include "ferronem/errors.hpp"

namespace {

struct Key {
  const char* name;
  const char* help;
};

constexpr Key kKeys[] = {
    {"example", "example1, example2 or custom"},
    {"n", "structured mesh cells per side"},
    {"mesh", "mesh file (overrides n)"},
    {"c", "coupling constant"},
    {"zeta", "augmentation parameter (default: per mesh level)"},
    {"rho", "multiplier step (default: per mesh level)"},
    {"eps_pri", "inner coupling tolerance (default: per mesh level)"},
    {"eps_outer", "outer stopping tolerance"},
    {"eps0", "relative slack for energy rises"},
    {"gamma", "bound on |r*|"},
    {"max_outer", "outer iteration cap"},
    {"max_inner", "inner iteration cap per outer iteration"},
    {"center", "vortex centre 'x,y' (custom example)"},
    {"variant", "single or triple (custom example)"},
    {"path_end", "end of the centre path of the initial guess 'x,y'"},
    {"levels", "comma-separated structured levels for convergence"},
    {"quad_order", "quadrature degree for errors and reference energy (6..8)"},
    {"outputs", "comma-separated subset of table,vtk,histogram,energy_trace"},
    {"out_dir", "directory for artifacts"},
    {"seed", "seed recorded with the run"},
};

std::string flag_names(const std::string& key) {
  std::string dashed = key;
  for (auto& ch : dashed) {
    if (ch == '_') ch = '-';
  }
  return dashed == key ? "--" + key : "--" + dashed + ",--" + key;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace ferronem::cli;

  CLI::App app{"Energy-decreasing finite element solver for ferronematic harmonic maps"};
  app.require_subcommand(1);
  app.fallthrough();

  std::optional<std::string> config_file;
  app.add_option("--config", config_file, "flat key = value file; flags win");
  bool quiet = false;
  app.add_flag("-q,--quiet", quiet, "only log errors");
  std::map<std::string, std::optional<std::string>> overrides;
  for (const auto& key : kKeys) app.add_option(flag_names(key.name), overrides[key.name], key.help);

  auto* run = app.add_subcommand("run", "solve one problem and write the requested artifacts");
  auto* convergence = app.add_subcommand("convergence", "solve on several structured levels and tabulate rates");
  auto* histogram = app.add_subcommand("histogram", "per-vertex coupling errors of the final inner state");
  auto* export_vtk = app.add_subcommand("export-vtk", "write a nodal field as legacy VTK");
  std::string which = "final";
  std::string vtk_path = "field.vtk";
  export_vtk->add_option("--field", which, "final, initial or exact")->capture_default_str();
  export_vtk->add_option("-o,--output", vtk_path, "output file")->capture_default_str();
  auto* check_mesh = app.add_subcommand("check-mesh", "validate a mesh and report weak acuteness");

  CLI11_PARSE(app, argc, argv);

  spdlog::set_default_logger(spdlog::stderr_color_st("ferronem"));
  if (quiet) spdlog::set_level(spdlog::level::err);

  RunConfig config;
  try {
    if (config_file) load_config_file(config, *config_file);
    for (const auto& key : kKeys) {
      const auto& value = overrides[key.name];
      if (value) apply_setting(config, key.name, *value);
    }
  } catch (const ferronem::DomainError& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return kUsage;
  } catch (const ferronem::Error& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return kIoError;
  }

  if (*run) return cmd_run(config, std::cout, std::cerr);
  if (*convergence) return cmd_convergence(config, std::cout, std::cerr);
  if (*histogram) return cmd_histogram(config, std::cout, std::cerr);
  if (*export_vtk) return cmd_export_vtk(config, which, vtk_path, std::cout, std::cerr);
  if (*check_mesh) return cmd_check_mesh(config, std::cout, std::cerr);
  return kUsage;
}
