#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ferronem/admm.hpp"
#include "ferronem/descent.hpp"
#include "ferronem/problems.hpp"

namespace ferronem::cli {

enum class Example { example1, example2, custom };
enum class Output { table, vtk, histogram, energy_trace };

/// Everything a run needs. Unset solver parameters fall back to the
/// per-level defaults of the chosen example.
struct RunConfig {
  Example example = Example::example1;
  /// Structured n x n mesh of the unit square unless mesh_file is set.
  int n = 12;
  std::optional<std::filesystem::path> mesh_file;
  double c = 0.005;

  std::optional<double> zeta;
  std::optional<double> rho;
  std::optional<double> eps_pri;
  std::optional<int> max_inner;
  double eps_outer = 1e-6;
  double eps0 = 1e-3;
  double gamma = 0.9;
  int max_outer = 200;

  // Only read for Example::custom.
  Point2 center{2.0, 0.2};
  VortexVariant variant = VortexVariant::single_angle;
  std::optional<Point2> path_end;

  std::vector<int> levels{12, 23, 45};
  int quad_order = 6;
  std::set<Output> outputs{Output::table};
  std::filesystem::path out_dir = ".";
  unsigned long seed = 0;

  /// Throws DomainError on non-positive tolerances and similar.
  void validate() const;
};

Example parse_example(const std::string& s);
std::string to_string(Example e);
VortexVariant parse_variant(const std::string& s);
std::set<Output> parse_outputs(const std::string& s);
std::string to_string(Output o);

/// Applies one `key = value` pair. Throws DomainError on unknown keys or
/// malformed values.
void apply_setting(RunConfig& config, const std::string& key, const std::string& value);

/// Flat key-value file: one `key = value` per line, `#` starts a comment.
/// Errors carry the line number.
void load_config(RunConfig& config, std::istream& in);
void load_config_file(RunConfig& config, const std::filesystem::path& path);

/// Solver parameters recommended for a mesh of size h. The four reference
/// levels are n = 12, 23, 45, 89; the level whose h is nearest (in log
/// scale) is used.
struct LevelDefaults {
  double zeta;
  double rho;
  double eps_pri;
};
int nearest_level(double h);
LevelDefaults level_defaults(Example example, int level);

VortexSpec vortex_spec(const RunConfig& config);
Point2 path_end(const RunConfig& config);
AdmmParams admm_params(const RunConfig& config, double h);
DescentParams descent_params(const RunConfig& config);

}  // namespace ferronem::cli
