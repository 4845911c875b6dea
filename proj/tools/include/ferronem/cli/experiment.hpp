#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "ferronem/cli/config.hpp"
#include "ferronem/descent.hpp"
#include "ferronem/fields.hpp"
#include "ferronem/mesh.hpp"

namespace ferronem::cli {

/// Mesh named by the config: mesh_file if set, else generate_structured(n).
std::shared_ptr<const Triangulation> build_mesh(const RunConfig& config);

struct LevelResult {
  int n = 0;  // 0 for file meshes
  double h = 0.0;
  std::size_t vertices = 0;
  std::size_t interior = 0;
  AdmmParams admm;
  double e_exact = 0.0;
  double e_interp = 0.0;
  double e_initial = 0.0;
  double e_cv = 0.0;
  ErrorNorms errors;
  DescentReport report;
};

/// E_cv - E_exact for Example 1 and custom runs, E_exact - E_cv for
/// Example 2, whose discrete energies sit below the exact one.
double signed_energy_error(Example example, double e_exact, double e_cv);

/// Builds initial guess and boundary data on `mesh` and runs the descent.
/// The mesh must already have passed the weak-acuteness check.
/// DescentNonConvergence and solver errors propagate.
LevelResult solve_level(const RunConfig& config, std::shared_ptr<const Triangulation> mesh);

/// log(e_coarse / e_fine) / log(h_coarse / h_fine).
double convergence_rate(double e_coarse, double e_fine, double h_coarse, double h_fine);

struct ConvergenceRow {
  LevelResult level;
  double d_energy = 0.0;
  std::optional<double> rate_energy;
  std::optional<double> rate_h1;
  std::optional<double> rate_l2;
};

std::vector<ConvergenceRow> convergence_table(std::vector<LevelResult> levels, Example example);

/// |p*_a - phi(r*_a)| per interior vertex of the final inner state.
std::vector<double> coupling_errors(const AdmmState& state);

}  // namespace ferronem::cli
