#include "ferronem/cli/experiment.hpp"

#include <cmath>

#include "ferronem/problems.hpp"

namespace ferronem::cli {

std::shared_ptr<const Triangulation> build_mesh(const RunConfig& config) {
  if (config.mesh_file) return std::make_shared<const Triangulation>(load_mesh(*config.mesh_file));
  return std::make_shared<const Triangulation>(generate_structured(config.n));
}

double signed_energy_error(Example example, double e_exact, double e_cv) {
  return example == Example::example2 ? e_exact - e_cv : e_cv - e_exact;
}

LevelResult solve_level(const RunConfig& config, std::shared_ptr<const Triangulation> mesh) {
  const MaterialConstants mc = material_constants(config.c);
  const VortexSpec spec = vortex_spec(config);
  const AnalyticSolution sol = analytic_solution(spec, mc);
  const Domain domain = config.mesh_file ? Domain::from_mesh(*mesh) : Domain::unit_square();

  LevelResult result;
  result.n = config.mesh_file ? 0 : config.n;
  result.h = mesh->h();
  result.vertices = mesh->num_vertices();
  result.interior = mesh->num_interior();
  result.admm = admm_params(config, mesh->h());
  result.e_exact = reference_energy(sol, *mesh, config.quad_order);
  result.e_interp = energy_pairwise(interpolate(sol, mesh, mc));

  const NodalField initial = initial_guess(spec, path_end(config), mesh, mc, domain);
  result.e_initial = energy_pairwise(initial);
  result.report = run_descent(initial, descent_params(config), result.admm);
  result.e_cv = result.report.energy_history.back();
  result.errors = error_norms(*result.report.final_field, sol, config.quad_order);
  return result;
}

double convergence_rate(double e_coarse, double e_fine, double h_coarse, double h_fine) {
  return std::log(e_coarse / e_fine) / std::log(h_coarse / h_fine);
}

std::vector<ConvergenceRow> convergence_table(std::vector<LevelResult> levels, Example example) {
  std::vector<ConvergenceRow> rows;
  for (auto& level : levels) {
    ConvergenceRow row;
    row.d_energy = signed_energy_error(example, level.e_exact, level.e_cv);
    row.level = std::move(level);
    if (!rows.empty()) {
      const ConvergenceRow& prev = rows.back();
      const double hc = prev.level.h;
      const double hf = row.level.h;
      row.rate_energy = convergence_rate(std::abs(prev.d_energy), std::abs(row.d_energy), hc, hf);
      row.rate_h1 = convergence_rate(prev.level.errors.h1_semi, row.level.errors.h1_semi, hc, hf);
      row.rate_l2 = convergence_rate(prev.level.errors.l2, row.level.errors.l2, hc, hf);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<double> coupling_errors(const AdmmState& state) {
  std::vector<double> out(static_cast<std::size_t>(state.r.size()));
  for (Eigen::Index i = 0; i < state.r.size(); ++i) {
    out[static_cast<std::size_t>(i)] = std::abs(state.p[i] - phi_clamped(state.r[i]));
  }
  return out;
}

}  // namespace ferronem::cli
