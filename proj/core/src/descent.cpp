#include "ferronem/descent.hpp"

#include <cmath>
#include <numeric>
#include <utility>

#include <spdlog/spdlog.h>

namespace ferronem {

void DescentParams::validate() const {
  if (!(eps_outer > 0.0)) throw DomainError("eps_outer must be positive");
  if (!(eps0 > 0.0)) throw DomainError("eps0 must be positive");
  if (max_outer < 1) throw DomainError("max_outer must be at least 1");
  if (!(gamma > 0.0 && gamma < 1.0)) throw DomainError("gamma must lie in (0, 1)");
}

long long DescentReport::total_inner_iterations() const noexcept {
  return std::accumulate(inner_iterations.begin(), inner_iterations.end(), 0LL);
}

DescentNonConvergence::DescentNonConvergence(const std::string& what, DescentReport report)
    : NonConvergenceError(what, report.outer_iterations(),
                          report.energy_history.size() >= 2
                              ? report.energy_history[report.energy_history.size() - 2] -
                                    report.energy_history.back()
                              : 0.0),
      report_(std::move(report)) {}

double objective_F(const IterateData& data, const Eigen::VectorXd& r, const Triangulation& mesh,
                   const MaterialConstants& mc) {
  Eigen::VectorXd p(r.size());
  for (Eigen::Index i = 0; i < r.size(); ++i) p[i] = phi(r[i]);
  return objective_F1(data, r, mesh, mc) + objective_F2(data, p, mesh, mc);
}

NodalField apply_update(const IterateData& data, const Eigen::VectorXd& r_star, const NodalField& current) {
  const Triangulation& mesh = current.mesh();
  if (static_cast<std::size_t>(r_star.size()) != mesh.num_interior()) {
    throw Error("apply_update: r* must have one entry per interior vertex");
  }
  if (data.size() != current.size()) throw Error("apply_update: iterate data does not match field");
  std::vector<ManifoldPoint> values = current.values();
  const auto& interior = mesh.interior_vertices();
  for (std::size_t i = 0; i < interior.size(); ++i) {
    const auto a = static_cast<std::size_t>(interior[i]);
    const double r = r_star[static_cast<Eigen::Index>(i)];
    const UnitVec2& n = data.n[a];
    const UnitVec2& t = data.t[a];
    values[a] = lift(project_sphere(n.x() + r * t.x(), n.y() + r * t.y()), current.constants());
  }
  return NodalField(current.mesh_ptr(), current.constants(), std::move(values));
}

int count_oscillations(const std::vector<double>& history, double slack) {
  int count = 0;
  for (std::size_t j = 0; j + 1 < history.size(); ++j) {
    if (history[j + 1] - history[j] > slack) ++count;
  }
  return count;
}

DescentReport run_descent(const NodalField& initial, const DescentParams& params,
                          const AdmmParams& admm_params) {
  params.validate();
  const Triangulation& mesh = initial.mesh();
  const MaterialConstants& mc = initial.constants();
  admm_params.validate(mesh.num_interior());

  DescentReport report;
  report.final_state = AdmmState::zeros(mesh.num_interior());
  report.energy_history.push_back(energy_pairwise(initial));
  NodalField field = initial;

  for (int j = 0; j < params.max_outer; ++j) {
    const IterateData data = IterateData::from_field(field, j);
    AdmmResult inner = admm_solve(data, report.final_state, admm_params, mesh, mc);
    report.inner_iterations.push_back(inner.iterations);
    report.inner_residuals.push_back(inner.residual);
    report.phi_clamp_events += inner.clamp_events;
    report.max_linear_residual = std::max(report.max_linear_residual, inner.max_linear_residual);
    report.final_state = std::move(inner.final_state);

    Eigen::VectorXd r_star = std::move(inner.r_star);
    for (Eigen::Index i = 0; i < r_star.size(); ++i) {
      if (std::abs(r_star[i]) > params.gamma) {
        ++report.gamma_clamp_events;
        spdlog::warn("outer iteration {}: r* = {} at interior vertex {} clamped to +-{}", j, r_star[i], i,
                     params.gamma);
        r_star[i] = std::copysign(params.gamma, r_star[i]);
      }
    }

    field = apply_update(data, r_star, field);
    const double energy = energy_pairwise(field);
    const double decrease = report.energy_history.back() - energy;
    report.energy_history.push_back(energy);
    if (decrease < -params.slack()) {
      spdlog::warn("outer iteration {}: energy rose by {}", j, -decrease);
    }
    if (decrease >= -params.slack() && decrease <= params.eps_outer) {
      report.converged = true;
      break;
    }
  }

  report.oscillation_count = count_oscillations(report.energy_history, params.slack());
  report.final_field = std::move(field);
  if (!report.converged) {
    throw DescentNonConvergence("energy descent did not meet the stopping rule within max_outer iterations",
                                std::move(report));
  }
  return report;
}

}  // namespace ferronem
