#pragma once

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "ferronem/admm.hpp"
#include "ferronem/errors.hpp"
#include "ferronem/fields.hpp"
#include "ferronem/iterate.hpp"

namespace ferronem {

struct DescentParams {
  double eps_outer = 1e-6;
  double eps0 = 1e-3;
  int max_outer = 200;
  /// Box bound on r*: |r*_a| <= gamma < 1. Entries beyond it are clamped
  /// with a warning.
  double gamma = 0.9;

  void validate() const;
  double slack() const noexcept { return eps0 * eps_outer; }
};

struct DescentReport {
  /// E(Psi^j) for j = 0, 1, ..., one entry more than outer_iterations().
  std::vector<double> energy_history;
  int oscillation_count = 0;
  /// ADMM iterations spent in each outer iteration.
  std::vector<int> inner_iterations;
  /// Coupling residual at each declared inner convergence.
  std::vector<double> inner_residuals;
  bool converged = false;
  std::optional<NodalField> final_field;
  /// ADMM state of the last outer iteration.
  AdmmState final_state;
  long long phi_clamp_events = 0;
  long long gamma_clamp_events = 0;
  double max_linear_residual = 0.0;

  int outer_iterations() const noexcept { return static_cast<int>(inner_iterations.size()); }
  long long total_inner_iterations() const noexcept;
};

/// Descent ran out of outer iterations; report() holds everything computed.
class DescentNonConvergence : public NonConvergenceError {
 public:
  DescentNonConvergence(const std::string& what, DescentReport report);
  const DescentReport& report() const noexcept { return report_; }

 private:
  DescentReport report_;
};

/// F^j(r) = F1(r) + F2(phi(r)), r indexed by interior vertex.
/// Throws DomainError if some |r_a| >= 1.
double objective_F(const IterateData& data, const Eigen::VectorXd& r, const Triangulation& mesh,
                   const MaterialConstants& mc);

/// n+ = P_S(n + r* t) at interior vertices; boundary values are copied from
/// `current` unchanged.
NodalField apply_update(const IterateData& data, const Eigen::VectorXd& r_star, const NodalField& current);

/// Number of j with history[j+1] - history[j] > slack.
int count_oscillations(const std::vector<double>& history, double slack);

/// Outer loop: ADMM solve for r*, nodal update, until
///   -eps0 eps_outer <= E^j - E^{j+1} <= eps_outer.
/// The ADMM state is warm-started across outer iterations. Throws
/// DescentNonConvergence after max_outer iterations; NonConvergenceError
/// from the inner solver propagates.
DescentReport run_descent(const NodalField& initial, const DescentParams& params,
                          const AdmmParams& admm_params);

}  // namespace ferronem
