#pragma once

#include <memory>

#include <Eigen/Core>

#include "ferronem/iterate.hpp"
#include "ferronem/errors.hpp"
#include "ferronem/linear_solver.hpp"
#include "ferronem/manifold.hpp"
#include "ferronem/mesh.hpp"

namespace ferronem {

/// Parameters of the augmented-Lagrangian (Uzawa/ADMM) inner solver.
struct AdmmParams {
  double zeta = 1.0;     ///< augmentation parameter
  double rho = 1.0;      ///< multiplier step
  double eps_pri = 1e-7; ///< tolerance on the RMS coupling residual
  /// Diagonal of D, one entry per interior vertex. Empty means all ones.
  Eigen::VectorXd d;
  int max_inner = 100000;

  /// Throws DomainError on non-positive parameters or a wrongly sized d.
  void validate(std::size_t num_interior) const;
  Eigen::VectorXd weights(std::size_t num_interior) const;
};

/// Inner-solver unknowns on interior vertices. Boundary entries are zero by
/// construction and never stored.
struct AdmmState {
  Eigen::VectorXd r;
  Eigen::VectorXd p;
  Eigen::VectorXd lambda;

  static AdmmState zeros(std::size_t num_interior);
};

/// Counts evaluations of phi / phi' whose argument had to be pulled back
/// into (-1, 1).
struct ClampCounter {
  long long events = 0;
};

/// phi and phi' with the argument clamped to +-(1 - 1e-9); each clamp is
/// counted and logged.
double phi_clamped(double r, ClampCounter* counter = nullptr);
double phi_prime_clamped(double r, ClampCounter* counter = nullptr);

/// Halves of the split objective, r and p indexed by interior vertex:
///   F1(r) = -1/2 sum k_ab M_c^2 |(n_a + r_a t_a) - (n_b + r_b t_b)|^2
///   F2(p) = -1/2 sum k_ab Q_c^2 |(nu_a + p_a tau_a) - (nu_b + p_b tau_b)|^2
double objective_F1(const IterateData& data, const Eigen::VectorXd& r, const Triangulation& mesh,
                    const MaterialConstants& mc);
double objective_F2(const IterateData& data, const Eigen::VectorXd& p, const Triangulation& mesh,
                    const MaterialConstants& mc);

/// grad_{r_a} F1 = -2 sum_b k_ab M_c^2 (r_a - r_b t_a.t_b - t_a.n_b), evaluated
/// term by term for every interior vertex a.
Eigen::VectorXd grad_F1(const IterateData& data, const Eigen::VectorXd& r, const Triangulation& mesh,
                        const MaterialConstants& mc);
/// Same with (Q_c, tau, nu) in place of (M_c, t, n).
Eigen::VectorXd grad_F2(const IterateData& data, const Eigen::VectorXd& p, const Triangulation& mesh,
                        const MaterialConstants& mc);

/// Assembled quadratic models of one outer iteration: grad F1(r) = H1 r + c1,
/// grad F2(p) = H2 p + c2. Both Hessians are symmetric and, on weakly acute
/// meshes, positive semi-definite.
class InnerProblem {
 public:
  InnerProblem(const IterateData& data, const AdmmParams& params, const Triangulation& mesh,
               const MaterialConstants& mc);

  const SparseMatrix& hessian_F1() const noexcept { return h1_; }
  const SparseMatrix& hessian_F2() const noexcept { return h2_; }
  const Eigen::VectorXd& offset_F1() const noexcept { return c1_; }
  const Eigen::VectorXd& offset_F2() const noexcept { return c2_; }
  const Eigen::VectorXd& d() const noexcept { return d_; }
  const AdmmParams& params() const noexcept { return params_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(c1_.size()); }

  /// Linearized r-step: H1 + zeta D diag(phi'(r^n)^2).
  SparseMatrix r_step_matrix(const AdmmState& state, ClampCounter* clamps = nullptr) const;
  Eigen::VectorXd r_step_rhs(const AdmmState& state, ClampCounter* clamps = nullptr) const;
  /// p-step: H2 + zeta D (independent of the state).
  SparseMatrix p_step_matrix() const;
  Eigen::VectorXd p_step_rhs(const Eigen::VectorXd& r_next, const Eigen::VectorXd& lambda,
                             ClampCounter* clamps = nullptr) const;

  Eigen::VectorXd solve_r_step(const AdmmState& state, SolveStats* stats = nullptr,
                               ClampCounter* clamps = nullptr);
  Eigen::VectorXd solve_p_step(const Eigen::VectorXd& r_next, const Eigen::VectorXd& lambda,
                               SolveStats* stats = nullptr, ClampCounter* clamps = nullptr);

 private:
  AdmmParams params_;
  Eigen::VectorXd d_;
  SparseMatrix h1_;
  SparseMatrix h2_;
  Eigen::VectorXd c1_;
  Eigen::VectorXd c2_;
  SpdSolver r_solver_;
  SpdSolver p_solver_;
  bool p_factorized_ = false;
};

/// One linearized r-step from (r^n, p^n, lambda^n).
Eigen::VectorXd solve_r_step(const AdmmState& state, const IterateData& data, const AdmmParams& params,
                             const Triangulation& mesh, const MaterialConstants& mc);
/// p-step for given r^{n+1} (state.r) and lambda^n (state.lambda).
Eigen::VectorXd solve_p_step(const AdmmState& state, const IterateData& data, const AdmmParams& params,
                             const Triangulation& mesh, const MaterialConstants& mc);

/// lambda_a + rho d_a (p_a - phi(r_a)).
Eigen::VectorXd update_lambda(const AdmmState& state, const AdmmParams& params,
                              ClampCounter* clamps = nullptr);

/// (1/m sum_a |phi(r_a) - p_a|^2)^{1/2} over the m interior vertices; 0 when m = 0.
double coupling_residual(const AdmmState& state, ClampCounter* clamps = nullptr);

/// Residual of the r-step stationarity condition at r_next, evaluated with
/// the term-by-term gradient formula (independent of the assembled matrix).
Eigen::VectorXd r_step_stationarity(const Eigen::VectorXd& r_next, const AdmmState& state,
                                    const IterateData& data, const AdmmParams& params,
                                    const Triangulation& mesh, const MaterialConstants& mc);
/// Residual of the p-step stationarity condition at p_next.
Eigen::VectorXd p_step_stationarity(const Eigen::VectorXd& p_next, const AdmmState& state,
                                    const IterateData& data, const AdmmParams& params,
                                    const Triangulation& mesh, const MaterialConstants& mc);

struct AdmmResult {
  Eigen::VectorXd r_star;
  AdmmState final_state;
  int iterations = 0;
  double residual = 0.0;
  long long clamp_events = 0;
  /// Largest relative residual over all linear solves of this call.
  double max_linear_residual = 0.0;
};

/// Uzawa/ADMM loop r-step -> p-step -> multiplier update until the coupling
/// residual drops to eps_pri. Throws NonConvergenceError after max_inner
/// iterations.
AdmmResult admm_solve(const IterateData& data, const AdmmState& warm, const AdmmParams& params,
                      const Triangulation& mesh, const MaterialConstants& mc);

}  // namespace ferronem
