#include "ferronem/admm.hpp"

#include <cmath>
#include <string>
#include <vector>

#include <spdlog/spdlog.h>

#include "ferronem/errors.hpp"

namespace ferronem {

namespace {

constexpr double kPhiClamp = 1.0 - 1e-9;

double clamp_argument(double r, ClampCounter* counter) {
  if (std::abs(r) < kPhiClamp) return r;
  long long events = 1;
  if (counter) events = ++counter->events;
  // Log the first event and then every power of ten.
  if (events == 1 || std::log10(static_cast<double>(events)) == std::floor(std::log10(static_cast<double>(events)))) {
    spdlog::warn("phi argument {} outside (-1, 1) clamped (event {})", r, events);
  }
  return std::copysign(kPhiClamp, r);
}

using Dot = double (*)(const IterateData&, std::size_t, std::size_t);

double tt(const IterateData& d, std::size_t a, std::size_t b) { return d.t[a].dot(d.t[b]); }
double tn(const IterateData& d, std::size_t a, std::size_t b) { return d.t[a].dot(d.n[b]); }
double tau_tau(const IterateData& d, std::size_t a, std::size_t b) { return d.tau[a].dot(d.tau[b]); }
double tau_nu(const IterateData& d, std::size_t a, std::size_t b) { return d.tau[a].dot(d.nu[b]); }

// Term-by-term gradient shared by grad_F1 / grad_F2:
//   -2 s sum_b k_ab (x_a - x_b <dir_a, dir_b> - <dir_a, base_b>).
Eigen::VectorXd split_gradient(const IterateData& data, const Eigen::VectorXd& x,
                               const Triangulation& mesh, double scale, Dot dir_dir, Dot dir_base) {
  const auto m = mesh.num_interior();
  if (static_cast<std::size_t>(x.size()) != m) throw Error("gradient: vector size must equal interior count");
  if (data.size() != mesh.num_vertices()) throw Error("gradient: iterate data does not match mesh");
  const SparseMatrix& k = mesh.stiffness();
  Eigen::VectorXd g(static_cast<Eigen::Index>(m));
  for (std::size_t ia = 0; ia < m; ++ia) {
    const int va = mesh.interior_vertices()[ia];
    const double xa = x[static_cast<Eigen::Index>(ia)];
    double sum = 0.0;
    for (SparseMatrix::InnerIterator it(k, va); it; ++it) {
      const int vb = static_cast<int>(it.row());
      if (vb == va) continue;
      const int ib = mesh.interior_index(vb);
      const double xb = ib >= 0 ? x[ib] : 0.0;
      const auto a = static_cast<std::size_t>(va);
      const auto b = static_cast<std::size_t>(vb);
      sum += it.value() * (xa - xb * dir_dir(data, a, b) - dir_base(data, a, b));
    }
    g[static_cast<Eigen::Index>(ia)] = -2.0 * scale * sum;
  }
  return g;
}

// Assembles H and c with grad = H x + c from the same formula.
void assemble_split(const IterateData& data, const Triangulation& mesh, double scale, Dot dir_dir,
                    Dot dir_base, SparseMatrix& h, Eigen::VectorXd& c) {
  const auto m = static_cast<Eigen::Index>(mesh.num_interior());
  const SparseMatrix& k = mesh.stiffness();
  std::vector<Eigen::Triplet<double>> triplets;
  c = Eigen::VectorXd::Zero(m);
  for (Eigen::Index ia = 0; ia < m; ++ia) {
    const int va = mesh.interior_vertices()[static_cast<std::size_t>(ia)];
    double diag = 0.0;
    double offset = 0.0;
    for (SparseMatrix::InnerIterator it(k, va); it; ++it) {
      const int vb = static_cast<int>(it.row());
      if (vb == va) continue;
      const auto a = static_cast<std::size_t>(va);
      const auto b = static_cast<std::size_t>(vb);
      diag += it.value();
      offset += it.value() * dir_base(data, a, b);
      const int ib = mesh.interior_index(vb);
      if (ib >= 0) triplets.emplace_back(ia, ib, 2.0 * scale * it.value() * dir_dir(data, a, b));
    }
    triplets.emplace_back(ia, ia, -2.0 * scale * diag);
    c[ia] = 2.0 * scale * offset;
  }
  h.resize(m, m);
  h.setFromTriplets(triplets.begin(), triplets.end());
  h.makeCompressed();
}

double split_objective(const IterateData& data, const Eigen::VectorXd& x, const Triangulation& mesh,
                       double scale, bool use_nematic) {
  const auto m = mesh.num_interior();
  if (static_cast<std::size_t>(x.size()) != m) throw Error("objective: vector size must equal interior count");
  const SparseMatrix& k = mesh.stiffness();
  auto point = [&](int v) {
    const int i = mesh.interior_index(v);
    const double s = i >= 0 ? x[i] : 0.0;
    const auto a = static_cast<std::size_t>(v);
    const UnitVec2& base = use_nematic ? data.nu[a] : data.n[a];
    const UnitVec2& dir = use_nematic ? data.tau[a] : data.t[a];
    return Point2(base.x() + s * dir.x(), base.y() + s * dir.y());
  };
  double sum = 0.0;
  for (int col = 0; col < k.outerSize(); ++col) {
    const Point2 ub = point(col);
    for (SparseMatrix::InnerIterator it(k, col); it; ++it) {
      if (it.row() == col) continue;
      sum += it.value() * (point(static_cast<int>(it.row())) - ub).squaredNorm();
    }
  }
  return -0.5 * scale * sum;
}

}  // namespace

IterateData IterateData::from_field(const NodalField& field, int j) {
  IterateData data;
  data.j = j;
  const auto nv = field.size();
  data.n.reserve(nv);
  data.t.reserve(nv);
  data.nu.reserve(nv);
  data.tau.reserve(nv);
  for (int a = 0; a < static_cast<int>(nv); ++a) {
    const UnitVec2 n = field.director(a);
    const UnitVec2 nu = double_angle(n);
    data.n.push_back(n);
    data.t.push_back(rotate90(n));
    data.nu.push_back(nu);
    data.tau.push_back(rotate90(nu));
  }
  return data;
}

void AdmmParams::validate(std::size_t num_interior) const {
  if (!(zeta > 0.0)) throw DomainError("zeta must be positive");
  if (!(rho > 0.0)) throw DomainError("rho must be positive");
  if (!(eps_pri > 0.0)) throw DomainError("eps_pri must be positive");
  if (max_inner < 1) throw DomainError("max_inner must be at least 1");
  if (d.size() != 0) {
    if (static_cast<std::size_t>(d.size()) != num_interior) {
      throw DomainError("D must have one entry per interior vertex");
    }
    if (!(d.minCoeff() > 0.0)) throw DomainError("entries of D must be positive");
  }
}

Eigen::VectorXd AdmmParams::weights(std::size_t num_interior) const {
  if (d.size() == 0) return Eigen::VectorXd::Ones(static_cast<Eigen::Index>(num_interior));
  return d;
}

AdmmState AdmmState::zeros(std::size_t num_interior) {
  const auto m = static_cast<Eigen::Index>(num_interior);
  return AdmmState{Eigen::VectorXd::Zero(m), Eigen::VectorXd::Zero(m), Eigen::VectorXd::Zero(m)};
}

double phi_clamped(double r, ClampCounter* counter) { return phi(clamp_argument(r, counter)); }

double phi_prime_clamped(double r, ClampCounter* counter) {
  return phi_prime(clamp_argument(r, counter));
}

double objective_F1(const IterateData& data, const Eigen::VectorXd& r, const Triangulation& mesh,
                    const MaterialConstants& mc) {
  return split_objective(data, r, mesh, mc.m_c * mc.m_c, false);
}

double objective_F2(const IterateData& data, const Eigen::VectorXd& p, const Triangulation& mesh,
                    const MaterialConstants& mc) {
  return split_objective(data, p, mesh, mc.q_c * mc.q_c, true);
}

Eigen::VectorXd grad_F1(const IterateData& data, const Eigen::VectorXd& r, const Triangulation& mesh,
                        const MaterialConstants& mc) {
  return split_gradient(data, r, mesh, mc.m_c * mc.m_c, tt, tn);
}

Eigen::VectorXd grad_F2(const IterateData& data, const Eigen::VectorXd& p, const Triangulation& mesh,
                        const MaterialConstants& mc) {
  return split_gradient(data, p, mesh, mc.q_c * mc.q_c, tau_tau, tau_nu);
}

InnerProblem::InnerProblem(const IterateData& data, const AdmmParams& params, const Triangulation& mesh,
                           const MaterialConstants& mc)
    : params_(params) {
  if (data.size() != mesh.num_vertices()) throw Error("InnerProblem: iterate data does not match mesh");
  params_.validate(mesh.num_interior());
  d_ = params_.weights(mesh.num_interior());
  assemble_split(data, mesh, mc.m_c * mc.m_c, tt, tn, h1_, c1_);
  assemble_split(data, mesh, mc.q_c * mc.q_c, tau_tau, tau_nu, h2_, c2_);
}

SparseMatrix InnerProblem::r_step_matrix(const AdmmState& state, ClampCounter* clamps) const {
  SparseMatrix a = h1_;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    const double dphi = phi_prime_clamped(state.r[i], clamps);
    a.coeffRef(i, i) += params_.zeta * d_[i] * dphi * dphi;
  }
  return a;
}

Eigen::VectorXd InnerProblem::r_step_rhs(const AdmmState& state, ClampCounter* clamps) const {
  Eigen::VectorXd b = -c1_;
  for (Eigen::Index i = 0; i < b.size(); ++i) {
    const double r = state.r[i];
    const double f = phi_clamped(r, clamps);
    const double dphi = phi_prime_clamped(r, clamps);
    b[i] += d_[i] * state.lambda[i] * dphi +
            params_.zeta * d_[i] * (state.p[i] - f + dphi * r) * dphi;
  }
  return b;
}

SparseMatrix InnerProblem::p_step_matrix() const {
  SparseMatrix a = h2_;
  for (Eigen::Index i = 0; i < a.rows(); ++i) a.coeffRef(i, i) += params_.zeta * d_[i];
  return a;
}

Eigen::VectorXd InnerProblem::p_step_rhs(const Eigen::VectorXd& r_next, const Eigen::VectorXd& lambda,
                                         ClampCounter* clamps) const {
  Eigen::VectorXd b = -c2_;
  for (Eigen::Index i = 0; i < b.size(); ++i) {
    b[i] += -d_[i] * lambda[i] + params_.zeta * d_[i] * phi_clamped(r_next[i], clamps);
  }
  return b;
}

Eigen::VectorXd InnerProblem::solve_r_step(const AdmmState& state, SolveStats* stats, ClampCounter* clamps) {
  r_solver_.compute(r_step_matrix(state, clamps));
  return r_solver_.solve(r_step_rhs(state, clamps), stats);
}

Eigen::VectorXd InnerProblem::solve_p_step(const Eigen::VectorXd& r_next, const Eigen::VectorXd& lambda,
                                           SolveStats* stats, ClampCounter* clamps) {
  if (!p_factorized_) {
    p_solver_.compute(p_step_matrix());
    p_factorized_ = true;
  }
  return p_solver_.solve(p_step_rhs(r_next, lambda, clamps), stats);
}

Eigen::VectorXd solve_r_step(const AdmmState& state, const IterateData& data, const AdmmParams& params,
                             const Triangulation& mesh, const MaterialConstants& mc) {
  InnerProblem problem(data, params, mesh, mc);
  return problem.solve_r_step(state);
}

Eigen::VectorXd solve_p_step(const AdmmState& state, const IterateData& data, const AdmmParams& params,
                             const Triangulation& mesh, const MaterialConstants& mc) {
  InnerProblem problem(data, params, mesh, mc);
  return problem.solve_p_step(state.r, state.lambda);
}

Eigen::VectorXd update_lambda(const AdmmState& state, const AdmmParams& params, ClampCounter* clamps) {
  const Eigen::VectorXd d = params.weights(static_cast<std::size_t>(state.lambda.size()));
  Eigen::VectorXd lambda = state.lambda;
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    lambda[i] += params.rho * d[i] * (state.p[i] - phi_clamped(state.r[i], clamps));
  }
  return lambda;
}

double coupling_residual(const AdmmState& state, ClampCounter* clamps) {
  const auto m = state.r.size();
  if (m == 0) return 0.0;
  double sum = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    const double diff = phi_clamped(state.r[i], clamps) - state.p[i];
    sum += diff * diff;
  }
  return std::sqrt(sum / static_cast<double>(m));
}

Eigen::VectorXd r_step_stationarity(const Eigen::VectorXd& r_next, const AdmmState& state,
                                    const IterateData& data, const AdmmParams& params,
                                    const Triangulation& mesh, const MaterialConstants& mc) {
  const Eigen::VectorXd d = params.weights(mesh.num_interior());
  Eigen::VectorXd g = grad_F1(data, r_next, mesh, mc);
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    const double r = state.r[i];
    const double dphi = phi_prime(r);
    g[i] += -d[i] * state.lambda[i] * dphi -
            params.zeta * d[i] * (state.p[i] - phi(r) - dphi * (r_next[i] - r)) * dphi;
  }
  return g;
}

Eigen::VectorXd p_step_stationarity(const Eigen::VectorXd& p_next, const AdmmState& state,
                                    const IterateData& data, const AdmmParams& params,
                                    const Triangulation& mesh, const MaterialConstants& mc) {
  const Eigen::VectorXd d = params.weights(mesh.num_interior());
  Eigen::VectorXd g = grad_F2(data, p_next, mesh, mc);
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    g[i] += d[i] * state.lambda[i] + params.zeta * d[i] * (p_next[i] - phi(state.r[i]));
  }
  return g;
}

AdmmResult admm_solve(const IterateData& data, const AdmmState& warm, const AdmmParams& params,
                      const Triangulation& mesh, const MaterialConstants& mc) {
  const auto m = mesh.num_interior();
  if (static_cast<std::size_t>(warm.r.size()) != m || static_cast<std::size_t>(warm.p.size()) != m ||
      static_cast<std::size_t>(warm.lambda.size()) != m) {
    throw Error("admm_solve: warm state does not match the interior vertex count");
  }
  AdmmResult result;
  result.final_state = warm;
  if (m == 0) {
    result.r_star = warm.r;
    return result;
  }

  InnerProblem problem(data, params, mesh, mc);
  ClampCounter clamps;
  AdmmState& state = result.final_state;
  double residual = 0.0;
  for (int it = 1; it <= params.max_inner; ++it) {
    SolveStats stats;
    Eigen::VectorXd r_next = problem.solve_r_step(state, &stats, &clamps);
    result.max_linear_residual = std::max(result.max_linear_residual, stats.relative_residual);
    Eigen::VectorXd p_next = problem.solve_p_step(r_next, state.lambda, &stats, &clamps);
    result.max_linear_residual = std::max(result.max_linear_residual, stats.relative_residual);
    state.r = std::move(r_next);
    state.p = std::move(p_next);
    state.lambda = update_lambda(state, params, &clamps);
    residual = coupling_residual(state, &clamps);
    if (residual <= params.eps_pri) {
      result.iterations = it;
      result.residual = residual;
      result.r_star = state.r;
      result.clamp_events = clamps.events;
      return result;
    }
  }
  throw NonConvergenceError("ADMM did not reach eps_pri within max_inner iterations",
                            params.max_inner, residual);
}

}  // namespace ferronem
