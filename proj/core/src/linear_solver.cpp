#include "ferronem/linear_solver.hpp"

#include <Eigen/IterativeLinearSolvers>

#include "ferronem/errors.hpp"

namespace ferronem {

namespace {

double relative_residual(const SparseMatrix& a, const Eigen::VectorXd& x, const Eigen::VectorXd& b,
                         double b_norm) {
  return (a * x - b).norm() / b_norm;
}

}  // namespace

void SpdSolver::compute(const SparseMatrix& a) {
  a_ = a;
  if (!analyzed_ || a.rows() != pattern_rows_ || a.nonZeros() != pattern_nnz_) {
    ldlt_.analyzePattern(a_);
    analyzed_ = true;
    pattern_rows_ = a.rows();
    pattern_nnz_ = a.nonZeros();
  }
  ldlt_.factorize(a_);
  factorized_ = ldlt_.info() == Eigen::Success;
}

Eigen::VectorXd SpdSolver::solve(const Eigen::VectorXd& b, SolveStats* stats) const {
  SolveStats local;
  SolveStats& st = stats ? *stats : local;
  st = SolveStats{};

  const double b_norm = b.norm();
  if (b_norm == 0.0) return Eigen::VectorXd::Zero(b.size());

  Eigen::VectorXd x = Eigen::VectorXd::Zero(b.size());
  double res = 1.0;
  if (factorized_) {
    x = ldlt_.solve(b);
    res = relative_residual(a_, x, b, b_norm);
    while (res > tolerance_ && st.refinement_steps < 4) {
      const Eigen::VectorXd correction = ldlt_.solve(b - a_ * x);
      const Eigen::VectorXd candidate = x + correction;
      const double next = relative_residual(a_, candidate, b, b_norm);
      ++st.refinement_steps;
      if (!(next < res)) break;
      x = candidate;
      res = next;
    }
  }
  if (!(res <= tolerance_)) {
    Eigen::ConjugateGradient<SparseMatrix, Eigen::Lower | Eigen::Upper> cg;
    cg.setTolerance(1e-13);
    cg.setMaxIterations(10 * static_cast<Eigen::Index>(b.size()));
    cg.compute(a_);
    const Eigen::VectorXd candidate = cg.solveWithGuess(b, x);
    const double cg_res = relative_residual(a_, candidate, b, b_norm);
    st.used_fallback = true;
    if (cg_res < res) {
      x = candidate;
      res = cg_res;
    }
  }
  st.relative_residual = res;
  if (!(res <= tolerance_)) {
    throw LinearSolverError("SPD solve did not reach the residual tolerance", res);
  }
  return x;
}

}  // namespace ferronem
