#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCholesky>

#include "ferronem/mesh.hpp"

namespace ferronem {

struct SolveStats {
  /// |A x - b| / |b| after the final correction (0 when b = 0).
  double relative_residual = 0.0;
  int refinement_steps = 0;
  bool used_fallback = false;
};

/// Symmetric positive definite sparse solver with a residual contract.
///
/// A sparse LDL^T factorization is tried first, followed by iterative
/// refinement. If the factorization breaks down or the residual stays above
/// the tolerance, Jacobi-preconditioned conjugate gradients (tolerance
/// 1e-13, at most 10 m iterations) take over. A solve whose final relative
/// residual exceeds `tolerance` throws LinearSolverError.
class SpdSolver {
 public:
  explicit SpdSolver(double tolerance = 1e-12) : tolerance_(tolerance) {}

  /// Factorizes A. The symbolic analysis is reused while the sparsity
  /// pattern keeps the same size and number of non-zeros.
  void compute(const SparseMatrix& a);

  Eigen::VectorXd solve(const Eigen::VectorXd& b, SolveStats* stats = nullptr) const;

  double tolerance() const noexcept { return tolerance_; }

 private:
  double tolerance_;
  SparseMatrix a_;
  Eigen::SimplicialLDLT<SparseMatrix> ldlt_;
  bool analyzed_ = false;
  bool factorized_ = false;
  Eigen::Index pattern_rows_ = -1;
  Eigen::Index pattern_nnz_ = -1;
};

}  // namespace ferronem
