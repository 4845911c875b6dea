#pragma once

#include <array>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "ferronem/manifold.hpp"
#include "ferronem/mesh.hpp"

namespace ferronem {

using Vec4 = std::array<double, 4>;
/// Spatial gradient of an R^4-valued map: row i is grad(Psi_i).
using Gradient4 = Eigen::Matrix<double, 4, 2>;

/// Piecewise-affine field with one manifold point per mesh vertex.
class NodalField {
 public:
  NodalField(std::shared_ptr<const Triangulation> mesh, MaterialConstants constants,
             std::vector<ManifoldPoint> values);

  const Triangulation& mesh() const noexcept { return *mesh_; }
  const std::shared_ptr<const Triangulation>& mesh_ptr() const noexcept { return mesh_; }
  const MaterialConstants& constants() const noexcept { return constants_; }

  const std::vector<ManifoldPoint>& values() const noexcept { return values_; }
  const ManifoldPoint& operator[](int a) const { return values_[static_cast<std::size_t>(a)]; }
  std::size_t size() const noexcept { return values_.size(); }

  /// n(a) = M_c^{-1} (Psi_3, Psi_4).
  UnitVec2 director(int a) const { return unlift((*this)[a], constants_); }

  std::vector<Vec4> raw() const;

 private:
  std::shared_ptr<const Triangulation> mesh_;
  MaterialConstants constants_;
  std::vector<ManifoldPoint> values_;
};

/// Closed-form map Omega -> N, optionally with an exact gradient. When
/// `gradient` is empty, derivatives are taken by central differences.
struct AnalyticSolution {
  std::function<ManifoldPoint(const Point2&)> eval;
  std::function<Gradient4(const Point2&)> gradient;
  std::string label;
};

/// Energy from nodal increments along mesh edges:
///   E = -1/4 sum_{a != b} k_ab { Q_c^2 |nu(a) - nu(b)|^2 + M_c^2 |n(a) - n(b)|^2 }.
double energy_pairwise(const NodalField& field);

/// 1/2 \int |grad Phi|^2 integrated exactly element by element.
double energy_quadrature(const NodalField& field);

/// Same as energy_quadrature for arbitrary R^4 nodal data (no manifold
/// constraint).
double dirichlet_energy(const Triangulation& mesh, std::span<const Vec4> values);

/// Constant gradient of the P1 interpolant of `values` on triangle t.
Gradient4 element_gradient(const Triangulation& mesh, int t, std::span<const Vec4> values);

/// Nodal interpolation. Boundary vertices therefore carry the trace of sol.
NodalField interpolate(const AnalyticSolution& sol, std::shared_ptr<const Triangulation> mesh,
                       const MaterialConstants& constants);

/// Evaluates a P1 field at an arbitrary point (brute-force point location).
/// The result must lie on N, which in practice restricts it to vertices.
AnalyticSolution piecewise_linear_solution(const NodalField& field);

/// Central differences with the given step.
Gradient4 finite_difference_gradient(const AnalyticSolution& sol, const Point2& x, double step);

struct ErrorNorms {
  double h1_semi = 0.0;
  double l2 = 0.0;
};

/// H^1-seminorm and L^2 errors of field - sol with a triangle rule of degree
/// `quad_order` (>= 6). Uses sol.gradient when available, otherwise central
/// differences with step 1e-6 h.
ErrorNorms error_norms(const NodalField& field, const AnalyticSolution& sol, int quad_order = 6);

/// 1/2 \int |grad sol|^2 by quadrature of degree `quad_order` (>= 6) on the mesh.
double reference_energy(const AnalyticSolution& sol, const Triangulation& mesh, int quad_order = 6);

}  // namespace ferronem
