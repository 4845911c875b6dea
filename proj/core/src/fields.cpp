#include "ferronem/fields.hpp"

#include <cmath>
#include <string>

#include "ferronem/errors.hpp"
#include "ferronem/quadrature.hpp"

namespace ferronem {

namespace {

const TriangleRule& norm_rule(int quad_order) {
  if (quad_order < 6) {
    throw DomainError("quadrature order must be >= 6, got " + std::to_string(quad_order));
  }
  return triangle_rule(quad_order);
}

Gradient4 solution_gradient(const AnalyticSolution& sol, const Point2& x, double fd_step) {
  if (sol.gradient) return sol.gradient(x);
  return finite_difference_gradient(sol, x, fd_step);
}

Eigen::Vector4d as_vector(const ManifoldPoint& p) {
  return Eigen::Vector4d(p[0], p[1], p[2], p[3]);
}

}  // namespace

NodalField::NodalField(std::shared_ptr<const Triangulation> mesh, MaterialConstants constants,
                       std::vector<ManifoldPoint> values)
    : mesh_(std::move(mesh)), constants_(constants), values_(std::move(values)) {
  if (!mesh_) throw Error("NodalField: null mesh");
  if (values_.size() != mesh_->num_vertices()) {
    throw Error("NodalField: expected " + std::to_string(mesh_->num_vertices()) +
                " nodal values, got " + std::to_string(values_.size()));
  }
}

std::vector<Vec4> NodalField::raw() const {
  std::vector<Vec4> out;
  out.reserve(values_.size());
  for (const auto& v : values_) out.push_back(v.psi());
  return out;
}

double energy_pairwise(const NodalField& field) {
  const auto& mc = field.constants();
  const auto& mesh = field.mesh();
  std::vector<UnitVec2> n;
  std::vector<UnitVec2> nu;
  n.reserve(field.size());
  nu.reserve(field.size());
  for (int a = 0; a < static_cast<int>(field.size()); ++a) {
    n.push_back(field.director(a));
    nu.push_back(double_angle(n.back()));
  }
  const double q2 = mc.q_c * mc.q_c;
  const double m2 = mc.m_c * mc.m_c;
  const SparseMatrix& k = mesh.stiffness();
  double sum = 0.0;
  for (int col = 0; col < k.outerSize(); ++col) {
    const auto b = static_cast<std::size_t>(col);
    for (SparseMatrix::InnerIterator it(k, col); it; ++it) {
      const auto a = static_cast<std::size_t>(it.row());
      if (a == b) continue;
      const double dnu = std::pow(nu[a].x() - nu[b].x(), 2) + std::pow(nu[a].y() - nu[b].y(), 2);
      const double dn = std::pow(n[a].x() - n[b].x(), 2) + std::pow(n[a].y() - n[b].y(), 2);
      sum += it.value() * (q2 * dnu + m2 * dn);
    }
  }
  return -0.25 * sum;
}

Gradient4 element_gradient(const Triangulation& mesh, int t, std::span<const Vec4> values) {
  const auto& tri = mesh.triangles()[static_cast<std::size_t>(t)];
  const auto g = barycentric_gradients(mesh.vertex(tri[0]), mesh.vertex(tri[1]), mesh.vertex(tri[2]));
  Gradient4 grad = Gradient4::Zero();
  for (std::size_t i = 0; i < 3; ++i) {
    const Vec4& v = values[static_cast<std::size_t>(tri[i])];
    for (int c = 0; c < 4; ++c) grad.row(c) += v[static_cast<std::size_t>(c)] * g[i].transpose();
  }
  return grad;
}

double dirichlet_energy(const Triangulation& mesh, std::span<const Vec4> values) {
  if (values.size() != mesh.num_vertices()) throw Error("dirichlet_energy: size mismatch");
  double sum = 0.0;
  for (int t = 0; t < static_cast<int>(mesh.num_triangles()); ++t) {
    sum += mesh.area(t) * element_gradient(mesh, t, values).squaredNorm();
  }
  return 0.5 * sum;
}

double energy_quadrature(const NodalField& field) {
  const auto raw = field.raw();
  return dirichlet_energy(field.mesh(), raw);
}

NodalField interpolate(const AnalyticSolution& sol, std::shared_ptr<const Triangulation> mesh,
                       const MaterialConstants& constants) {
  std::vector<ManifoldPoint> values;
  values.reserve(mesh->num_vertices());
  for (const auto& p : mesh->vertices()) values.push_back(sol.eval(p));
  return NodalField(std::move(mesh), constants, std::move(values));
}

AnalyticSolution piecewise_linear_solution(const NodalField& field) {
  AnalyticSolution sol;
  sol.label = "piecewise-linear";
  sol.eval = [field](const Point2& x) {
    const auto& mesh = field.mesh();
    for (int t = 0; t < static_cast<int>(mesh.num_triangles()); ++t) {
      const auto& tri = mesh.triangles()[static_cast<std::size_t>(t)];
      const auto& p0 = mesh.vertex(tri[0]);
      const auto g = barycentric_gradients(p0, mesh.vertex(tri[1]), mesh.vertex(tri[2]));
      const Point2 d = x - p0;
      const double l1 = g[1].dot(d);
      const double l2 = g[2].dot(d);
      const double l0 = 1.0 - l1 - l2;
      constexpr double eps = -1e-12;
      if (l0 < eps || l1 < eps || l2 < eps) continue;
      const std::array<double, 3> lambda{l0, l1, l2};
      Vec4 v{};
      for (std::size_t i = 0; i < 3; ++i) {
        // Snap to the vertex value so that vertex evaluation is exact.
        if (std::abs(lambda[i] - 1.0) <= 1e-12) return field[tri[i]];
        for (std::size_t c = 0; c < 4; ++c) v[c] += lambda[i] * field[tri[i]][static_cast<int>(c)];
      }
      return ManifoldPoint::checked(v, field.constants());
    }
    throw DomainError("point outside the triangulation");
  };
  return sol;
}

Gradient4 finite_difference_gradient(const AnalyticSolution& sol, const Point2& x, double step) {
  Gradient4 grad;
  for (int dir = 0; dir < 2; ++dir) {
    Point2 e = Point2::Zero();
    e[dir] = step;
    const auto plus = sol.eval(x + e);
    const auto minus = sol.eval(x - e);
    for (int c = 0; c < 4; ++c) grad(c, dir) = (plus[c] - minus[c]) / (2.0 * step);
  }
  return grad;
}

ErrorNorms error_norms(const NodalField& field, const AnalyticSolution& sol, int quad_order) {
  const TriangleRule& rule = norm_rule(quad_order);
  const auto& mesh = field.mesh();
  const auto raw = field.raw();
  const double fd_step = 1e-6 * mesh.h();
  double h1 = 0.0;
  double l2 = 0.0;
  for (int t = 0; t < static_cast<int>(mesh.num_triangles()); ++t) {
    const auto& tri = mesh.triangles()[static_cast<std::size_t>(t)];
    const Gradient4 grad_h = element_gradient(mesh, t, raw);
    double h1_t = 0.0;
    double l2_t = 0.0;
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      const auto& lam = rule.points[q];
      Point2 x = Point2::Zero();
      Eigen::Vector4d value_h = Eigen::Vector4d::Zero();
      for (std::size_t i = 0; i < 3; ++i) {
        x += lam[i] * mesh.vertex(tri[i]);
        value_h += lam[i] * as_vector(field[tri[i]]);
      }
      const Eigen::Vector4d value = as_vector(sol.eval(x));
      const Gradient4 grad = solution_gradient(sol, x, fd_step);
      h1_t += rule.weights[q] * (grad_h - grad).squaredNorm();
      l2_t += rule.weights[q] * (value_h - value).squaredNorm();
    }
    h1 += mesh.area(t) * h1_t;
    l2 += mesh.area(t) * l2_t;
  }
  return {std::sqrt(h1), std::sqrt(l2)};
}

double reference_energy(const AnalyticSolution& sol, const Triangulation& mesh, int quad_order) {
  const TriangleRule& rule = norm_rule(quad_order);
  const double fd_step = 1e-6 * mesh.h();
  double sum = 0.0;
  for (int t = 0; t < static_cast<int>(mesh.num_triangles()); ++t) {
    const auto& tri = mesh.triangles()[static_cast<std::size_t>(t)];
    double local = 0.0;
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      const auto& lam = rule.points[q];
      const Point2 x = lam[0] * mesh.vertex(tri[0]) + lam[1] * mesh.vertex(tri[1]) +
                       lam[2] * mesh.vertex(tri[2]);
      local += rule.weights[q] * solution_gradient(sol, x, fd_step).squaredNorm();
    }
    sum += mesh.area(t) * local;
  }
  return 0.5 * sum;
}

}  // namespace ferronem
