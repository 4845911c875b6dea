#pragma once

#include <array>
#include <cmath>
#include <memory>
#include <random>
#include <vector>

#include "ferronem/fields.hpp"
#include "ferronem/manifold.hpp"
#include "ferronem/mesh.hpp"

namespace ferronem::testing {

inline std::mt19937_64 rng(unsigned long seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& gen, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(gen);
}

inline UnitVec2 random_unit(std::mt19937_64& gen) {
  return UnitVec2::from_angle(uniform(gen, -M_PI, M_PI));
}

inline std::shared_ptr<const Triangulation> structured(int n) {
  return std::make_shared<const Triangulation>(generate_structured(n));
}

inline NodalField random_field(std::shared_ptr<const Triangulation> mesh, const MaterialConstants& mc,
                               std::mt19937_64& gen) {
  std::vector<ManifoldPoint> values;
  for (std::size_t a = 0; a < mesh->num_vertices(); ++a) values.push_back(lift(random_unit(gen), mc));
  return NodalField(mesh, mc, std::move(values));
}

/// Field whose directors are a small random perturbation of a smooth
/// rotation, so that |n(a) - n(b)| stays small across edges.
inline NodalField smooth_field(std::shared_ptr<const Triangulation> mesh, const MaterialConstants& mc,
                               std::mt19937_64& gen, double noise = 0.2) {
  const double k1 = uniform(gen, -2, 2);
  const double k2 = uniform(gen, -2, 2);
  std::vector<ManifoldPoint> values;
  for (const auto& x : mesh->vertices()) {
    values.push_back(lift(UnitVec2::from_angle(k1 * x.x() + k2 * x.y() + uniform(gen, -noise, noise)), mc));
  }
  return NodalField(mesh, mc, std::move(values));
}

/// d lift(n) applied to v, written out from the derivative of
/// n -> (Q (2n1^2 - 1, 2 n1 n2), M n).
inline std::array<double, 4> d_lift(const UnitVec2& n, double v1, double v2, const MaterialConstants& mc) {
  return {mc.q_c * 4.0 * n.x() * v1, mc.q_c * 2.0 * (n.y() * v1 + n.x() * v2), mc.m_c * v1, mc.m_c * v2};
}

/// Off-diagonal P1 stiffness contribution of one triangle for the edge
/// opposite vertex `opposite`: -cot(angle at that vertex) / 2.
inline double cotangent_weight(const Point2& opposite, const Point2& a, const Point2& b) {
  const Point2 u = a - opposite;
  const Point2 v = b - opposite;
  const double cross = u.x() * v.y() - u.y() * v.x();
  return -0.5 * u.dot(v) / std::abs(cross);
}

}  // namespace ferronem::testing
