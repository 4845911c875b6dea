#pragma once

#include <array>
#include <vector>

namespace ferronem {

/// Symmetric quadrature rule on a triangle. Points are barycentric
/// coordinates; weights sum to one (multiply by the element area).
struct TriangleRule {
  int degree = 0;
  std::vector<std::array<double, 3>> points;
  std::vector<double> weights;
};

/// Cheapest available rule exact for polynomials of total degree
/// `min_degree` (1 <= min_degree <= 8). Throws DomainError otherwise.
const TriangleRule& triangle_rule(int min_degree);

}  // namespace ferronem
