#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "ferronem/fields.hpp"
#include "ferronem/manifold.hpp"
#include "ferronem/mesh.hpp"

namespace ferronem {

/// Closed polygonal domain used to place vortex centers and to build the
/// blending weight of the initial guess.
class Domain {
 public:
  static Domain unit_square();
  /// Polygon bounded by the boundary edges of a triangulation. The inradius is
  /// approximated by the largest boundary distance over vertices and
  /// element centroids.
  static Domain from_mesh(const Triangulation& mesh);

  bool contains(const Point2& x) const;
  double distance_to_boundary(const Point2& x) const;
  /// max_{x in Omega} dist(x, boundary).
  double inradius() const noexcept { return inradius_; }
  bool is_unit_square() const noexcept { return unit_square_; }

 private:
  Domain() = default;

  bool unit_square_ = false;
  std::vector<std::pair<Point2, Point2>> segments_;
  std::shared_ptr<const Triangulation> cover_;
  double inradius_ = 0.0;
};

/// Euclidean distance from x to the segment [p, q].
double point_segment_distance(const Point2& x, const Point2& p, const Point2& q);

enum class VortexVariant { single_angle, triple_angle };

/// Vortex director field centred at a point outside the closed domain.
struct VortexSpec {
  Point2 center;
  VortexVariant variant = VortexVariant::single_angle;

  /// Throws DomainError unless dist(center, closure(domain)) >= 1e-6.
  static VortexSpec make(const Point2& center, VortexVariant variant,
                         const Domain& domain = Domain::unit_square());
};

/// x0 = (2, 0.2), single-angle director.
VortexSpec example1_spec();
/// y0 = (1.2, 0.2), triple-angle director.
VortexSpec example2_spec();
/// End point x1 of the centre path used by initial_guess for Example 1.
inline Point2 default_path_end() { return Point2(1.5, 1.5); }
/// End point for Example 2: the centre moves straight away from the right
/// side. With (1.5, 1.5) the coarse structured meshes trap the descent in a
/// spurious local minimizer. With (2.8, 0.2) the initial energy exceeds the
/// reference energy by about 36, 44 and 46 on n = 23, 45, 89.
inline Point2 example2_path_end() { return Point2(2.8, 0.2); }

/// n(X; x) = -(x - X)^perp / |x - X|, followed by the triple-angle map
/// (4n_1^3 - 3n_1, 3n_2 - 4n_2^3) for VortexVariant::triple_angle.
/// Throws SingularityError at x = X.
UnitVec2 vortex_director(const Point2& center, VortexVariant variant, const Point2& x);
inline UnitVec2 vortex_director(const VortexSpec& spec, const Point2& x) {
  return vortex_director(spec.center, spec.variant, x);
}

/// x -> lift(vortex_director(spec, x)) with closed-form gradient.
AnalyticSolution analytic_solution(const VortexSpec& spec, const MaterialConstants& constants);

/// delta(x) = dist(x, boundary) / inradius, in [0, 1] on the closed domain.
double blend_weight(const Domain& domain, const Point2& x);

/// Psi^0(a) = lift(vortex_director(Y(a), a)) with Y(a) = (1 - delta(a)) X + delta(a) x1.
/// Boundary vertices get Y = X and hence reproduce the Dirichlet trace.
NodalField initial_guess(const VortexSpec& spec, const Point2& x1,
                         std::shared_ptr<const Triangulation> mesh,
                         const MaterialConstants& constants,
                         const Domain& domain = Domain::unit_square());

/// (vertex, Psi^b(vertex)) for every boundary vertex, in increasing vertex order.
std::vector<std::pair<int, ManifoldPoint>> dirichlet_trace(const AnalyticSolution& sol,
                                                           const Triangulation& mesh);

}  // namespace ferronem
