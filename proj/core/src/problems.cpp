#include "ferronem/problems.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ferronem/errors.hpp"

namespace ferronem {

namespace {

constexpr double kCenterMargin = 1e-6;

bool inside_triangle(const Triangulation& mesh, int t, const Point2& x) {
  const auto& tri = mesh.triangles()[static_cast<std::size_t>(t)];
  const auto& p0 = mesh.vertex(tri[0]);
  const auto g = barycentric_gradients(p0, mesh.vertex(tri[1]), mesh.vertex(tri[2]));
  const double l1 = g[1].dot(x - p0);
  const double l2 = g[2].dot(x - p0);
  constexpr double eps = -1e-12;
  return l1 >= eps && l2 >= eps && 1.0 - l1 - l2 >= eps;
}

}  // namespace

double point_segment_distance(const Point2& x, const Point2& p, const Point2& q) {
  const Point2 d = q - p;
  const double len2 = d.squaredNorm();
  double s = len2 > 0.0 ? (x - p).dot(d) / len2 : 0.0;
  s = std::clamp(s, 0.0, 1.0);
  return (x - (p + s * d)).norm();
}

Domain Domain::unit_square() {
  Domain d;
  d.unit_square_ = true;
  const Point2 c[4] = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  for (int i = 0; i < 4; ++i) d.segments_.emplace_back(c[i], c[(i + 1) % 4]);
  d.inradius_ = 0.5;
  return d;
}

Domain Domain::from_mesh(const Triangulation& mesh) {
  Domain d;
  for (const auto& e : mesh.boundary_edges()) d.segments_.emplace_back(mesh.vertex(e[0]), mesh.vertex(e[1]));
  d.cover_ = std::make_shared<const Triangulation>(mesh);
  double r = 0.0;
  for (const auto& p : mesh.vertices()) r = std::max(r, d.distance_to_boundary(p));
  for (const auto& tri : mesh.triangles()) {
    const Point2 c = (mesh.vertex(tri[0]) + mesh.vertex(tri[1]) + mesh.vertex(tri[2])) / 3.0;
    r = std::max(r, d.distance_to_boundary(c));
  }
  d.inradius_ = r;
  return d;
}

bool Domain::contains(const Point2& x) const {
  if (unit_square_) return x.x() >= 0.0 && x.x() <= 1.0 && x.y() >= 0.0 && x.y() <= 1.0;
  for (int t = 0; t < static_cast<int>(cover_->num_triangles()); ++t) {
    if (inside_triangle(*cover_, t, x)) return true;
  }
  return false;
}

double Domain::distance_to_boundary(const Point2& x) const {
  if (unit_square_ && contains(x)) {
    return std::min({x.x(), x.y(), 1.0 - x.x(), 1.0 - x.y()});
  }
  double best = std::numeric_limits<double>::infinity();
  for (const auto& [p, q] : segments_) best = std::min(best, point_segment_distance(x, p, q));
  return best;
}

VortexSpec VortexSpec::make(const Point2& center, VortexVariant variant, const Domain& domain) {
  if (domain.contains(center) || domain.distance_to_boundary(center) < kCenterMargin) {
    std::ostringstream os;
    os << "vortex centre (" << center.x() << ", " << center.y()
       << ") must lie outside the closed domain with margin " << kCenterMargin;
    throw DomainError(os.str());
  }
  return VortexSpec{center, variant};
}

VortexSpec example1_spec() {
  return VortexSpec::make(Point2(2.0, 0.2), VortexVariant::single_angle);
}

VortexSpec example2_spec() {
  return VortexSpec::make(Point2(1.2, 0.2), VortexVariant::triple_angle);
}

UnitVec2 vortex_director(const Point2& center, VortexVariant variant, const Point2& x) {
  const Point2 v = x - center;
  const double len = v.norm();
  if (!(len > 1e-12)) {
    std::ostringstream os;
    os << "vortex director is singular at (" << x.x() << ", " << x.y() << ")";
    throw SingularityError(os.str());
  }
  // -(v)^perp with v^perp = (-v_2, v_1).
  const double n1 = v.y() / len;
  const double n2 = -v.x() / len;
  if (variant == VortexVariant::single_angle) return UnitVec2::from(n1, n2);
  return UnitVec2::from(4.0 * n1 * n1 * n1 - 3.0 * n1, 3.0 * n2 - 4.0 * n2 * n2 * n2);
}

AnalyticSolution analytic_solution(const VortexSpec& spec, const MaterialConstants& constants) {
  AnalyticSolution sol;
  sol.label = spec.variant == VortexVariant::single_angle ? "vortex" : "vortex-triple";
  sol.eval = [spec, constants](const Point2& x) {
    return lift(vortex_director(spec, x), constants);
  };
  sol.gradient = [spec, constants](const Point2& x) {
    const Point2 v = x - spec.center;
    const double len = v.norm();
    if (!(len > 1e-12)) throw SingularityError("vortex gradient is singular at the centre");
    const Point2 u = v / len;
    const Eigen::Matrix2d du = (Eigen::Matrix2d::Identity() - u * u.transpose()) / len;
    Eigen::Matrix2d rot;
    rot << 0.0, 1.0, -1.0, 0.0;
    Eigen::Matrix2d dn = rot * du;
    Point2 n = rot * u;
    if (spec.variant == VortexVariant::triple_angle) {
      Eigen::Matrix2d dm = Eigen::Matrix2d::Zero();
      dm(0, 0) = 12.0 * n.x() * n.x() - 3.0;
      dm(1, 1) = 3.0 - 12.0 * n.y() * n.y();
      dn = dm * dn;
      n = Point2(4.0 * std::pow(n.x(), 3) - 3.0 * n.x(), 3.0 * n.y() - 4.0 * std::pow(n.y(), 3));
    }
    Eigen::Matrix<double, 4, 2> dpsi;
    const double q = constants.q_c;
    const double m = constants.m_c;
    dpsi << 4.0 * q * n.x(), 0.0,
            2.0 * q * n.y(), 2.0 * q * n.x(),
            m, 0.0,
            0.0, m;
    return Gradient4(dpsi * dn);
  };
  return sol;
}

double blend_weight(const Domain& domain, const Point2& x) {
  return std::clamp(domain.distance_to_boundary(x) / domain.inradius(), 0.0, 1.0);
}

NodalField initial_guess(const VortexSpec& spec, const Point2& x1,
                         std::shared_ptr<const Triangulation> mesh,
                         const MaterialConstants& constants, const Domain& domain) {
  if (domain.contains(x1)) throw DomainError("initial_guess: path end point must lie outside the domain");
  std::vector<ManifoldPoint> values;
  values.reserve(mesh->num_vertices());
  for (int a = 0; a < static_cast<int>(mesh->num_vertices()); ++a) {
    const Point2& x = mesh->vertex(a);
    Point2 center = spec.center;
    if (!mesh->is_boundary(a)) {
      const double delta = blend_weight(domain, x);
      center = (1.0 - delta) * spec.center + delta * x1;
    }
    values.push_back(lift(vortex_director(center, spec.variant, x), constants));
  }
  return NodalField(std::move(mesh), constants, std::move(values));
}

std::vector<std::pair<int, ManifoldPoint>> dirichlet_trace(const AnalyticSolution& sol,
                                                           const Triangulation& mesh) {
  std::vector<std::pair<int, ManifoldPoint>> trace;
  for (int a = 0; a < static_cast<int>(mesh.num_vertices()); ++a) {
    if (mesh.is_boundary(a)) trace.emplace_back(a, sol.eval(mesh.vertex(a)));
  }
  return trace;
}

}  // namespace ferronem
