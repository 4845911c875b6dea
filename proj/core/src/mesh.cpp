#include "ferronem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>
#include <utility>

#include "ferronem/errors.hpp"

namespace ferronem {

namespace {

double signed_area(const Point2& p0, const Point2& p1, const Point2& p2) {
  return 0.5 * ((p1.x() - p0.x()) * (p2.y() - p0.y()) - (p2.x() - p0.x()) * (p1.y() - p0.y()));
}

using EdgeKey = std::pair<int, int>;

EdgeKey edge_key(int a, int b) { return a < b ? EdgeKey{a, b} : EdgeKey{b, a}; }

// For every edge, the list of (triangle, local index of the opposite vertex).
std::map<EdgeKey, std::vector<std::pair<int, int>>> edge_incidence(
    const std::vector<Triangulation::Triangle>& triangles) {
  std::map<EdgeKey, std::vector<std::pair<int, int>>> edges;
  for (std::size_t t = 0; t < triangles.size(); ++t) {
    const auto& tri = triangles[t];
    for (int i = 0; i < 3; ++i) {
      const int a = tri[static_cast<std::size_t>((i + 1) % 3)];
      const int b = tri[static_cast<std::size_t>((i + 2) % 3)];
      edges[edge_key(a, b)].emplace_back(static_cast<int>(t), i);
    }
  }
  return edges;
}

double interior_angle(const Point2& apex, const Point2& p, const Point2& q) {
  const Point2 u = p - apex;
  const Point2 v = q - apex;
  return std::atan2(std::abs(u.x() * v.y() - u.y() * v.x()), u.dot(v));
}

}  // namespace

std::array<Point2, 3> barycentric_gradients(const Point2& p0, const Point2& p1,
                                            const Point2& p2) {
  const double twice_area = 2.0 * signed_area(p0, p1, p2);
  // grad(lambda_i) = rot(p_{i+2} - p_{i+1}) / (2 |T|) with rot(x, y) = (y, -x)
  // for counterclockwise vertex order.
  auto grad = [&](const Point2& a, const Point2& b) {
    const Point2 e = b - a;
    return Point2(-e.y() / twice_area, e.x() / twice_area);
  };
  return {grad(p1, p2), grad(p2, p0), grad(p0, p1)};
}

Eigen::Matrix3d local_stiffness(const Point2& p0, const Point2& p1, const Point2& p2) {
  const double area = std::abs(signed_area(p0, p1, p2));
  const auto g = barycentric_gradients(p0, p1, p2);
  Eigen::Matrix3d k;
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) {
      k(i, j) = area * g[static_cast<std::size_t>(i)].dot(g[static_cast<std::size_t>(j)]);
      k(j, i) = k(i, j);
    }
  }
  return k;
}

double mesh_size(const std::vector<Point2>& vertices,
                 const std::vector<Triangulation::Triangle>& triangles) {
  double h = 0.0;
  for (const auto& tri : triangles) {
    for (int i = 0; i < 3; ++i) {
      const auto& p = vertices[static_cast<std::size_t>(tri[static_cast<std::size_t>(i)])];
      const auto& q = vertices[static_cast<std::size_t>(tri[static_cast<std::size_t>((i + 1) % 3)])];
      h = std::max(h, (p - q).norm());
    }
  }
  return h;
}

SparseMatrix assemble_stiffness(const std::vector<Point2>& vertices,
                                const std::vector<Triangulation::Triangle>& triangles) {
  const double h = mesh_size(vertices, triangles);
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(9 * triangles.size());
  for (std::size_t t = 0; t < triangles.size(); ++t) {
    const auto& tri = triangles[t];
    const auto& p0 = vertices[static_cast<std::size_t>(tri[0])];
    const auto& p1 = vertices[static_cast<std::size_t>(tri[1])];
    const auto& p2 = vertices[static_cast<std::size_t>(tri[2])];
    if (!(std::abs(signed_area(p0, p1, p2)) > 1e-14 * h * h)) {
      throw MeshError("degenerate triangle " + std::to_string(t));
    }
    const Eigen::Matrix3d k = local_stiffness(p0, p1, p2);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        triplets.emplace_back(tri[static_cast<std::size_t>(i)], tri[static_cast<std::size_t>(j)], k(i, j));
      }
    }
  }
  const auto n = static_cast<Eigen::Index>(vertices.size());
  SparseMatrix stiffness(n, n);
  stiffness.setFromTriplets(triplets.begin(), triplets.end());
  stiffness.makeCompressed();
  return stiffness;
}

Triangulation::Triangulation(std::vector<Point2> vertices, std::vector<Triangle> triangles)
    : vertices_(std::move(vertices)), triangles_(std::move(triangles)) {
  const int nv = static_cast<int>(vertices_.size());
  if (nv < 3 || triangles_.empty()) throw MeshError("mesh needs at least one triangle");

  std::vector<std::uint8_t> used(vertices_.size(), 0);
  for (std::size_t t = 0; t < triangles_.size(); ++t) {
    auto& tri = triangles_[t];
    for (int v : tri) {
      if (v < 0 || v >= nv) {
        std::ostringstream os;
        os << "triangle " << t << " references vertex " << v << " outside [0, " << nv << ")";
        throw MeshError(os.str());
      }
      used[static_cast<std::size_t>(v)] = 1;
    }
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2]) {
      throw MeshError("triangle " + std::to_string(t) + " repeats a vertex");
    }
    const double area = signed_area(vertex(tri[0]), vertex(tri[1]), vertex(tri[2]));
    if (area < 0.0) {
      std::swap(tri[1], tri[2]);
      ++reoriented_;
    }
  }
  for (int a = 0; a < nv; ++a) {
    if (!used[static_cast<std::size_t>(a)]) {
      throw MeshError("vertex " + std::to_string(a) + " is not used by any triangle");
    }
  }

  h_ = mesh_size(vertices_, triangles_);
  stiffness_ = assemble_stiffness(vertices_, triangles_);
  areas_.reserve(triangles_.size());
  for (const auto& tri : triangles_) {
    areas_.push_back(signed_area(vertex(tri[0]), vertex(tri[1]), vertex(tri[2])));
  }

  boundary_.assign(vertices_.size(), 0);
  for (const auto& [edge, owners] : edge_incidence(triangles_)) {
    if (owners.size() > 2) {
      std::ostringstream os;
      os << "edge (" << edge.first << ", " << edge.second << ") is shared by " << owners.size()
         << " triangles";
      throw MeshError(os.str());
    }
    if (owners.size() == 1) {
      boundary_[static_cast<std::size_t>(edge.first)] = 1;
      boundary_[static_cast<std::size_t>(edge.second)] = 1;
      boundary_edges_.push_back({edge.first, edge.second});
    }
  }
  interior_index_.assign(vertices_.size(), -1);
  for (int a = 0; a < nv; ++a) {
    if (!boundary_[static_cast<std::size_t>(a)]) {
      interior_index_[static_cast<std::size_t>(a)] = static_cast<int>(interior_.size());
      interior_.push_back(a);
    }
  }
}

Triangulation generate_structured(int n_cells) {
  if (n_cells < 1) throw MeshError("generate_structured: n_cells must be >= 1");
  const int n = n_cells;
  std::vector<Point2> vertices;
  vertices.reserve(static_cast<std::size_t>((n + 1) * (n + 1)));
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) {
      vertices.emplace_back(static_cast<double>(i) / n, static_cast<double>(j) / n);
    }
  }
  std::vector<Triangulation::Triangle> triangles;
  triangles.reserve(static_cast<std::size_t>(2 * n * n));
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int a = j * (n + 1) + i;
      const int b = a + 1;
      const int c = a + n + 1;
      const int d = c + 1;
      triangles.push_back({a, b, d});
      triangles.push_back({a, d, c});
    }
  }
  return Triangulation(std::move(vertices), std::move(triangles));
}

WeakAcutenessReport check_weakly_acute(const Triangulation& mesh) {
  WeakAcutenessReport report;
  const SparseMatrix& k = mesh.stiffness();
  double kmax = 0.0;
  for (int col = 0; col < k.outerSize(); ++col) {
    for (SparseMatrix::InnerIterator it(k, col); it; ++it) kmax = std::max(kmax, std::abs(it.value()));
  }
  const double sign_tol = 1e-12 * kmax;
  const double borderline = 1e-9 * kmax;

  std::map<EdgeKey, double> offdiag;
  for (int col = 0; col < k.outerSize(); ++col) {
    for (SparseMatrix::InnerIterator it(k, col); it; ++it) {
      const int a = static_cast<int>(it.row());
      const int b = static_cast<int>(it.col());
      if (a >= b) continue;
      offdiag[{a, b}] = it.value();
      if (it.value() > sign_tol) {
        report.pass = false;
        report.violations.push_back({a, b, it.value()});
      }
    }
  }

  const auto& tris = mesh.triangles();
  for (const auto& [edge, owners] : edge_incidence(tris)) {
    double sum = 0.0;
    for (const auto& [t, opp] : owners) {
      const auto& tri = tris[static_cast<std::size_t>(t)];
      sum += interior_angle(mesh.vertex(tri[static_cast<std::size_t>(opp)]), mesh.vertex(edge.first),
                            mesh.vertex(edge.second));
    }
    const double limit = owners.size() == 2 ? std::numbers::pi : 0.5 * std::numbers::pi;
    const bool angle_ok = sum <= limit + 1e-10;
    if (!angle_ok) report.angle_pass = false;

    const auto found = offdiag.find(edge);
    const double kab = found == offdiag.end() ? 0.0 : found->second;
    const bool sign_ok = kab <= sign_tol;
    if (sign_ok != angle_ok && std::abs(kab) > borderline) {
      report.inconsistencies.push_back({edge.first, edge.second});
    }
  }
  return report;
}

}  // namespace ferronem
