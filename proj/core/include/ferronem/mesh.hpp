#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace ferronem {

using Point2 = Eigen::Vector2d;
using SparseMatrix = Eigen::SparseMatrix<double>;

/// Conforming triangulation of a polygonal domain together with its P1
/// stiffness coefficients k_ab = \int grad(rho_a) . grad(rho_b).
///
/// Immutable after construction. The constructor reorients clockwise
/// triangles, rejects degenerate ones, classifies vertices (a vertex is on
/// the boundary iff it touches an edge owned by exactly one triangle) and
/// assembles the stiffness matrix.
class Triangulation {
 public:
  using Triangle = std::array<int, 3>;

  Triangulation(std::vector<Point2> vertices, std::vector<Triangle> triangles);

  std::size_t num_vertices() const noexcept { return vertices_.size(); }
  std::size_t num_triangles() const noexcept { return triangles_.size(); }
  std::size_t num_interior() const noexcept { return interior_.size(); }

  const std::vector<Point2>& vertices() const noexcept { return vertices_; }
  const Point2& vertex(int a) const { return vertices_[static_cast<std::size_t>(a)]; }
  const std::vector<Triangle>& triangles() const noexcept { return triangles_; }

  bool is_boundary(int a) const { return boundary_[static_cast<std::size_t>(a)] != 0; }
  const std::vector<std::uint8_t>& boundary_mask() const noexcept { return boundary_; }

  /// Interior vertices in increasing index order; position in this list is
  /// the vertex's unknown index in the inner solver.
  const std::vector<int>& interior_vertices() const noexcept { return interior_; }
  /// -1 for boundary vertices.
  int interior_index(int a) const { return interior_index_[static_cast<std::size_t>(a)]; }

  /// Edges (a < b) owned by exactly one triangle.
  const std::vector<std::array<int, 2>>& boundary_edges() const noexcept { return boundary_edges_; }

  const SparseMatrix& stiffness() const noexcept { return stiffness_; }
  double h() const noexcept { return h_; }
  double area(int t) const { return areas_[static_cast<std::size_t>(t)]; }
  /// Number of triangles that were listed clockwise and flipped.
  int reoriented() const noexcept { return reoriented_; }

 private:
  std::vector<Point2> vertices_;
  std::vector<Triangle> triangles_;
  std::vector<double> areas_;
  std::vector<std::uint8_t> boundary_;
  std::vector<int> interior_;
  std::vector<int> interior_index_;
  std::vector<std::array<int, 2>> boundary_edges_;
  SparseMatrix stiffness_;
  double h_ = 0.0;
  int reoriented_ = 0;
};

/// Gradients of the three barycentric coordinates of a triangle; constant on
/// the element. Requires a non-degenerate triangle.
std::array<Point2, 3> barycentric_gradients(const Point2& p0, const Point2& p1,
                                            const Point2& p2);

/// Element matrix area * grad(lambda_i) . grad(lambda_j).
Eigen::Matrix3d local_stiffness(const Point2& p0, const Point2& p1, const Point2& p2);

/// Scatters element matrices into a symmetric sparse matrix. Throws MeshError
/// for triangles with area <= 1e-14 h^2.
SparseMatrix assemble_stiffness(const std::vector<Point2>& vertices,
                                const std::vector<Triangulation::Triangle>& triangles);

/// Largest edge length over all triangles.
double mesh_size(const std::vector<Point2>& vertices,
                 const std::vector<Triangulation::Triangle>& triangles);
inline double mesh_size(const Triangulation& mesh) { return mesh.h(); }

/// Uniform n x n grid on (0,1)^2, every cell split along the diagonal from its
/// lower-left to its upper-right corner. Vertex (i, j) has index j (n+1) + i.
Triangulation generate_structured(int n_cells);

struct StiffnessViolation {
  int a;
  int b;
  double k_ab;
};

struct WeakAcutenessReport {
  bool pass = true;
  std::vector<StiffnessViolation> violations;
  /// Result of the independent opposite-angle test (sum of angles opposite
  /// an interior edge <= pi, angle opposite a boundary edge <= pi/2).
  bool angle_pass = true;
  /// Edges on which the sign test and the angle test clearly disagree.
  std::vector<std::array<int, 2>> inconsistencies;
};

WeakAcutenessReport check_weakly_acute(const Triangulation& mesh);

/// Plain-text format: "nv nt", nv lines "x y", nt lines "i j k" (0-based).
/// Errors carry the offending line number.
Triangulation parse_mesh(std::istream& in);
Triangulation load_mesh(const std::filesystem::path& path);
void write_mesh(std::ostream& out, const Triangulation& mesh);
void save_mesh(const std::filesystem::path& path, const Triangulation& mesh);

}  // namespace ferronem
