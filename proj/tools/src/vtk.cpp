#include "ferronem/cli/vtk.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>

#include "ferronem/errors.hpp"

namespace ferronem::cli {

void write_vtk(const NodalField& field, std::ostream& out) {
  const Triangulation& mesh = field.mesh();
  const auto nv = mesh.num_vertices();
  const auto nt = mesh.num_triangles();
  out << std::setprecision(17);
  out << "# vtk DataFile Version 3.0\n"
      << "ferronem nodal field\n"
      << "ASCII\n"
      << "DATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << nv << " double\n";
  for (const auto& v : mesh.vertices()) out << v.x() << ' ' << v.y() << " 0\n";
  out << "CELLS " << nt << ' ' << 4 * nt << '\n';
  for (const auto& t : mesh.triangles()) out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  out << "CELL_TYPES " << nt << '\n';
  for (std::size_t i = 0; i < nt; ++i) out << "5\n";

  out << "POINT_DATA " << nv << '\n';
  for (int c = 0; c < 4; ++c) {
    out << "SCALARS Psi" << c + 1 << " double 1\nLOOKUP_TABLE default\n";
    for (const auto& psi : field.values()) out << psi[c] << '\n';
  }
  out << "VECTORS Q double\n";
  for (const auto& psi : field.values()) out << psi[0] << ' ' << psi[1] << " 0\n";
  out << "VECTORS M double\n";
  for (const auto& psi : field.values()) out << psi[2] << ' ' << psi[3] << " 0\n";
}

void save_vtk(const NodalField& field, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  write_vtk(field, out);
  out.flush();
  if (!out) throw Error("write to " + path.string() + " failed");
}

}  // namespace ferronem::cli
