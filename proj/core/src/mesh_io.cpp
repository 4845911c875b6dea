#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

#include "ferronem/errors.hpp"
#include "ferronem/mesh.hpp"

namespace ferronem {

namespace {

// Next non-blank line; comment lines starting with '#' are skipped.
bool next_line(std::istream& in, std::string& line, int& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    return true;
  }
  return false;
}

template <typename... T>
void read_fields(const std::string& line, int line_no, const char* what, T&... out) {
  std::istringstream ss(line);
  ((ss >> out), ...);
  if (!ss) throw MeshError(std::string("malformed ") + what + " record", line_no);
  std::string extra;
  if (ss >> extra) throw MeshError(std::string("trailing data in ") + what + " record", line_no);
}

}  // namespace

Triangulation parse_mesh(std::istream& in) {
  std::string line;
  int line_no = 0;
  if (!next_line(in, line, line_no)) throw MeshError("empty mesh file");
  long long nv = 0;
  long long nt = 0;
  read_fields(line, line_no, "header", nv, nt);
  if (nv < 3 || nt < 1) throw MeshError("header must declare nv >= 3 and nt >= 1", line_no);

  std::vector<Point2> vertices;
  vertices.reserve(static_cast<std::size_t>(nv));
  for (long long i = 0; i < nv; ++i) {
    if (!next_line(in, line, line_no)) throw MeshError("unexpected end of file in vertex block", line_no);
    double x = 0.0;
    double y = 0.0;
    read_fields(line, line_no, "vertex", x, y);
    vertices.emplace_back(x, y);
  }

  std::vector<Triangulation::Triangle> triangles;
  triangles.reserve(static_cast<std::size_t>(nt));
  for (long long t = 0; t < nt; ++t) {
    if (!next_line(in, line, line_no)) throw MeshError("unexpected end of file in triangle block", line_no);
    long long i = 0;
    long long j = 0;
    long long k = 0;
    read_fields(line, line_no, "triangle", i, j, k);
    for (long long v : {i, j, k}) {
      if (v < 0 || v >= nv) {
        std::ostringstream os;
        os << "triangle " << t << " references vertex " << v << " outside [0, " << nv << ")";
        throw MeshError(os.str(), line_no);
      }
    }
    triangles.push_back({static_cast<int>(i), static_cast<int>(j), static_cast<int>(k)});
  }
  if (next_line(in, line, line_no)) throw MeshError("unexpected data after triangle block", line_no);

  return Triangulation(std::move(vertices), std::move(triangles));
}

Triangulation load_mesh(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open mesh file " + path.string());
  return parse_mesh(in);
}

void write_mesh(std::ostream& out, const Triangulation& mesh) {
  out << mesh.num_vertices() << ' ' << mesh.num_triangles() << '\n';
  out << std::setprecision(17);
  for (const auto& p : mesh.vertices()) out << p.x() << ' ' << p.y() << '\n';
  for (const auto& t : mesh.triangles()) out << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

void save_mesh(const std::filesystem::path& path, const Triangulation& mesh) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  write_mesh(out, mesh);
  if (!out) throw Error("failed writing mesh to " + path.string());
}

}  // namespace ferronem
