// VTK XML unstructured-grid output of Lagrange-sampled fields, plus a plain
// text mesh report.

#ifndef LDG_VTKOUT_HPP
#define LDG_VTKOUT_HPP

#include <Eigen/Dense>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "ldg/mesh.hpp"

namespace ldg {

/// One output frame: Lagrange data sampled at 3 (linear) or 6 (quadratic)
/// nodes per triangle.
struct VtuSnapshot {
  const Mesh* mesh = nullptr;
  Eigen::MatrixXd lagrange;  // K x 3 or K x 6
  std::string var_name = "u";
  std::string basename = "out";
  int t_lvl = 0;
};

namespace detail {

inline std::string fmt3e(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

}  // namespace detail

/// Writes `<basename>.<tLvl>.vtu`. Every triangle contributes its own
/// disconnected points, so discontinuities across edges are preserved.
/// The header mirrors the reference output, including its (unused)
/// compressor attribute; data is plain ASCII.
inline std::string write_vtu(const VtuSnapshot& snap) {
  if (snap.mesh == nullptr) throw std::invalid_argument("snapshot has no mesh");
  const Mesh& mesh = *snap.mesh;
  const int num_k = mesh.num_t;
  const int m = static_cast<int>(snap.lagrange.cols());
  if (snap.lagrange.rows() != num_k || (m != 3 && m != 6))
    throw std::invalid_argument("Lagrange data must be K x 3 or K x 6");

  // Reference sampling nodes (vertices, then edge midpoints) and the output
  // permutation into the VTK quadratic-triangle ordering.
  static const double l1[6] = {0.0, 1.0, 0.0, 0.5, 0.0, 0.5};
  static const double l2[6] = {0.0, 0.0, 1.0, 0.5, 0.5, 0.0};
  static const int perm3[3] = {0, 1, 2};
  static const int perm6[6] = {0, 1, 2, 5, 3, 4};
  const int* perm = (m == 3) ? perm3 : perm6;
  const int cell_type = (m == 3) ? 5 : 22;

  const std::string path = snap.basename + "." + std::to_string(snap.t_lvl) + ".vtu";
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);

  out << "<?xml version=\"1.0\"?>\n"
      << "<VTKFile type=\"UnstructuredGrid\" version=\"0.1\" "
         "byte_order=\"LittleEndian\" compressor=\"vtkZLibDataCompressor\">\n"
      << "  <UnstructuredGrid>\n"
      << "    <Piece NumberOfPoints=\"" << num_k * m << "\" NumberOfCells=\"" << num_k
      << "\">\n"
      << "      <Points>\n"
      << "        <DataArray type=\"Float32\" NumberOfComponents=\"3\" format=\"ascii\">\n";
  for (int k = 0; k < num_k; ++k)
    for (int i = 0; i < m; ++i) {
      Point2 x = mesh.map_to_physical(k, l1[perm[i]], l2[perm[i]]);
      out << "          " << detail::fmt3e(x[0]) << " " << detail::fmt3e(x[1]) << " "
          << detail::fmt3e(0.0) << "\n";
    }
  out << "        </DataArray>\n"
      << "      </Points>\n"
      << "      <Cells>\n"
      << "        <DataArray type=\"Int32\" Name=\"connectivity\" format=\"ascii\">\n"
      << "          ";
  for (int idx = 0; idx < num_k * m; ++idx) out << idx << " ";
  out << "\n        </DataArray>\n"
      << "        <DataArray type=\"Int32\" Name=\"offsets\" format=\"ascii\">\n"
      << "          ";
  for (int k = 1; k <= num_k; ++k) out << k * m << " ";
  out << "\n        </DataArray>\n"
      << "        <DataArray type=\"UInt8\" Name=\"types\" format=\"ascii\">\n"
      << "          ";
  for (int k = 0; k < num_k; ++k) out << cell_type << " ";
  out << "\n        </DataArray>\n"
      << "      </Cells>\n"
      << "      <PointData Scalars=\"" << snap.var_name << "\">\n"
      << "        <DataArray type=\"Float32\" Name=\"" << snap.var_name
      << "\" NumberOfComponents=\"1\" format=\"ascii\">\n";
  for (int k = 0; k < num_k; ++k) {
    out << "          ";
    for (int i = 0; i < m; ++i) out << detail::fmt3e(snap.lagrange(k, perm[i])) << " ";
    out << "\n";
  }
  out << "        </DataArray>\n"
      << "      </PointData>\n"
      << "    </Piece>\n"
      << "  </UnstructuredGrid>\n"
      << "</VTKFile>\n";
  if (!out) throw std::runtime_error("write failure on " + path);
  return path;
}

/// Deterministic human-readable mesh listing.
inline std::string dump_mesh_report(const Mesh& mesh) {
  std::ostringstream os;
  os << "mesh: numT=" << mesh.num_t << " numE=" << mesh.num_e << " numV=" << mesh.num_v
     << "\n";
  os << "vertices:\n";
  for (int v = 0; v < mesh.num_v; ++v)
    os << "  " << v << ": (" << mesh.coord_v[v][0] << ", " << mesh.coord_v[v][1] << ")\n";
  os << "triangles (vertices | edges | area):\n";
  for (int k = 0; k < mesh.num_t; ++k) {
    os << "  " << k << ": " << mesh.v0t[k][0] << " " << mesh.v0t[k][1] << " "
       << mesh.v0t[k][2] << " | " << mesh.e0t[k][0] << " " << mesh.e0t[k][1] << " "
       << mesh.e0t[k][2] << " | " << mesh.area_t[k] << "\n";
  }
  os << "edges (vertices | id | normal | length):\n";
  for (int e = 0; e < mesh.num_e; ++e) {
    os << "  " << e << ": " << mesh.v0e[e][0] << " " << mesh.v0e[e][1] << " | "
       << mesh.id_e[e] << " | (" << mesh.nu_e[e][0] << ", " << mesh.nu_e[e][1] << ") | "
       << mesh.area_e[e] << (mesh.is_boundary_edge(e) ? "  [boundary]" : "") << "\n";
  }
  return os.str();
}

}  // namespace ldg

#endif  // LDG_VTKOUT_HPP
