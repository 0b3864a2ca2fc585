// Triangulation data structures: construction from vertex/triangle lists,
// Friedrichs-Keller meshes of the unit square, regular (red) refinement, and
// a reader for the ASCII MEDIT .mesh subset.

#ifndef LDG_MESH_HPP
#define LDG_MESH_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ldg {

using Point2 = std::array<double, 2>;

struct MeshError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Marker for the missing second triangle of a boundary edge.
constexpr int kNoTriangle = -1;

/// Immutable triangulation with topological and geometric lists.
/// Local edge n (0-based internally) is opposite local vertex n, so it joins
/// local vertices n+1 and n+2 (mod 3). Triangles are counter-clockwise.
struct Mesh {
  int num_t = 0;
  int num_e = 0;
  int num_v = 0;

  std::vector<Point2> coord_v;                  // per-vertex coordinates
  std::vector<std::array<int, 3>> v0t;          // triangle -> global vertices (ccw)
  std::vector<std::array<int, 3>> e0t;          // triangle -> global edges
  std::vector<std::array<int, 2>> v0e;          // edge -> vertex pair
  std::vector<std::array<int, 2>> t0e;          // edge -> adjacent triangles
  std::vector<double> area_t;                   // triangle areas
  std::vector<double> area_e;                   // edge lengths
  std::vector<std::array<double, 3>> area_e0t;  // edge lengths per (k, n)
  std::vector<Point2> bary_t;
  std::vector<Point2> bary_e;
  std::vector<Point2> nu_e;                         // global unit edge normals
  std::vector<std::array<Point2, 3>> nu_e0t;        // outward unit normals per (k, n)
  std::vector<std::array<std::array<double, 2>, 2>> b;  // affine matrices B_k
  std::vector<int> id_e;                            // boundary IDs, 0 = interior
  std::vector<std::array<int, 3>> id_e0t;

  // mark_e0te0t[n_minus][n_plus] lists the (k_minus, k_plus) pairs whose
  // local edges n_minus and n_plus coincide as a global interior edge.
  std::array<std::array<std::vector<std::pair<int, int>>, 3>, 3> mark_e0te0t;

  /// Coordinates of local vertex i (0..2) of triangle k.
  const Point2& vertex(int k, int i) const { return coord_v[v0t[k][i]]; }

  /// Affine map from the reference triangle to triangle k.
  Point2 map_to_physical(int k, double x1, double x2) const {
    const auto& bk = b[k];
    const Point2& a = vertex(k, 0);
    return {bk[0][0] * x1 + bk[0][1] * x2 + a[0], bk[1][0] * x1 + bk[1][1] * x2 + a[1]};
  }

  /// Inverse affine map from triangle k to the reference triangle.
  Point2 map_to_reference(int k, double x1, double x2) const {
    const auto& bk = b[k];
    const Point2& a = vertex(k, 0);
    double det = bk[0][0] * bk[1][1] - bk[0][1] * bk[1][0];
    double d1 = x1 - a[0], d2 = x2 - a[1];
    return {(bk[1][1] * d1 - bk[0][1] * d2) / det, (bk[0][0] * d2 - bk[1][0] * d1) / det};
  }

  bool is_boundary_edge(int e) const { return t0e[e][1] == kNoTriangle; }

  /// Neighbor triangle and its local edge across local edge n of triangle k,
  /// or {kNoTriangle, -1} on the boundary.
  std::pair<int, int> neighbor(int k, int n) const {
    int e = e0t[k][n];
    int other = (t0e[e][0] == k) ? t0e[e][1] : t0e[e][0];
    if (other == kNoTriangle) return {kNoTriangle, -1};
    for (int np = 0; np < 3; ++np)
      if (e0t[other][np] == e) return {other, np};
    throw MeshError("inconsistent edge adjacency");
  }

  /// Refreshes id_e0t from id_e; call after assigning boundary IDs.
  void sync_edge_ids() {
    id_e0t.assign(num_t, {0, 0, 0});
    for (int k = 0; k < num_t; ++k)
      for (int n = 0; n < 3; ++n) id_e0t[k][n] = id_e[e0t[k][n]];
  }
};

/// Builds all derived lists from vertex coordinates and counter-clockwise
/// triangle-vertex indices. Edge numbering is lexicographic by sorted vertex
/// pair, hence deterministic.
inline Mesh generate_grid_data(std::vector<Point2> coord_v,
                               std::vector<std::array<int, 3>> v0t) {
  Mesh m;
  m.coord_v = std::move(coord_v);
  m.v0t = std::move(v0t);
  m.num_v = static_cast<int>(m.coord_v.size());
  m.num_t = static_cast<int>(m.v0t.size());

  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& pnt : m.coord_v) {
    xmin = std::min(xmin, pnt[0]);
    xmax = std::max(xmax, pnt[0]);
    ymin = std::min(ymin, pnt[1]);
    ymax = std::max(ymax, pnt[1]);
  }
  const double bbox_area = std::max((xmax - xmin) * (ymax - ymin), 1e-300);

  m.area_t.resize(m.num_t);
  m.bary_t.resize(m.num_t);
  m.b.resize(m.num_t);
  for (int k = 0; k < m.num_t; ++k) {
    const auto& tri = m.v0t[k];
    for (int i = 0; i < 3; ++i) {
      if (tri[i] < 0 || tri[i] >= m.num_v)
        throw MeshError("triangle " + std::to_string(k) + " references vertex " +
                        std::to_string(tri[i]) + " out of range");
      if (tri[i] == tri[(i + 1) % 3])
        throw MeshError("triangle " + std::to_string(k) + " has a repeated vertex");
    }
    const Point2& a1 = m.coord_v[tri[0]];
    const Point2& a2 = m.coord_v[tri[1]];
    const Point2& a3 = m.coord_v[tri[2]];
    double signed2 = (a2[0] - a1[0]) * (a3[1] - a1[1]) - (a3[0] - a1[0]) * (a2[1] - a1[1]);
    if (signed2 <= 2e-14 * bbox_area)
      throw MeshError("triangle " + std::to_string(k) +
                      " is degenerate or not counter-clockwise (signed area " +
                      std::to_string(signed2 / 2) + ")");
    m.area_t[k] = 0.5 * signed2;
    m.bary_t[k] = {(a1[0] + a2[0] + a3[0]) / 3.0, (a1[1] + a2[1] + a3[1]) / 3.0};
    m.b[k] = {{{a2[0] - a1[0], a3[0] - a1[0]}, {a2[1] - a1[1], a3[1] - a1[1]}}};
  }

  // Edge numbering: sort unique (min,max) vertex pairs lexicographically.
  std::map<std::pair<int, int>, int> edge_index;
  for (const auto& tri : m.v0t)
    for (int n = 0; n < 3; ++n) {
      int va = tri[(n + 1) % 3], vb = tri[(n + 2) % 3];
      edge_index.emplace(std::minmax(va, vb), -1);
    }
  m.num_e = static_cast<int>(edge_index.size());
  {
    int idx = 0;
    for (auto& [key, val] : edge_index) val = idx++;
  }

  m.v0e.resize(m.num_e);
  m.t0e.assign(m.num_e, {kNoTriangle, kNoTriangle});
  m.area_e.resize(m.num_e);
  m.bary_e.resize(m.num_e);
  m.nu_e.resize(m.num_e);
  m.e0t.resize(m.num_t);
  m.area_e0t.resize(m.num_t);
  m.nu_e0t.resize(m.num_t);

  for (const auto& [key, e] : edge_index) {
    m.v0e[e] = {key.first, key.second};
    const Point2& pa = m.coord_v[key.first];
    const Point2& pb = m.coord_v[key.second];
    double dx = pb[0] - pa[0], dy = pb[1] - pa[1];
    m.area_e[e] = std::hypot(dx, dy);
    m.bary_e[e] = {0.5 * (pa[0] + pb[0]), 0.5 * (pa[1] + pb[1])};
    m.nu_e[e] = {dy / m.area_e[e], -dx / m.area_e[e]};
  }

  for (int k = 0; k < m.num_t; ++k) {
    for (int n = 0; n < 3; ++n) {
      int va = m.v0t[k][(n + 1) % 3], vb = m.v0t[k][(n + 2) % 3];
      int e = edge_index.at(std::minmax(va, vb));
      m.e0t[k][n] = e;
      m.area_e0t[k][n] = m.area_e[e];
      // Outward normal: orthogonal to the edge, pointing away from the
      // triangle barycenter.
      double nx = m.nu_e[e][0], ny = m.nu_e[e][1];
      double dot = nx * (m.bary_e[e][0] - m.bary_t[k][0]) + ny * (m.bary_e[e][1] - m.bary_t[k][1]);
      double sign = (dot > 0.0) ? 1.0 : -1.0;
      m.nu_e0t[k][n] = {sign * nx, sign * ny};
      // T^- slot holds the triangle whose outward normal equals nu_e.
      int slot = (sign > 0.0) ? 0 : 1;
      if (m.t0e[e][slot] != kNoTriangle)
        throw MeshError("edge " + std::to_string(e) + " claimed twice from the same side");
      m.t0e[e][slot] = k;
    }
  }

  // Boundary edges: keep the single adjacent triangle in slot 0 with the
  // global normal pointing outward.
  for (int e = 0; e < m.num_e; ++e) {
    if (m.t0e[e][0] == kNoTriangle && m.t0e[e][1] == kNoTriangle)
      throw MeshError("edge " + std::to_string(e) + " has no adjacent triangle");
    if (m.t0e[e][0] == kNoTriangle) {
      m.t0e[e][0] = m.t0e[e][1];
      m.t0e[e][1] = kNoTriangle;
      std::swap(m.v0e[e][0], m.v0e[e][1]);
      m.nu_e[e] = {-m.nu_e[e][0], -m.nu_e[e][1]};
    }
  }

  for (int nn = 0; nn < 3; ++nn)
    for (int np = 0; np < 3; ++np) m.mark_e0te0t[nn][np].clear();
  for (int k = 0; k < m.num_t; ++k)
    for (int n = 0; n < 3; ++n) {
      auto [kp, npl] = m.neighbor(k, n);
      if (kp != kNoTriangle) m.mark_e0te0t[n][npl].emplace_back(k, kp);
    }

  m.id_e.assign(m.num_e, 0);
  m.sync_edge_ids();
  return m;
}

/// Friedrichs-Keller triangulation of the unit square with ceil(1/h_max)
/// edges per side. Boundary IDs: 1 south, 2 east, 3 north, 4 west.
inline Mesh domain_square(double h_max) {
  if (h_max <= 0.0) throw std::invalid_argument("maximum edge length must be positive");
  int dim = static_cast<int>(std::ceil(1.0 / h_max - 1e-12));
  double h = 1.0 / dim;
  std::vector<Point2> coords;
  coords.reserve((dim + 1) * (dim + 1));
  for (int ix = 0; ix <= dim; ++ix)
    for (int iy = 0; iy <= dim; ++iy) coords.push_back({ix * h, iy * h});
  auto vid = [dim](int ix, int iy) { return ix * (dim + 1) + iy; };

  std::vector<std::array<int, 3>> tris;
  tris.reserve(2 * dim * dim);
  for (int ix = 0; ix < dim; ++ix)
    for (int iy = 0; iy < dim; ++iy)
      tris.push_back({vid(ix, iy), vid(ix + 1, iy), vid(ix, iy + 1)});
  for (int ix = 0; ix < dim; ++ix)
    for (int iy = 0; iy < dim; ++iy)
      tris.push_back({vid(ix + 1, iy), vid(ix + 1, iy + 1), vid(ix, iy + 1)});

  Mesh m = generate_grid_data(std::move(coords), std::move(tris));
  const double tol = 1e-12;
  for (int e = 0; e < m.num_e; ++e) {
    if (std::abs(m.bary_e[e][1]) < tol) m.id_e[e] = 1;        // south
    else if (std::abs(m.bary_e[e][0] - 1.0) < tol) m.id_e[e] = 2;  // east
    else if (std::abs(m.bary_e[e][1] - 1.0) < tol) m.id_e[e] = 3;  // north
    else if (std::abs(m.bary_e[e][0]) < tol) m.id_e[e] = 4;   // west
  }
  m.sync_edge_ids();
  return m;
}

/// Red refinement: splits each triangle into four congruent children via
/// edge midpoints. Boundary IDs are inherited by the child boundary edges.
inline Mesh refine_uniform(const Mesh& mesh) {
  std::vector<Point2> coords = mesh.coord_v;
  coords.resize(mesh.num_v + mesh.num_e);
  for (int e = 0; e < mesh.num_e; ++e) coords[mesh.num_v + e] = mesh.bary_e[e];

  std::vector<std::array<int, 3>> tris;
  tris.reserve(4 * mesh.num_t);
  for (int k = 0; k < mesh.num_t; ++k) {
    int a1 = mesh.v0t[k][0], a2 = mesh.v0t[k][1], a3 = mesh.v0t[k][2];
    int m1 = mesh.num_v + mesh.e0t[k][0];  // midpoint of edge opposite a1
    int m2 = mesh.num_v + mesh.e0t[k][1];
    int m3 = mesh.num_v + mesh.e0t[k][2];
    tris.push_back({a1, m3, m2});
    tris.push_back({m3, a2, m1});
    tris.push_back({m2, m1, a3});
    tris.push_back({m3, m1, m2});
  }

  Mesh fine = generate_grid_data(std::move(coords), std::move(tris));

  // Each tagged parent edge (a,b) with midpoint m contributes child edges
  // (a,m) and (m,b).
  std::map<std::pair<int, int>, int> child_ids;
  for (int e = 0; e < mesh.num_e; ++e) {
    if (mesh.id_e[e] == 0) continue;
    int a = mesh.v0e[e][0], bvx = mesh.v0e[e][1], mid = mesh.num_v + e;
    child_ids[std::minmax(a, mid)] = mesh.id_e[e];
    child_ids[std::minmax(mid, bvx)] = mesh.id_e[e];
  }
  for (int e = 0; e < fine.num_e; ++e) {
    auto it = child_ids.find(std::minmax(fine.v0e[e][0], fine.v0e[e][1]));
    if (it != child_ids.end()) fine.id_e[e] = it->second;
  }
  fine.sync_edge_ids();
  return fine;
}

namespace detail {

inline std::string next_token_line(std::istream& in, int& line_no) {
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    auto last = line.find_last_not_of(" \t\r");
    std::string trimmed = line.substr(first, last - first + 1);
    if (trimmed.empty() || trimmed[0] == '#') continue;
    return trimmed;
  }
  return {};
}

}  // namespace detail

/// Reads the MEDIT ASCII subset: keywords Vertices / Edges / Triangles, each
/// followed by a count and that many rows. Indices are 1-based in the file.
/// Boundary edges not listed in the Edges section keep ID 0 with a warning.
inline Mesh read_mesh_medit(const std::string& path, std::ostream& warn = std::cerr) {
  std::ifstream in(path);
  if (!in) throw MeshError("cannot open mesh file: " + path);

  std::vector<Point2> coords;
  std::vector<std::array<int, 3>> tris;
  std::vector<int> tri_refs;
  std::vector<std::array<int, 3>> tagged_edges;  // v1, v2, ref
  bool have_vertices = false, have_triangles = false;

  int line_no = 0;
  auto parse_error = [&](const std::string& msg) {
    return MeshError(path + ":" + std::to_string(line_no) + ": " + msg);
  };
  auto read_count = [&]() {
    std::string tok = detail::next_token_line(in, line_no);
    std::istringstream iss(tok);
    long count = -1;
    if (!(iss >> count) || count < 0) throw parse_error("expected a section count");
    return static_cast<int>(count);
  };

  std::string tok;
  while (!(tok = detail::next_token_line(in, line_no)).empty()) {
    if (tok.rfind("Vertices", 0) == 0 && tok.find("Edges") == std::string::npos) {
      int count = read_count();
      coords.resize(count);
      for (int i = 0; i < count; ++i) {
        std::istringstream iss(detail::next_token_line(in, line_no));
        double x, y, ref;
        if (!(iss >> x >> y >> ref)) throw parse_error("malformed vertex row");
        coords[i] = {x, y};
      }
      have_vertices = true;
    } else if (tok.rfind("Edges", 0) == 0) {
      int count = read_count();
      tagged_edges.resize(count);
      for (int i = 0; i < count; ++i) {
        std::istringstream iss(detail::next_token_line(in, line_no));
        int v1, v2, ref;
        if (!(iss >> v1 >> v2 >> ref)) throw parse_error("malformed edge row");
        tagged_edges[i] = {v1 - 1, v2 - 1, ref};
      }
    } else if (tok.rfind("Triangles", 0) == 0) {
      int count = read_count();
      tris.resize(count);
      for (int i = 0; i < count; ++i) {
        std::istringstream iss(detail::next_token_line(in, line_no));
        int v1, v2, v3, ref;
        if (!(iss >> v1 >> v2 >> v3 >> ref)) throw parse_error("malformed triangle row");
        tris[i] = {v1 - 1, v2 - 1, v3 - 1};
      }
      have_triangles = true;
    } else if (tok == "End") {
      break;
    }
    // Other MEDIT keywords (Dimension, MeshVersionFormatted, ...) are skipped.
  }
  if (!have_vertices) throw MeshError(path + ": missing Vertices section");
  if (!have_triangles) throw MeshError(path + ": missing Triangles section");

  Mesh m = generate_grid_data(std::move(coords), std::move(tris));

  std::map<std::pair<int, int>, int> tag_by_pair;
  for (const auto& [v1, v2, ref] : tagged_edges) {
    if (v1 < 0 || v1 >= m.num_v || v2 < 0 || v2 >= m.num_v)
      throw MeshError(path + ": edge references vertex out of range");
    tag_by_pair[std::minmax(v1, v2)] = ref;
  }
  for (int e = 0; e < m.num_e; ++e) {
    auto it = tag_by_pair.find(std::minmax(m.v0e[e][0], m.v0e[e][1]));
    if (it != tag_by_pair.end()) {
      m.id_e[e] = it->second;
    } else if (m.is_boundary_edge(e)) {
      warn << "warning: boundary edge (" << m.v0e[e][0] + 1 << ", " << m.v0e[e][1] + 1
           << ") has no tag in the Edges section; using ID 0\n";
    }
  }
  m.sync_edge_ids();
  return m;
}

}  // namespace ldg

#endif  // LDG_MESH_HPP
