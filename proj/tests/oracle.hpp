// Naive dense reference implementations of every assembled operator and
// vector, built from per-entity physical-space quadrature with the basis
// evaluated through the inverse affine map. Slow and simple on purpose;
// used only to validate the production assembly.

#ifndef LDG_TESTS_ORACLE_HPP
#define LDG_TESTS_ORACLE_HPP

#include <Eigen/Dense>

#include "ldg/assembly.hpp"
#include "ldg/fields.hpp"
#include "ldg/mesh.hpp"

namespace oracle {

using ldg::DofMatrix;
using ldg::Mesh;
using ldg::Point2;
using ldg::ScalarFunc;

// Physical-space basis value on triangle k.
inline double phys_phi(const Mesh& m, int k, int i, double x1, double x2) {
  Point2 ref = m.map_to_reference(k, x1, x2);
  return ldg::basis_fn(i + 1, ref[0], ref[1]);
}

// Physical-space gradient component mm (1 or 2) on triangle k.
inline double phys_grad(const Mesh& m, int k, int i, int mm, double x1, double x2) {
  Point2 ref = m.map_to_reference(k, x1, x2);
  const auto& b = m.b[k];
  const double det = b[0][0] * b[1][1] - b[0][1] * b[1][0];
  const double g1 = ldg::basis_grad(i + 1, 1, ref[0], ref[1]);
  const double g2 = ldg::basis_grad(i + 1, 2, ref[0], ref[1]);
  if (mm == 1) return (b[1][1] * g1 - b[1][0] * g2) / det;
  return (b[0][0] * g2 - b[0][1] * g1) / det;
}

inline double phys_field(const Mesh& m, const DofMatrix& dof, int k, double x1, double x2) {
  Point2 ref = m.map_to_reference(k, x1, x2);
  return ldg::eval_dof(dof, k, ref[0], ref[1]);
}

struct Quad {
  ldg::QuadRule2D elem = ldg::quad_rule_2d(12);
  ldg::QuadRule1D edge = ldg::quad_rule_1d(15);
};

// Integrates fn over triangle k (fn takes physical coordinates).
template <typename F>
double integrate_elem(const Mesh& m, const Quad& q, int k, F fn) {
  double acc = 0.0;
  for (size_t r = 0; r < q.elem.points.size(); ++r) {
    Point2 x = m.map_to_physical(k, q.elem.points[r][0], q.elem.points[r][1]);
    acc += q.elem.weights[r] * fn(x[0], x[1]);
  }
  return 2.0 * m.area_t[k] * acc;
}

// Integrates fn over global edge e (parametrized by its vertex pair).
template <typename F>
double integrate_edge(const Mesh& m, const Quad& q, int e, F fn) {
  const Point2& a = m.coord_v[m.v0e[e][0]];
  const Point2& b = m.coord_v[m.v0e[e][1]];
  double acc = 0.0;
  for (size_t r = 0; r < q.edge.points.size(); ++r) {
    const double s = q.edge.points[r];
    acc += q.edge.weights[r] *
           fn(a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1]));
  }
  return m.area_e[e] * acc;
}

inline Eigen::MatrixXd mass(const Mesh& m, int n, const Quad& q) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m.num_t * n, m.num_t * n);
  for (int k = 0; k < m.num_t; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        out(k * n + i, k * n + j) = integrate_elem(m, q, k, [&](double x, double y) {
          return phys_phi(m, k, i, x, y) * phys_phi(m, k, j, x, y);
        });
  return out;
}

inline Eigen::MatrixXd dphi_phi(const Mesh& m, int n, int mm, const Quad& q) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m.num_t * n, m.num_t * n);
  for (int k = 0; k < m.num_t; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        out(k * n + i, k * n + j) = integrate_elem(m, q, k, [&](double x, double y) {
          return phys_grad(m, k, i, mm, x, y) * phys_phi(m, k, j, x, y);
        });
  return out;
}

inline Eigen::MatrixXd dphi_phi_coeff(const Mesh& m, int n, int mm, const DofMatrix& d,
                                      const Quad& q) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m.num_t * n, m.num_t * n);
  for (int k = 0; k < m.num_t; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        out(k * n + i, k * n + j) = integrate_elem(m, q, k, [&](double x, double y) {
          return phys_grad(m, k, i, mm, x, y) * phys_field(m, d, k, x, y) *
                 phys_phi(m, k, j, x, y);
        });
  return out;
}

// Walks every (triangle, local edge) slot of an edge and hands the caller
// the owning triangle, the neighbor (or -1), and the global edge.
template <typename F>
void for_each_edge_side(const Mesh& m, F fn) {
  for (int k = 0; k < m.num_t; ++k)
    for (int nn = 0; nn < 3; ++nn) fn(k, nn, m.e0t[k][nn]);
}

inline Eigen::MatrixXd edge_jump(const Mesh& m, int n, const ldg::EdgeSelector& sel,
                                 bool with_offdiag, const Quad& q) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m.num_t * n, m.num_t * n);
  for_each_edge_side(m, [&](int k, int nn, int e) {
    if (!sel(k, nn)) return;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        out(k * n + i, k * n + j) +=
            integrate_edge(m, q, e, [&](double x, double y) {
              return phys_phi(m, k, i, x, y) * phys_phi(m, k, j, x, y);
            }) /
            m.area_e[e];
    if (!with_offdiag) return;
    auto [kp, np] = m.neighbor(k, nn);
    if (kp == ldg::kNoTriangle) return;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        out(k * n + i, kp * n + j) -=
            integrate_edge(m, q, e, [&](double x, double y) {
              return phys_phi(m, k, i, x, y) * phys_phi(m, kp, j, x, y);
            }) /
            m.area_e[e];
  });
  return out;
}

inline Eigen::MatrixXd edge_avg_nu(const Mesh& m, int n, int mm,
                                   const ldg::EdgeSelector& sel, bool interior,
                                   const Quad& q) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m.num_t * n, m.num_t * n);
  const double factor = interior ? 0.5 : 1.0;
  for_each_edge_side(m, [&](int k, int nn, int e) {
    if (!sel(k, nn)) return;
    const double nu = m.nu_e0t[k][nn][mm - 1];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        out(k * n + i, k * n + j) +=
            factor * nu * integrate_edge(m, q, e, [&](double x, double y) {
              return phys_phi(m, k, i, x, y) * phys_phi(m, k, j, x, y);
            });
    if (!interior) return;
    auto [kp, np] = m.neighbor(k, nn);
    if (kp == ldg::kNoTriangle) return;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        out(k * n + i, kp * n + j) +=
            factor * nu * integrate_edge(m, q, e, [&](double x, double y) {
              return phys_phi(m, k, i, x, y) * phys_phi(m, kp, j, x, y);
            });
  });
  return out;
}

inline Eigen::MatrixXd edge_avg_coeff_nu(const Mesh& m, int n, int mm,
                                         const DofMatrix& d, const ldg::EdgeSelector& sel,
                                         bool interior, const Quad& q) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m.num_t * n, m.num_t * n);
  const double factor = interior ? 0.5 : 1.0;
  for_each_edge_side(m, [&](int k, int nn, int e) {
    if (!sel(k, nn)) return;
    const double nu = m.nu_e0t[k][nn][mm - 1];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        out(k * n + i, k * n + j) +=
            factor * nu * integrate_edge(m, q, e, [&](double x, double y) {
              return phys_field(m, d, k, x, y) * phys_phi(m, k, i, x, y) *
                     phys_phi(m, k, j, x, y);
            });
    if (!interior) return;
    auto [kp, np] = m.neighbor(k, nn);
    if (kp == ldg::kNoTriangle) return;
    // The coefficient trace comes from the neighboring triangle.
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        out(k * n + i, kp * n + j) +=
            factor * nu * integrate_edge(m, q, e, [&](double x, double y) {
              return phys_field(m, d, kp, x, y) * phys_phi(m, k, i, x, y) *
                     phys_phi(m, kp, j, x, y);
            });
  });
  return out;
}

inline Eigen::VectorXd vec_dirichlet_nu(const Mesh& m, int n, int mm,
                                        const ldg::EdgeSelector& sel, const ScalarFunc& cd,
                                        double t, const Quad& q) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(m.num_t * n);
  for_each_edge_side(m, [&](int k, int nn, int e) {
    if (!sel(k, nn)) return;
    const double nu = m.nu_e0t[k][nn][mm - 1];
    for (int i = 0; i < n; ++i)
      out[k * n + i] += nu * integrate_edge(m, q, e, [&](double x, double y) {
        return phys_phi(m, k, i, x, y) * cd(t, x, y);
      });
  });
  return out;
}

inline Eigen::VectorXd vec_dirichlet(const Mesh& m, int n, const ldg::EdgeSelector& sel,
                                     const ScalarFunc& cd, double t, const Quad& q) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(m.num_t * n);
  for_each_edge_side(m, [&](int k, int nn, int e) {
    if (!sel(k, nn)) return;
    for (int i = 0; i < n; ++i)
      out[k * n + i] += integrate_edge(m, q, e, [&](double x, double y) {
        return phys_phi(m, k, i, x, y) * cd(t, x, y);
      }) / m.area_e[e];
  });
  return out;
}

inline Eigen::VectorXd vec_neumann(const Mesh& m, int n, const ldg::EdgeSelector& sel,
                                   const DofMatrix& d, const ScalarFunc& gn, double t,
                                   const Quad& q) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(m.num_t * n);
  for_each_edge_side(m, [&](int k, int nn, int e) {
    if (!sel(k, nn)) return;
    for (int i = 0; i < n; ++i)
      out[k * n + i] += integrate_edge(m, q, e, [&](double x, double y) {
        return phys_field(m, d, k, x, y) * phys_phi(m, k, i, x, y) * gn(t, x, y);
      });
  });
  return out;
}

inline Eigen::VectorXd vec_source(const Mesh& m, int n, const DofMatrix& f,
                                  const Quad& q) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(m.num_t * n);
  for (int k = 0; k < m.num_t; ++k)
    for (int i = 0; i < n; ++i)
      out[k * n + i] = integrate_elem(m, q, k, [&](double x, double y) {
        return phys_phi(m, k, i, x, y) * phys_field(m, f, k, x, y);
      });
  return out;
}

}  // namespace oracle

#endif  // LDG_TESTS_ORACLE_HPP
