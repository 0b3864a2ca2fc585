// Scalar fields in the broken polynomial space: L2 projection of continuous
// functions, modal-to-Lagrange conversion, and the L2 error norm.

#ifndef LDG_FIELDS_HPP
#define LDG_FIELDS_HPP

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "ldg/mesh.hpp"
#include "ldg/quadrature.hpp"
#include "ldg/reftensors.hpp"

namespace ldg {

/// Continuous coefficient or data function of (t, x1, x2).
using ScalarFunc = std::function<double(double, double, double)>;

/// K x N matrix of modal coefficients; row k is the local representation
/// vector on triangle k.
using DofMatrix = Eigen::MatrixXd;

/// Stacks a DofMatrix into a length-KN vector, triangle-major.
inline Eigen::VectorXd vec_dof(const DofMatrix& dof) {
  const int num_k = static_cast<int>(dof.rows()), n = static_cast<int>(dof.cols());
  Eigen::VectorXd y(num_k * n);
  for (int k = 0; k < num_k; ++k)
    for (int j = 0; j < n; ++j) y[k * n + j] = dof(k, j);
  return y;
}

/// Inverse of vec_dof.
inline DofMatrix unvec_dof(const Eigen::VectorXd& y, int num_k, int n) {
  if (y.size() != static_cast<long>(num_k) * n)
    throw std::invalid_argument("vector length does not match K*N");
  DofMatrix dof(num_k, n);
  for (int k = 0; k < num_k; ++k)
    for (int j = 0; j < n; ++j) dof(k, j) = y[k * n + j];
  return dof;
}

/// Evaluates the field at a reference point of triangle k.
inline double eval_dof(const DofMatrix& dof, int k, double x1, double x2) {
  double v = 0.0;
  for (int j = 0; j < dof.cols(); ++j) v += dof(k, j) * basis_fn(j + 1, x1, x2);
  return v;
}

/// L2-projects func(t, .) onto the broken polynomial space. Row k solves the
/// local mass system with m_hat; quadrature exactness degree q_ord.
inline DofMatrix project(const Mesh& mesh, const ScalarFunc& func, double t, int q_ord,
                         const RefTensors& rt) {
  const int n = rt.n;
  const QuadRule2D rule = quad_rule_2d(q_ord);
  const int n_q = static_cast<int>(rule.points.size());

  Eigen::MatrixXd m_hat(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m_hat(i, j) = rt.m_hat(i, j);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m_hat);
  if (!lu.isInvertible()) throw std::runtime_error("singular reference mass matrix");

  Eigen::MatrixXd phi(n_q, n);
  for (int r = 0; r < n_q; ++r)
    for (int j = 0; j < n; ++j)
      phi(r, j) = basis_fn(j + 1, rule.points[r][0], rule.points[r][1]);

  DofMatrix dof(mesh.num_t, n);
  Eigen::VectorXd rhs(n);
  for (int k = 0; k < mesh.num_t; ++k) {
    rhs.setZero();
    for (int r = 0; r < n_q; ++r) {
      Point2 x = mesh.map_to_physical(k, rule.points[r][0], rule.points[r][1]);
      const double fw = rule.weights[r] * func(t, x[0], x[1]);
      for (int j = 0; j < n; ++j) rhs[j] += fw * phi(r, j);
    }
    dof.row(k) = lu.solve(rhs).transpose();
  }
  return dof;
}

/// Samples modal coefficients at the Lagrange nodes used for output: the
/// three vertices for p <= 1 (a constant field is replicated), vertices plus
/// edge midpoints for p >= 2. Output is K x 3 or K x 6.
inline Eigen::MatrixXd to_lagrange(const DofMatrix& dof) {
  const int n = static_cast<int>(dof.cols());
  const int p = degree_from_dof_count(n);
  const int m = (p <= 1) ? 3 : 6;
  static const double l1[6] = {0.0, 1.0, 0.0, 0.5, 0.0, 0.5};
  static const double l2[6] = {0.0, 0.0, 1.0, 0.5, 0.5, 0.0};
  Eigen::MatrixXd out(dof.rows(), m);
  for (int k = 0; k < dof.rows(); ++k)
    for (int i = 0; i < m; ++i) out(k, i) = eval_dof(dof, k, l1[i], l2[i]);
  return out;
}

/// L2 norm of the difference between the discrete field and exact(t, .).
inline double l2_error(const Mesh& mesh, const DofMatrix& dof, const ScalarFunc& exact,
                       double t, int q_ord) {
  const int n = static_cast<int>(dof.cols());
  const QuadRule2D rule = quad_rule_2d(q_ord);
  const int n_q = static_cast<int>(rule.points.size());
  Eigen::MatrixXd phi(n_q, n);
  for (int r = 0; r < n_q; ++r)
    for (int j = 0; j < n; ++j)
      phi(r, j) = basis_fn(j + 1, rule.points[r][0], rule.points[r][1]);

  double acc = 0.0;
  for (int k = 0; k < mesh.num_t; ++k) {
    double elem = 0.0;
    for (int r = 0; r < n_q; ++r) {
      double vh = 0.0;
      for (int j = 0; j < n; ++j) vh += dof(k, j) * phi(r, j);
      Point2 x = mesh.map_to_physical(k, rule.points[r][0], rule.points[r][1]);
      const double diff = vh - exact(t, x[0], x[1]);
      elem += rule.weights[r] * diff * diff;
    }
    acc += 2.0 * mesh.area_t[k] * elem;
  }
  return std::sqrt(acc);
}

}  // namespace ldg

#endif  // LDG_FIELDS_HPP
