// Reference-element and reference-edge integral tensors shared by all
// assembly routines. Computed once per basis size and then read-only.

#ifndef LDG_REFTENSORS_HPP
#define LDG_REFTENSORS_HPP

#include <vector>

#include "ldg/basis.hpp"
#include "ldg/quadrature.hpp"

namespace ldg {

/// Integral tensors on the reference triangle and its edges. All indices are
/// 0-based here; i and j index test/trial functions, l the coefficient basis
/// function, n (or nm/np) local edges.
///
///   m_hat(i,j)              = int_T phi_i phi_j
///   h_hat(i,j,m)            = int_T d_m phi_i . phi_j
///   g_hat(i,j,l,m)          = int_T d_m phi_i . phi_l phi_j
///   s_diag(i,j,n)           = int_0^1 (phi_i phi_j) o gamma_n
///   s_offdiag(i,j,nm,np)    = int_0^1 phi_i o gamma_nm . phi_j o theta_{nm,np} o gamma_nm
///   r_diag(i,j,l,n)         = int_0^1 (phi_i phi_l phi_j) o gamma_n
///   r_offdiag(i,j,l,nm,np)  = int_0^1 phi_i o gamma_nm . (phi_l phi_j) o theta_{nm,np} o gamma_nm
struct RefTensors {
  int n = 0;  // local basis size N

  std::vector<double> m_hat_;       // n*n
  std::vector<double> h_hat_;       // n*n*2
  std::vector<double> g_hat_;       // n*n*n*2
  std::vector<double> s_diag_;      // n*n*3
  std::vector<double> s_offdiag_;   // n*n*3*3
  std::vector<double> r_diag_;      // n*n*n*3
  std::vector<double> r_offdiag_;   // n*n*n*3*3

  double m_hat(int i, int j) const { return m_hat_[i * n + j]; }
  double h_hat(int i, int j, int m) const { return h_hat_[(i * n + j) * 2 + m]; }
  double g_hat(int i, int j, int l, int m) const {
    return g_hat_[((i * n + j) * n + l) * 2 + m];
  }
  double s_diag(int i, int j, int e) const { return s_diag_[(i * n + j) * 3 + e]; }
  double s_offdiag(int i, int j, int nm, int np) const {
    return s_offdiag_[((i * n + j) * 3 + nm) * 3 + np];
  }
  double r_diag(int i, int j, int l, int e) const {
    return r_diag_[((i * n + j) * n + l) * 3 + e];
  }
  double r_offdiag(int i, int j, int l, int nm, int np) const {
    return r_offdiag_[(((i * n + j) * n + l) * 3 + nm) * 3 + np];
  }
};

/// Computes all reference tensors for a basis of size n_local. Quadrature
/// orders are chosen to integrate each product exactly.
inline RefTensors build_ref_tensors(int n_local) {
  const int p = degree_from_dof_count(n_local);
  RefTensors t;
  const int n = t.n = n_local;

  const QuadRule2D pair2d = quad_rule_2d(std::max(2 * p, 1));
  const QuadRule2D triple2d = quad_rule_2d(std::max(3 * p, 1));
  const QuadRule1D pair1d = quad_rule_1d(2 * p + 1);
  const QuadRule1D triple1d = quad_rule_1d(std::min(3 * p + 1, 17));

  t.m_hat_.assign(n * n, 0.0);
  t.h_hat_.assign(n * n * 2, 0.0);
  for (size_t r = 0; r < pair2d.points.size(); ++r) {
    const auto [x1, x2] = pair2d.points[r];
    const double w = pair2d.weights[r];
    for (int i = 0; i < n; ++i) {
      const double pi = basis_fn(i + 1, x1, x2);
      const double gi1 = basis_grad(i + 1, 1, x1, x2);
      const double gi2 = basis_grad(i + 1, 2, x1, x2);
      for (int j = 0; j < n; ++j) {
        const double pj = basis_fn(j + 1, x1, x2);
        t.m_hat_[i * n + j] += w * pi * pj;
        t.h_hat_[(i * n + j) * 2 + 0] += w * gi1 * pj;
        t.h_hat_[(i * n + j) * 2 + 1] += w * gi2 * pj;
      }
    }
  }

  t.g_hat_.assign(static_cast<size_t>(n) * n * n * 2, 0.0);
  for (size_t r = 0; r < triple2d.points.size(); ++r) {
    const auto [x1, x2] = triple2d.points[r];
    const double w = triple2d.weights[r];
    std::vector<double> phi(n), g1(n), g2(n);
    for (int i = 0; i < n; ++i) {
      phi[i] = basis_fn(i + 1, x1, x2);
      g1[i] = basis_grad(i + 1, 1, x1, x2);
      g2[i] = basis_grad(i + 1, 2, x1, x2);
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) {
          const size_t base = ((static_cast<size_t>(i) * n + j) * n + l) * 2;
          t.g_hat_[base + 0] += w * g1[i] * phi[l] * phi[j];
          t.g_hat_[base + 1] += w * g2[i] * phi[l] * phi[j];
        }
  }

  t.s_diag_.assign(n * n * 3, 0.0);
  t.s_offdiag_.assign(n * n * 9, 0.0);
  for (size_t r = 0; r < pair1d.points.size(); ++r) {
    const double s = pair1d.points[r];
    const double w = pair1d.weights[r];
    for (int nm = 1; nm <= 3; ++nm) {
      const RefPoint g = gamma_map(nm, s);
      for (int i = 0; i < n; ++i) {
        const double pi = basis_fn(i + 1, g[0], g[1]);
        for (int j = 0; j < n; ++j)
          t.s_diag_[(i * n + j) * 3 + (nm - 1)] += w * pi * basis_fn(j + 1, g[0], g[1]);
      }
      for (int np = 1; np <= 3; ++np) {
        const RefPoint gp = theta_map(nm, np, g);
        for (int i = 0; i < n; ++i) {
          const double pi = basis_fn(i + 1, g[0], g[1]);
          for (int j = 0; j < n; ++j)
            t.s_offdiag_[((i * n + j) * 3 + (nm - 1)) * 3 + (np - 1)] +=
                w * pi * basis_fn(j + 1, gp[0], gp[1]);
        }
      }
    }
  }

  t.r_diag_.assign(static_cast<size_t>(n) * n * n * 3, 0.0);
  t.r_offdiag_.assign(static_cast<size_t>(n) * n * n * 9, 0.0);
  for (size_t r = 0; r < triple1d.points.size(); ++r) {
    const double s = triple1d.points[r];
    const double w = triple1d.weights[r];
    for (int nm = 1; nm <= 3; ++nm) {
      const RefPoint g = gamma_map(nm, s);
      std::vector<double> pin(n);
      for (int i = 0; i < n; ++i) pin[i] = basis_fn(i + 1, g[0], g[1]);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int l = 0; l < n; ++l)
            t.r_diag_[((static_cast<size_t>(i) * n + j) * n + l) * 3 + (nm - 1)] +=
                w * pin[i] * pin[l] * pin[j];
      for (int np = 1; np <= 3; ++np) {
        const RefPoint gp = theta_map(nm, np, g);
        std::vector<double> pex(n);
        for (int i = 0; i < n; ++i) pex[i] = basis_fn(i + 1, gp[0], gp[1]);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            for (int l = 0; l < n; ++l)
              t.r_offdiag_[(((static_cast<size_t>(i) * n + j) * n + l) * 3 + (nm - 1)) * 3 +
                           (np - 1)] += w * pin[i] * pex[l] * pex[j];
      }
    }
  }

  return t;
}

/// Named accessors matching the per-tensor construction contract. Each
/// recomputes just the requested tensor; build_ref_tensors is the bulk path.
inline std::vector<double> integrate_ref_elem_phi_phi(int n_local) {
  return build_ref_tensors(n_local).m_hat_;
}
inline std::vector<double> integrate_ref_elem_dphi_phi(int n_local) {
  return build_ref_tensors(n_local).h_hat_;
}
inline std::vector<double> integrate_ref_elem_dphi_phi_phi(int n_local) {
  return build_ref_tensors(n_local).g_hat_;
}
inline std::vector<double> integrate_ref_edge_phi_int_phi_int(int n_local) {
  return build_ref_tensors(n_local).s_diag_;
}
inline std::vector<double> integrate_ref_edge_phi_int_phi_ext(int n_local) {
  return build_ref_tensors(n_local).s_offdiag_;
}
inline std::vector<double> integrate_ref_edge_phi_int_phi_int_phi_int(int n_local) {
  return build_ref_tensors(n_local).r_diag_;
}
inline std::vector<double> integrate_ref_edge_phi_int_phi_ext_phi_ext(int n_local) {
  return build_ref_tensors(n_local).r_offdiag_;
}

}  // namespace ldg

#endif  // LDG_REFTENSORS_HPP
