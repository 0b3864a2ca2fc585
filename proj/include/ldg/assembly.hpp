// Assembly of the global sparse operators and right-hand-side vectors from a
// mesh, the reference tensors, and coefficient data. Element operators live
// in the K diagonal N x N blocks; edge operators add at most one off-diagonal
// block per ordered pair of adjacent triangles.

#ifndef LDG_ASSEMBLY_HPP
#define LDG_ASSEMBLY_HPP

#include <Eigen/Sparse>
#include <set>
#include <stdexcept>
#include <vector>

#include "ldg/fields.hpp"
#include "ldg/mesh.hpp"
#include "ldg/quadrature.hpp"
#include "ldg/reftensors.hpp"

namespace ldg {

using SparseOperator = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

/// K x 3 mask of (triangle, local edge) pairs an edge operation acts on.
struct EdgeSelector {
  std::vector<std::array<bool, 3>> mask;

  bool operator()(int k, int n) const { return mask[k][n]; }
};

/// Selects all interior local edges.
inline EdgeSelector select_interior(const Mesh& mesh) {
  EdgeSelector sel;
  sel.mask.resize(mesh.num_t);
  for (int k = 0; k < mesh.num_t; ++k)
    for (int n = 0; n < 3; ++n)
      sel.mask[k][n] = !mesh.is_boundary_edge(mesh.e0t[k][n]);
  return sel;
}

/// Selects boundary local edges whose boundary ID is in ids.
inline EdgeSelector select_boundary(const Mesh& mesh, const std::set<int>& ids) {
  EdgeSelector sel;
  sel.mask.resize(mesh.num_t);
  for (int k = 0; k < mesh.num_t; ++k)
    for (int n = 0; n < 3; ++n) {
      int e = mesh.e0t[k][n];
      sel.mask[k][n] = mesh.is_boundary_edge(e) && ids.count(mesh.id_e[e]) > 0;
    }
  return sel;
}

/// Selects no edges.
inline EdgeSelector select_none(const Mesh& mesh) {
  EdgeSelector sel;
  sel.mask.assign(mesh.num_t, {false, false, false});
  return sel;
}

namespace detail {

inline SparseOperator from_triplets(int dim, std::vector<Triplet>& trip) {
  SparseOperator op(dim, dim);
  op.setFromTriplets(trip.begin(), trip.end());
  op.makeCompressed();
  return op;
}

inline void check_tensor_size(const RefTensors& rt, int n) {
  if (rt.n != n) throw std::invalid_argument("reference tensor size mismatch");
}

}  // namespace detail

/// Global mass matrix: diagonal blocks 2|T_k| m_hat.
inline SparseOperator assemble_mass(const Mesh& mesh, const RefTensors& rt) {
  const int n = rt.n;
  std::vector<Triplet> trip;
  trip.reserve(static_cast<size_t>(mesh.num_t) * n * n);
  for (int k = 0; k < mesh.num_t; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double v = 2.0 * mesh.area_t[k] * rt.m_hat(i, j);
        if (v != 0.0) trip.emplace_back(k * n + i, k * n + j, v);
      }
  return detail::from_triplets(mesh.num_t * n, trip);
}

/// Element operators with one test-function derivative:
///   H^1 block = B22 h_hat(.,.,1) - B21 h_hat(.,.,2)
///   H^2 block = B11 h_hat(.,.,2) - B12 h_hat(.,.,1)
inline std::pair<SparseOperator, SparseOperator> assemble_dphi_phi(const Mesh& mesh,
                                                                  const RefTensors& rt) {
  const int n = rt.n;
  std::vector<Triplet> t1, t2;
  for (int k = 0; k < mesh.num_t; ++k) {
    const auto& b = mesh.b[k];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double h1 = rt.h_hat(i, j, 0), h2 = rt.h_hat(i, j, 1);
        double v1 = b[1][1] * h1 - b[1][0] * h2;
        double v2 = b[0][0] * h2 - b[0][1] * h1;
        if (v1 != 0.0) t1.emplace_back(k * n + i, k * n + j, v1);
        if (v2 != 0.0) t2.emplace_back(k * n + i, k * n + j, v2);
      }
  }
  const int dim = mesh.num_t * n;
  return {detail::from_triplets(dim, t1), detail::from_triplets(dim, t2)};
}

/// Like assemble_dphi_phi but with the discrete coefficient d contracted in:
/// block entries sum_l D_kl (B22 g_hat(.,.,l,1) - B21 g_hat(.,.,l,2)) etc.
inline std::pair<SparseOperator, SparseOperator> assemble_dphi_phi_coeff(
    const Mesh& mesh, const RefTensors& rt, const DofMatrix& d_disc) {
  const int n = rt.n;
  if (d_disc.rows() != mesh.num_t || d_disc.cols() != n)
    throw std::invalid_argument("coefficient matrix shape mismatch");
  std::vector<Triplet> t1, t2;
  for (int k = 0; k < mesh.num_t; ++k) {
    const auto& b = mesh.b[k];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double g1 = 0.0, g2 = 0.0;
        for (int l = 0; l < n; ++l) {
          g1 += d_disc(k, l) * rt.g_hat(i, j, l, 0);
          g2 += d_disc(k, l) * rt.g_hat(i, j, l, 1);
        }
        double v1 = b[1][1] * g1 - b[1][0] * g2;
        double v2 = b[0][0] * g2 - b[0][1] * g1;
        if (v1 != 0.0) t1.emplace_back(k * n + i, k * n + j, v1);
        if (v2 != 0.0) t2.emplace_back(k * n + i, k * n + j, v2);
      }
  }
  const int dim = mesh.num_t * n;
  return {detail::from_triplets(dim, t1), detail::from_triplets(dim, t2)};
}

/// Jump penalization operators. S gets diagonal blocks + s_diag and
/// off-diagonal blocks - s_offdiag over the interior selector (the edge
/// length cancels against the 1/|E| penalty scaling); S_D gets diagonal
/// blocks only over the Dirichlet selector.
inline std::pair<SparseOperator, SparseOperator> assemble_edge_jump(
    const Mesh& mesh, const EdgeSelector& sel_int, const EdgeSelector& sel_dir,
    const RefTensors& rt) {
  const int n = rt.n;
  std::vector<Triplet> ts, td;
  for (int nn = 0; nn < 3; ++nn) {
    for (int k = 0; k < mesh.num_t; ++k) {
      if (sel_int(k, nn))
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            ts.emplace_back(k * n + i, k * n + j, rt.s_diag(i, j, nn));
      if (sel_dir(k, nn))
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            td.emplace_back(k * n + i, k * n + j, rt.s_diag(i, j, nn));
    }
    for (int np = 0; np < 3; ++np)
      for (const auto& [km, kp] : mesh.mark_e0te0t[nn][np]) {
        if (!sel_int(km, nn)) continue;
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            ts.emplace_back(km * n + i, kp * n + j, -rt.s_offdiag(i, j, nn, np));
      }
  }
  const int dim = mesh.num_t * n;
  return {detail::from_triplets(dim, ts), detail::from_triplets(dim, td)};
}

/// Flux-average operators weighted by the normal component m (1 or 2).
/// Q^m: 1/2 nu^m |E| s_diag on interior diagonal blocks, 1/2 nu^m_{k-} |E|
/// s_offdiag on the (k-,k+) blocks. Q_N^m: factor-1 diagonal blocks on the
/// Neumann selector.
inline std::pair<SparseOperator, SparseOperator> assemble_edge_avg_nu(
    const Mesh& mesh, int m, const EdgeSelector& sel_int, const EdgeSelector& sel_neu,
    const RefTensors& rt) {
  if (m != 1 && m != 2) throw std::invalid_argument("normal component must be 1 or 2");
  const int n = rt.n;
  std::vector<Triplet> tq, tn;
  for (int nn = 0; nn < 3; ++nn) {
    for (int k = 0; k < mesh.num_t; ++k) {
      const double nu = mesh.nu_e0t[k][nn][m - 1];
      const double len = mesh.area_e0t[k][nn];
      if (sel_int(k, nn)) {
        const double c = 0.5 * nu * len;
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            tq.emplace_back(k * n + i, k * n + j, c * rt.s_diag(i, j, nn));
      }
      if (sel_neu(k, nn)) {
        const double c = nu * len;
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            tn.emplace_back(k * n + i, k * n + j, c * rt.s_diag(i, j, nn));
      }
    }
    for (int np = 0; np < 3; ++np)
      for (const auto& [km, kp] : mesh.mark_e0te0t[nn][np]) {
        if (!sel_int(km, nn)) continue;
        const double c = 0.5 * mesh.nu_e0t[km][nn][m - 1] * mesh.area_e0t[km][nn];
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            tq.emplace_back(km * n + i, kp * n + j, c * rt.s_offdiag(i, j, nn, np));
      }
  }
  const int dim = mesh.num_t * n;
  return {detail::from_triplets(dim, tq), detail::from_triplets(dim, tn)};
}

/// Coefficient-weighted flux averages. As assemble_edge_avg_nu with the
/// r tensors contracted against d; off-diagonal blocks use the neighboring
/// triangle's coefficients. R_D^m: factor-1 diagonal blocks on the Dirichlet
/// selector.
inline std::pair<SparseOperator, SparseOperator> assemble_edge_avg_coeff_nu(
    const Mesh& mesh, int m, const DofMatrix& d_disc, const EdgeSelector& sel_int,
    const EdgeSelector& sel_dir, const RefTensors& rt) {
  if (m != 1 && m != 2) throw std::invalid_argument("normal component must be 1 or 2");
  const int n = rt.n;
  if (d_disc.rows() != mesh.num_t || d_disc.cols() != n)
    throw std::invalid_argument("coefficient matrix shape mismatch");
  std::vector<Triplet> tr, td;
  for (int nn = 0; nn < 3; ++nn) {
    for (int k = 0; k < mesh.num_t; ++k) {
      const double nu = mesh.nu_e0t[k][nn][m - 1];
      const double len = mesh.area_e0t[k][nn];
      if (sel_int(k, nn) || sel_dir(k, nn)) {
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) {
            double rd = 0.0;
            for (int l = 0; l < n; ++l) rd += d_disc(k, l) * rt.r_diag(i, j, l, nn);
            if (sel_int(k, nn))
              tr.emplace_back(k * n + i, k * n + j, 0.5 * nu * len * rd);
            if (sel_dir(k, nn))
              td.emplace_back(k * n + i, k * n + j, nu * len * rd);
          }
      }
    }
    for (int np = 0; np < 3; ++np)
      for (const auto& [km, kp] : mesh.mark_e0te0t[nn][np]) {
        if (!sel_int(km, nn)) continue;
        const double c = 0.5 * mesh.nu_e0t[km][nn][m - 1] * mesh.area_e0t[km][nn];
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) {
            double ro = 0.0;
            for (int l = 0; l < n; ++l) ro += d_disc(kp, l) * rt.r_offdiag(i, j, l, nn, np);
            tr.emplace_back(km * n + i, kp * n + j, c * ro);
          }
      }
  }
  const int dim = mesh.num_t * n;
  return {detail::from_triplets(dim, tr), detail::from_triplets(dim, td)};
}

/// Dirichlet boundary vectors weighted by the normal:
/// J_D^m entry = nu^m |E| int_0^1 phi_i o gamma_n . c_D(F_k o gamma_n).
inline std::pair<Eigen::VectorXd, Eigen::VectorXd> assemble_vec_dirichlet_nu(
    const Mesh& mesh, const EdgeSelector& sel, const ScalarFunc& c_d, double t,
    const BasisQuadCache& cache) {
  const int n = cache.n_local();
  const BasisQuadEntry& e = cache.entry(cache.edge_order());
  const int n_q = static_cast<int>(e.rule1d.points.size());
  Eigen::VectorXd j1 = Eigen::VectorXd::Zero(mesh.num_t * n);
  Eigen::VectorXd j2 = Eigen::VectorXd::Zero(mesh.num_t * n);
  for (int nn = 0; nn < 3; ++nn)
    for (int k = 0; k < mesh.num_t; ++k) {
      if (!sel(k, nn)) continue;
      const double len = mesh.area_e0t[k][nn];
      const Point2& nu = mesh.nu_e0t[k][nn];
      for (int r = 0; r < n_q; ++r) {
        RefPoint g = gamma_map(nn + 1, e.rule1d.points[r]);
        Point2 x = mesh.map_to_physical(k, g[0], g[1]);
        const double cw = e.rule1d.weights[r] * c_d(t, x[0], x[1]);
        for (int i = 0; i < n; ++i) {
          const double v = cw * e.phi1d[nn][r][i] * len;
          j1[k * n + i] += nu[0] * v;
          j2[k * n + i] += nu[1] * v;
        }
      }
    }
  return {j1, j2};
}

/// Edge-length-free Dirichlet vector used by the penalty term:
/// K_D entry = int_0^1 phi_i o gamma_n . c_D(F_k o gamma_n).
inline Eigen::VectorXd assemble_vec_dirichlet(const Mesh& mesh, const EdgeSelector& sel,
                                              const ScalarFunc& c_d, double t,
                                              const BasisQuadCache& cache) {
  const int n = cache.n_local();
  const BasisQuadEntry& e = cache.entry(cache.edge_order());
  const int n_q = static_cast<int>(e.rule1d.points.size());
  Eigen::VectorXd kd = Eigen::VectorXd::Zero(mesh.num_t * n);
  for (int nn = 0; nn < 3; ++nn)
    for (int k = 0; k < mesh.num_t; ++k) {
      if (!sel(k, nn)) continue;
      for (int r = 0; r < n_q; ++r) {
        RefPoint g = gamma_map(nn + 1, e.rule1d.points[r]);
        Point2 x = mesh.map_to_physical(k, g[0], g[1]);
        const double cw = e.rule1d.weights[r] * c_d(t, x[0], x[1]);
        for (int i = 0; i < n; ++i) kd[k * n + i] += cw * e.phi1d[nn][r][i];
      }
    }
  return kd;
}

/// Neumann vector:
/// K_N entry = |E| sum_l D_kl int_0^1 (phi_i phi_l) o gamma_n . g_N(F_k o gamma_n).
inline Eigen::VectorXd assemble_vec_neumann(const Mesh& mesh, const EdgeSelector& sel,
                                            const DofMatrix& d_disc, const ScalarFunc& g_n,
                                            double t, const BasisQuadCache& cache) {
  const int n = cache.n_local();
  if (d_disc.rows() != mesh.num_t || d_disc.cols() != n)
    throw std::invalid_argument("coefficient matrix shape mismatch");
  const BasisQuadEntry& e = cache.entry(cache.edge_order());
  const int n_q = static_cast<int>(e.rule1d.points.size());
  Eigen::VectorXd kn = Eigen::VectorXd::Zero(mesh.num_t * n);
  for (int nn = 0; nn < 3; ++nn)
    for (int k = 0; k < mesh.num_t; ++k) {
      if (!sel(k, nn)) continue;
      const double len = mesh.area_e0t[k][nn];
      for (int r = 0; r < n_q; ++r) {
        RefPoint g = gamma_map(nn + 1, e.rule1d.points[r]);
        Point2 x = mesh.map_to_physical(k, g[0], g[1]);
        double dval = 0.0;
        for (int l = 0; l < n; ++l) dval += d_disc(k, l) * e.phi1d[nn][r][l];
        const double cw = len * e.rule1d.weights[r] * dval * g_n(t, x[0], x[1]);
        for (int i = 0; i < n; ++i) kn[k * n + i] += cw * e.phi1d[nn][r][i];
      }
    }
  return kn;
}

/// Source vector L = M vec(F).
inline Eigen::VectorXd assemble_vec_source(const SparseOperator& mass,
                                           const DofMatrix& f_disc) {
  Eigen::VectorXd f = vec_dof(f_disc);
  if (mass.cols() != f.size()) throw std::invalid_argument("mass/source shape mismatch");
  return mass * f;
}

}  // namespace ldg

#endif  // LDG_ASSEMBLY_HPP
