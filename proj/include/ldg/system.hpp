// The full discrete system: block operator layout, implicit Euler stepping,
// and the stationary solve. The unknown vector Y = [Z1; Z2; C] stacks the two
// flux components and the primary variable, each of length K*N.

#ifndef LDG_SYSTEM_HPP
#define LDG_SYSTEM_HPP

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>

#include "ldg/assembly.hpp"
#include "ldg/fields.hpp"
#include "ldg/mesh.hpp"
#include "ldg/reftensors.hpp"

namespace ldg {

enum class Bc { kDirichlet, kNeumann };

/// Problem data: coefficients, boundary treatment, penalty, and time grid.
struct ProblemSpec {
  ScalarFunc d;    // diffusion coefficient d(t, x1, x2) > 0
  ScalarFunc f;    // source term
  ScalarFunc c_d;  // Dirichlet boundary value
  ScalarFunc g_n;  // Neumann boundary flux
  ScalarFunc c0;   // initial value
  double eta = 1.0;
  std::map<int, Bc> boundary;  // boundary ID -> condition kind
  double t_end = 1.0;
  int num_steps = 1;
  bool stationary = false;
};

/// State of the time stepper: the stacked unknown vector and its time.
struct SystemState {
  Eigen::VectorXd y;  // length 3*K*N, ordered (Z1, Z2, C)
  double t = 0.0;
};

namespace detail {

inline void append_block(std::vector<Triplet>& trip, const SparseOperator& op,
                         int row_off, int col_off, double scale) {
  for (int c = 0; c < op.outerSize(); ++c)
    for (SparseOperator::InnerIterator it(op, c); it; ++it)
      trip.emplace_back(row_off + static_cast<int>(it.row()),
                        col_off + static_cast<int>(it.col()), scale * it.value());
}

}  // namespace detail

/// Assembled left-hand operator and right-hand vector at one time.
struct SystemBlocks {
  SparseOperator a;    // 3KN x 3KN
  Eigen::VectorXd v;   // 3KN
};

/// Caches the mesh-dependent, time-independent operators and reassembles the
/// coefficient-dependent blocks on demand.
class LdgSystem {
 public:
  LdgSystem(const Mesh& mesh, const ProblemSpec& spec, const RefTensors& rt)
      : mesh_(mesh), spec_(spec), rt_(rt), cache_(rt.n) {
    if (spec_.eta <= 0.0) throw std::invalid_argument("penalty eta must be positive");
    std::set<int> dir_ids, neu_ids;
    for (int e = 0; e < mesh_.num_e; ++e) {
      if (!mesh_.is_boundary_edge(e)) continue;
      auto it = spec_.boundary.find(mesh_.id_e[e]);
      if (it == spec_.boundary.end())
        throw std::invalid_argument("boundary ID " + std::to_string(mesh_.id_e[e]) +
                                    " has no boundary condition assigned");
      (it->second == Bc::kDirichlet ? dir_ids : neu_ids).insert(it->first);
    }
    sel_int_ = select_interior(mesh_);
    sel_dir_ = select_boundary(mesh_, dir_ids);
    sel_neu_ = select_boundary(mesh_, neu_ids);

    mass_ = assemble_mass(mesh_, rt_);
    std::tie(h1_, h2_) = assemble_dphi_phi(mesh_, rt_);
    std::tie(q1_, qn1_) = assemble_edge_avg_nu(mesh_, 1, sel_int_, sel_neu_, rt_);
    std::tie(q2_, qn2_) = assemble_edge_avg_nu(mesh_, 2, sel_int_, sel_neu_, rt_);
    std::tie(s_, sd_) = assemble_edge_jump(mesh_, sel_int_, sel_dir_, rt_);
  }

  const Mesh& mesh() const { return mesh_; }
  const ProblemSpec& spec() const { return spec_; }
  const RefTensors& tensors() const { return rt_; }
  const SparseOperator& mass() const { return mass_; }
  int n_local() const { return rt_.n; }
  int block_dim() const { return mesh_.num_t * rt_.n; }

  /// Projects the initial value; flux components start at zero (they carry
  /// no time derivative and are never read from the previous state).
  SystemState initial_state() const {
    const int kn = block_dim();
    SystemState st;
    st.y = Eigen::VectorXd::Zero(3 * kn);
    DofMatrix c0 = project(mesh_, spec_.c0, 0.0, elem_order(), rt_);
    st.y.segment(2 * kn, kn) = vec_dof(c0);
    st.t = 0.0;
    return st;
  }

  /// Assembles the operator A and right-hand side V at time t.
  SystemBlocks build_blocks(double t) const {
    const int kn = block_dim();
    DofMatrix d_disc = project(mesh_, spec_.d, t, elem_order(), rt_);
    DofMatrix f_disc = project(mesh_, spec_.f, t, elem_order(), rt_);

    auto [g1, g2] = assemble_dphi_phi_coeff(mesh_, rt_, d_disc);
    auto [r1, rd1] = assemble_edge_avg_coeff_nu(mesh_, 1, d_disc, sel_int_, sel_dir_, rt_);
    auto [r2, rd2] = assemble_edge_avg_coeff_nu(mesh_, 2, d_disc, sel_int_, sel_dir_, rt_);

    std::vector<Triplet> trip;
    detail::append_block(trip, mass_, 0, 0, 1.0);
    detail::append_block(trip, mass_, kn, kn, 1.0);
    detail::append_block(trip, h1_, 0, 2 * kn, -1.0);
    detail::append_block(trip, q1_, 0, 2 * kn, 1.0);
    detail::append_block(trip, qn1_, 0, 2 * kn, 1.0);
    detail::append_block(trip, h2_, kn, 2 * kn, -1.0);
    detail::append_block(trip, q2_, kn, 2 * kn, 1.0);
    detail::append_block(trip, qn2_, kn, 2 * kn, 1.0);
    detail::append_block(trip, g1, 2 * kn, 0, -1.0);
    detail::append_block(trip, r1, 2 * kn, 0, 1.0);
    detail::append_block(trip, rd1, 2 * kn, 0, 1.0);
    detail::append_block(trip, g2, 2 * kn, kn, -1.0);
    detail::append_block(trip, r2, 2 * kn, kn, 1.0);
    detail::append_block(trip, rd2, 2 * kn, kn, 1.0);
    detail::append_block(trip, s_, 2 * kn, 2 * kn, spec_.eta);
    detail::append_block(trip, sd_, 2 * kn, 2 * kn, spec_.eta);

    SystemBlocks blocks;
    blocks.a.resize(3 * kn, 3 * kn);
    blocks.a.setFromTriplets(trip.begin(), trip.end());
    blocks.a.makeCompressed();

    auto [jd1, jd2] = assemble_vec_dirichlet_nu(mesh_, sel_dir_, spec_.c_d, t, cache_);
    Eigen::VectorXd kd = assemble_vec_dirichlet(mesh_, sel_dir_, spec_.c_d, t, cache_);
    Eigen::VectorXd kne = assemble_vec_neumann(mesh_, sel_neu_, d_disc, spec_.g_n, t, cache_);
    Eigen::VectorXd l = assemble_vec_source(mass_, f_disc);

    blocks.v.resize(3 * kn);
    blocks.v.segment(0, kn) = -jd1;
    blocks.v.segment(kn, kn) = -jd2;
    blocks.v.segment(2 * kn, kn) = spec_.eta * kd - kne + l;
    return blocks;
  }

  /// One implicit Euler step of length dt ending at state.t + dt.
  SystemState euler_step(const SystemState& state, double dt) const {
    if (dt <= 0.0) throw std::invalid_argument("time step must be positive");
    const int kn = block_dim();
    const double t_next = state.t + dt;
    SystemBlocks blocks = build_blocks(t_next);

    // W + dt*A with W = blockdiag(0, 0, M).
    SparseOperator lhs = blocks.a * dt;
    std::vector<Triplet> wtrip;
    detail::append_block(wtrip, mass_, 2 * kn, 2 * kn, 1.0);
    SparseOperator w(3 * kn, 3 * kn);
    w.setFromTriplets(wtrip.begin(), wtrip.end());
    lhs += w;

    Eigen::VectorXd rhs = w * state.y + dt * blocks.v;
    SystemState next;
    next.y = solve_checked(lhs, rhs);
    next.t = t_next;
    return next;
  }

  /// Solves the stationary system A Y = V and unstacks the result.
  std::tuple<DofMatrix, DofMatrix, DofMatrix> solve_stationary(double t = 0.0) const {
    const int kn = block_dim();
    SystemBlocks blocks = build_blocks(t);
    Eigen::VectorXd y = solve_checked(blocks.a, blocks.v);
    DofMatrix z1 = unvec_dof(y.segment(0, kn), mesh_.num_t, rt_.n);
    DofMatrix z2 = unvec_dof(y.segment(kn, kn), mesh_.num_t, rt_.n);
    DofMatrix c = unvec_dof(y.segment(2 * kn, kn), mesh_.num_t, rt_.n);
    return {c, z1, z2};
  }

 private:
  int elem_order() const { return std::max(2 * degree_from_dof_count(rt_.n), 1); }

  Eigen::VectorXd solve_checked(const SparseOperator& a, const Eigen::VectorXd& rhs) const {
    Eigen::SparseLU<SparseOperator> lu;
    lu.compute(a);
    if (lu.info() != Eigen::Success)
      throw std::runtime_error("sparse factorization failed (eta = " +
                               std::to_string(spec_.eta) +
                               ", p = " + std::to_string(degree_from_dof_count(rt_.n)) + ")");
    Eigen::VectorXd y = lu.solve(rhs);
    double denom = std::max(rhs.norm(), 1.0);
    double res = (a * y - rhs).norm() / denom;
    if (!(res <= 1e-10))
      throw std::runtime_error("linear solve residual " + std::to_string(res) +
                               " exceeds tolerance (eta = " + std::to_string(spec_.eta) +
                               ", p = " + std::to_string(degree_from_dof_count(rt_.n)) + ")");
    return y;
  }

  const Mesh& mesh_;
  ProblemSpec spec_;
  RefTensors rt_;
  BasisQuadCache cache_;
  EdgeSelector sel_int_, sel_dir_, sel_neu_;
  SparseOperator mass_, h1_, h2_, q1_, q2_, qn1_, qn2_, s_, sd_;
};

}  // namespace ldg

#endif  // LDG_SYSTEM_HPP
