#include <doctest.h>

#include <cmath>

#include "ldg/convergence.hpp"
#include "ldg/fields.hpp"
#include "ldg/mesh.hpp"
#include "ldg/system.hpp"

using namespace ldg;

namespace {

ProblemSpec zero_spec() {
  ProblemSpec s;
  auto zero = [](double, double, double) { return 0.0; };
  s.d = [](double, double, double) { return 1.0; };
  s.f = zero;
  s.c_d = zero;
  s.g_n = zero;
  s.c0 = zero;
  s.eta = 1.0;
  s.boundary = {{1, Bc::kDirichlet}, {2, Bc::kDirichlet}, {3, Bc::kDirichlet},
                {4, Bc::kDirichlet}};
  return s;
}

}  // namespace

TEST_CASE("zero data gives the zero solution") {
  Mesh sq = domain_square(0.5);
  RefTensors rt = build_ref_tensors(3);
  LdgSystem sys(sq, zero_spec(), rt);
  auto [c, z1, z2] = sys.solve_stationary();
  CHECK(c.cwiseAbs().maxCoeff() < 1e-12);
  CHECK(z1.cwiseAbs().maxCoeff() < 1e-12);
  CHECK(z2.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("unmapped boundary ID is rejected") {
  Mesh sq = domain_square(0.5);
  ProblemSpec s = zero_spec();
  s.boundary.erase(3);
  RefTensors rt = build_ref_tensors(3);
  CHECK_THROWS_AS(LdgSystem(sq, s, rt), std::invalid_argument);
  s.boundary[3] = Bc::kNeumann;
  s.eta = 0.0;
  CHECK_THROWS_AS(LdgSystem(sq, s, rt), std::invalid_argument);
}

TEST_CASE("eta scales exactly the penalty block and the Dirichlet vector") {
  Mesh sq = domain_square(0.5);
  RefTensors rt = build_ref_tensors(3);
  ProblemSpec s = zero_spec();
  s.c_d = [](double, double x1, double x2) { return x1 + x2; };
  LdgSystem sys1(sq, s, rt);
  s.eta = 2.0;
  LdgSystem sys2(sq, s, rt);
  SystemBlocks b1 = sys1.build_blocks(0.0);
  SystemBlocks b2 = sys2.build_blocks(0.0);

  const int kn = sys1.block_dim();
  Eigen::MatrixXd a1(b1.a), a2(b2.a);
  Eigen::MatrixXd diff = a2 - a1;
  // Only the (C,C) block changes, and it changes by exactly the S + S_D part.
  CHECK(diff.topRows(2 * kn).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(diff.block(2 * kn, 0, kn, 2 * kn).cwiseAbs().maxCoeff() < 1e-14);
  Eigen::MatrixXd penalty = a1.block(2 * kn, 2 * kn, kn, kn);
  CHECK((diff.block(2 * kn, 2 * kn, kn, kn) - penalty).cwiseAbs().maxCoeff() < 1e-12);
  // V changes only through the K_D contribution (which doubles).
  CHECK((b2.v.head(2 * kn) - b1.v.head(2 * kn)).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((b2.v.tail(kn) - 2.0 * b1.v.tail(kn)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("no structural coupling between the two flux blocks") {
  Mesh sq = domain_square(0.5);
  RefTensors rt = build_ref_tensors(3);
  LdgSystem sys(sq, zero_spec(), rt);
  SystemBlocks b = sys.build_blocks(0.0);
  const int kn = sys.block_dim();
  Eigen::MatrixXd a(b.a);
  CHECK(a.block(0, kn, kn, kn).cwiseAbs().maxCoeff() == 0.0);
  CHECK(a.block(kn, 0, kn, kn).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("polynomial consistency of the stationary solve") {
  auto exact = [](double, double x1, double x2) { return 1.0 + x1 + x2; };
  for (int p : {1, 2, 3, 4}) {
    Mesh sq = domain_square(0.5);
    RefTensors rt = build_ref_tensors(local_dof_count(p));
    ProblemSpec s = zero_spec();
    s.c_d = exact;
    LdgSystem sys(sq, s, rt);
    auto [c, z1, z2] = sys.solve_stationary();
    CHECK(l2_error(sq, c, exact, 0.0, 2 * p + 2) < 1e-9);
    auto minus_one = [](double, double, double) { return -1.0; };
    CHECK(l2_error(sq, z1, minus_one, 0.0, 2 * p + 2) < 1e-9);
    CHECK(l2_error(sq, z2, minus_one, 0.0, 2 * p + 2) < 1e-9);
  }
}

TEST_CASE("implicit Euler: stationary fixed point") {
  Mesh sq = domain_square(0.5);
  const int p = 2;
  RefTensors rt = build_ref_tensors(local_dof_count(p));
  ProblemSpec s = zero_spec();
  auto exact = [](double, double x1, double x2) { return 1.0 + x1 + x2; };
  s.c_d = exact;
  s.c0 = exact;
  LdgSystem sys(sq, s, rt);

  auto [c_stat, z1_stat, z2_stat] = sys.solve_stationary();
  SystemState state;
  state.t = 0.0;
  const int kn = sys.block_dim();
  state.y.resize(3 * kn);
  state.y.segment(0, kn) = vec_dof(z1_stat);
  state.y.segment(kn, kn) = vec_dof(z2_stat);
  state.y.segment(2 * kn, kn) = vec_dof(c_stat);

  SystemState next = sys.euler_step(state, 0.1);
  CHECK((next.y - state.y).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("discrete mass conservation under pure Neumann") {
  Mesh sq = domain_square(0.5);
  const int p = 1;
  RefTensors rt = build_ref_tensors(local_dof_count(p));
  ProblemSpec s;
  s.d = [](double, double x1, double x2) { return 1.0 + 0.5 * std::sin(x1 * x2); };
  s.f = [](double, double, double) { return 0.0; };
  s.c_d = [](double, double, double) { return 0.0; };
  s.g_n = [](double, double, double) { return 0.0; };
  s.c0 = [](double, double x1, double x2) { return std::cos(3.0 * x1) + x2; };
  s.eta = 1.0;
  s.boundary = {{1, Bc::kNeumann}, {2, Bc::kNeumann}, {3, Bc::kNeumann},
                {4, Bc::kNeumann}};
  LdgSystem sys(sq, s, rt);

  SystemState state = sys.initial_state();
  const int kn = sys.block_dim();
  Eigen::VectorXd ones_field = vec_dof(
      DofMatrix::Constant(sq.num_t, rt.n, 0.0)
          .eval());
  DofMatrix onemat = DofMatrix::Zero(sq.num_t, rt.n);
  onemat.col(0).setConstant(1.0 / std::sqrt(2.0));
  ones_field = vec_dof(onemat);

  double mass_prev = ones_field.dot(sys.mass() * state.y.segment(2 * kn, kn));
  for (int step = 0; step < 10; ++step) {
    state = sys.euler_step(state, 0.05);
    double mass_now = ones_field.dot(sys.mass() * state.y.segment(2 * kn, kn));
    CHECK(std::abs(mass_now - mass_prev) < 1e-11 * std::abs(mass_prev));
    mass_prev = mass_now;
  }
}

TEST_CASE("manufactured problem converges on a small ladder") {
  std::vector<ConvergenceRow> rows = run_convergence({1}, 2);
  REQUIRE(rows.size() == 3);
  CHECK(rows[2].error < rows[1].error);
  CHECK(rows[1].error < rows[0].error);
  CHECK(rows[2].alpha > 1.4);
}
