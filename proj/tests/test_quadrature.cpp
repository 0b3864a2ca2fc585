#include <doctest.h>

#include <cmath>

#include "ldg/quadrature.hpp"

using namespace ldg;

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Exact integral of x1^a x2^b over the reference triangle.
double tri_monomial(int a, int b) {
  return factorial(a) * factorial(b) / factorial(a + b + 2);
}

}  // namespace

TEST_CASE("1D rules: structure and exactness") {
  for (int ord = 0; ord <= 17; ++ord) {
    QuadRule1D rule = quad_rule_1d(ord);
    double wsum = 0.0;
    for (size_t r = 0; r < rule.points.size(); ++r) {
      CHECK(rule.points[r] > 0.0);
      CHECK(rule.points[r] < 1.0);
      CHECK(rule.weights[r] > 0.0);
      wsum += rule.weights[r];
    }
    CHECK(std::abs(wsum - 1.0) < 1e-14);
    for (int a = 0; a <= rule.order; ++a) {
      double acc = 0.0;
      for (size_t r = 0; r < rule.points.size(); ++r)
        acc += rule.weights[r] * std::pow(rule.points[r], a);
      CHECK(std::abs(acc - 1.0 / (a + 1)) < 1e-12 / (a + 1) + 1e-14);
    }
  }
  CHECK_THROWS_AS(quad_rule_1d(18), std::invalid_argument);
  CHECK_THROWS_AS(quad_rule_1d(-1), std::invalid_argument);
}

TEST_CASE("1D rule spot values") {
  QuadRule1D r1 = quad_rule_1d(1);
  REQUIRE(r1.points.size() == 1);
  CHECK(r1.points[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(r1.weights[0] == doctest::Approx(1.0).epsilon(1e-15));

  QuadRule1D r2 = quad_rule_1d(2);
  REQUIRE(r2.points.size() == 2);
  const double off = std::sqrt(1.0 / 3.0) / 2.0;
  CHECK(r2.points[0] == doctest::Approx(0.5 - off).epsilon(1e-14));
  CHECK(r2.points[1] == doctest::Approx(0.5 + off).epsilon(1e-14));
  CHECK(r2.weights[0] == doctest::Approx(0.5).epsilon(1e-14));

  QuadRule1D r3 = quad_rule_1d(3);
  double acc = 0.0;
  for (size_t r = 0; r < r3.points.size(); ++r)
    acc += r3.weights[r] * std::pow(r3.points[r], 3);
  CHECK(std::abs(acc - 0.25) < 1e-15);
}

TEST_CASE("2D rules: structure and exactness") {
  for (int ord = 0; ord <= 12; ++ord) {
    QuadRule2D rule = quad_rule_2d(ord);
    double wsum = 0.0;
    for (size_t r = 0; r < rule.points.size(); ++r) {
      const double x1 = rule.points[r][0], x2 = rule.points[r][1];
      CHECK(x1 > 0.0);
      CHECK(x2 > 0.0);
      CHECK(x1 + x2 < 1.0);
      CHECK(rule.weights[r] > 0.0);
      wsum += rule.weights[r];
    }
    CHECK(std::abs(wsum - 0.5) < 1e-14);
    for (int a = 0; a <= rule.order; ++a)
      for (int b = 0; a + b <= rule.order; ++b) {
        double acc = 0.0;
        for (size_t r = 0; r < rule.points.size(); ++r)
          acc += rule.weights[r] * std::pow(rule.points[r][0], a) *
                 std::pow(rule.points[r][1], b);
        const double exact = tri_monomial(a, b);
        CHECK(std::abs(acc - exact) < 1e-12 * exact + 1e-15);
      }
  }
}

TEST_CASE("2D rule spot values") {
  QuadRule2D r1 = quad_rule_2d(1);
  REQUIRE(r1.points.size() == 1);
  CHECK(r1.points[0][0] == doctest::Approx(1.0 / 3.0));
  CHECK(r1.weights[0] == doctest::Approx(0.5));

  QuadRule2D r2 = quad_rule_2d(2);
  REQUIRE(r2.points.size() == 3);
  CHECK(r2.points[0][0] == doctest::Approx(1.0 / 6.0));
  CHECK(r2.weights[0] == doctest::Approx(1.0 / 6.0));

  // Fallback rule, order 8.
  QuadRule2D r8 = quad_rule_2d(8);
  double acc = 0.0;
  for (size_t r = 0; r < r8.points.size(); ++r)
    acc += r8.weights[r] * std::pow(r8.points[r][0], 2) * std::pow(r8.points[r][1], 3);
  CHECK(std::abs(acc - 1.0 / 420.0) < 1e-12 / 420.0);
}

TEST_CASE("gamma maps") {
  CHECK(gamma_map(2, 0.0)[0] == doctest::Approx(0.0));
  CHECK(gamma_map(2, 0.0)[1] == doctest::Approx(1.0));
  CHECK(gamma_map(1, 0.5)[0] == doctest::Approx(0.5));
  CHECK(gamma_map(1, 0.5)[1] == doctest::Approx(0.5));
  CHECK(gamma_map(3, 1.0)[0] == doctest::Approx(1.0));
  CHECK(gamma_map(3, 1.0)[1] == doctest::Approx(0.0));
  CHECK_THROWS_AS(gamma_map(4, 0.0), std::out_of_range);
}

TEST_CASE("theta maps: spot values, involution, orientation reversal") {
  RefPoint p = theta_map(2, 1, {0.0, 0.25});
  CHECK(p[0] == doctest::Approx(0.75));
  CHECK(p[1] == doctest::Approx(0.25));
  RefPoint q = theta_map(1, 1, {0.25, 0.75});
  CHECK(q[0] == doctest::Approx(0.75));
  CHECK(q[1] == doctest::Approx(0.25));

  for (int nm = 1; nm <= 3; ++nm)
    for (int np = 1; np <= 3; ++np) {
      for (int s = 0; s < 20; ++s) {
        const double sv = s / 19.0;
        RefPoint x = gamma_map(nm, sv);
        RefPoint y = theta_map(np, nm, theta_map(nm, np, x));
        CHECK(std::abs(y[0] - x[0]) < 1e-15);
        CHECK(std::abs(y[1] - x[1]) < 1e-15);
      }
      // Endpoints of edge nm map to the swapped endpoints of edge np.
      RefPoint a = theta_map(nm, np, gamma_map(nm, 0.0));
      RefPoint b = theta_map(nm, np, gamma_map(nm, 1.0));
      RefPoint a_expect = gamma_map(np, 1.0);
      RefPoint b_expect = gamma_map(np, 0.0);
      CHECK(std::abs(a[0] - a_expect[0]) < 1e-15);
      CHECK(std::abs(a[1] - a_expect[1]) < 1e-15);
      CHECK(std::abs(b[0] - b_expect[0]) < 1e-15);
      CHECK(std::abs(b[1] - b_expect[1]) < 1e-15);
    }
}

TEST_CASE("basis cache agrees with direct evaluation") {
  for (int n_local : {1, 3, 6, 10, 15}) {
    BasisQuadCache cache(n_local);
    for (int ord : {cache.elem_order(), cache.edge_order()}) {
      const BasisQuadEntry& e = cache.entry(ord);
      for (size_t r = 0; r < e.rule2d.points.size(); ++r)
        for (int i = 1; i <= n_local; ++i) {
          CHECK(e.phi2d[r][i - 1] ==
                basis_fn(i, e.rule2d.points[r][0], e.rule2d.points[r][1]));
          CHECK(e.grad2d[r][i - 1][0] ==
                basis_grad(i, 1, e.rule2d.points[r][0], e.rule2d.points[r][1]));
        }
      for (int nn = 1; nn <= 3; ++nn)
        for (size_t r = 0; r < e.rule1d.points.size(); ++r) {
          RefPoint g = gamma_map(nn, e.rule1d.points[r]);
          for (int i = 1; i <= n_local; ++i)
            CHECK(e.phi1d[nn - 1][r][i - 1] == basis_fn(i, g[0], g[1]));
        }
    }
  }
  // N=3 edge values: phi_2 along gamma_3 equals 2 - 6 s.
  BasisQuadCache c3(3);
  const BasisQuadEntry& e = c3.entry(c3.edge_order());
  for (size_t r = 0; r < e.rule1d.points.size(); ++r)
    CHECK(e.phi1d[2][r][1] ==
          doctest::Approx(2.0 - 6.0 * e.rule1d.points[r]).epsilon(1e-14));
}
