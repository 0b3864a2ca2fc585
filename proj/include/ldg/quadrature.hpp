// Quadrature rules on the unit interval and the reference triangle, the
// reference-edge parametrizations, the nine edge-to-edge maps between two
// adjacent reference elements, and a cache of basis values at quadrature
// nodes.

#ifndef LDG_QUADRATURE_HPP
#define LDG_QUADRATURE_HPP

#include <array>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "ldg/basis.hpp"

namespace ldg {

using RefPoint = std::array<double, 2>;

/// Gauss-Legendre rule on (0,1). Weights sum to 1.
struct QuadRule1D {
  int order = 0;  // exactness degree
  std::vector<double> points;
  std::vector<double> weights;
};

/// Rule on the reference triangle. Weights sum to 1/2, points strictly interior.
struct QuadRule2D {
  int order = 0;
  std::vector<RefPoint> points;
  std::vector<double> weights;
};

namespace detail {

/// Gauss-Legendre nodes/weights on (0,1) for an n-point rule (Newton on P_n).
inline void gauss_legendre_unit(int n, std::vector<double>& pts,
                                std::vector<double>& wts) {
  pts.resize(n);
  wts.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));  // on (-1,1)
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      double dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int j = 2; j <= n; ++j) {
      double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    double dp = n * (x * p1 - p0) / (x * x - 1.0);
    pts[n - 1 - i] = 0.5 * (x + 1.0);
    wts[n - 1 - i] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
}

}  // namespace detail

/// Smallest tabulated Gauss-Legendre rule on (0,1) exact for degree
/// max(q_ord, 1). Supports q_ord up to 17.
inline QuadRule1D quad_rule_1d(int q_ord) {
  if (q_ord < 0 || q_ord > 17)
    throw std::invalid_argument("1D quadrature order out of supported range 0..17: " +
                                std::to_string(q_ord));
  int ord = std::max(q_ord, 1);
  int n = ord / 2 + 1;  // an n-point rule is exact up to degree 2n-1
  QuadRule1D rule;
  rule.order = 2 * n - 1;
  detail::gauss_legendre_unit(n, rule.points, rule.weights);
  return rule;
}

/// Quadrature on the reference triangle exact for total degree q_ord.
/// Low orders use symmetric rules with closed-form coefficients; higher
/// orders use a collapsed tensor-product rule.
inline QuadRule2D quad_rule_2d(int q_ord) {
  QuadRule2D rule;
  int ord = std::max(q_ord, 1);
  switch (ord) {
    case 1:
      rule.points = {{1.0 / 3.0, 1.0 / 3.0}};
      rule.weights = {0.5};
      break;
    case 2:
      rule.points = {{1.0 / 6.0, 1.0 / 6.0}, {2.0 / 3.0, 1.0 / 6.0}, {1.0 / 6.0, 2.0 / 3.0}};
      rule.weights = {1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0};
      break;
    case 3:
    case 4:
      rule.points = {{0.445948490915965, 0.108103018168070},
                     {0.108103018168070, 0.445948490915965},
                     {0.445948490915965, 0.445948490915965},
                     {0.091576213509771, 0.816847572980458},
                     {0.816847572980458, 0.091576213509771},
                     {0.091576213509771, 0.091576213509771}};
      rule.weights = {0.111690794839005, 0.111690794839005, 0.111690794839005,
                      0.054975871827661, 0.054975871827661, 0.054975871827661};
      break;
    case 5: {
      double a1 = (6.0 - std::sqrt(15.0)) / 21.0;
      double a2 = (6.0 + std::sqrt(15.0)) / 21.0;
      double w1 = (155.0 - std::sqrt(15.0)) / 2400.0;
      double w2 = (155.0 + std::sqrt(15.0)) / 2400.0;
      rule.points = {{1.0 / 3.0, 1.0 / 3.0},
                     {a1, 1.0 - 2.0 * a1},
                     {1.0 - 2.0 * a1, a1},
                     {a1, a1},
                     {a2, 1.0 - 2.0 * a2},
                     {1.0 - 2.0 * a2, a2},
                     {a2, a2}};
      rule.weights = {9.0 / 80.0, w1, w1, w1, w2, w2, w2};
      break;
    }
    default: {
      // Collapsed product x1 = u, x2 = v (1 - u). The Jacobian (1 - u)
      // raises the degree in u by one, hence n points per direction with
      // 2n - 1 >= ord + 1.
      int n = (ord + 3) / 2;
      std::vector<double> up, uw, vp, vw;
      detail::gauss_legendre_unit(n, up, uw);
      detail::gauss_legendre_unit(n, vp, vw);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          rule.points.push_back({up[i], vp[j] * (1.0 - up[i])});
          rule.weights.push_back(uw[i] * vw[j] * (1.0 - up[i]));
        }
      break;
    }
  }
  rule.order = ord;
  return rule;
}

/// Parametrization of the n-th reference edge (n in 1..3) over [0,1].
inline RefPoint gamma_map(int n, double s) {
  switch (n) {
    case 1: return {1.0 - s, s};
    case 2: return {0.0, 1.0 - s};
    case 3: return {s, 0.0};
    default:
      throw std::out_of_range("local edge index must be 1..3, got " + std::to_string(n));
  }
}

/// Maps a point on reference edge n_minus to the same physical location as
/// seen from the adjacent reference element, landing on edge n_plus.
inline RefPoint theta_map(int n_minus, int n_plus, const RefPoint& x) {
  const double x1 = x[0], x2 = x[1];
  switch (3 * (n_minus - 1) + (n_plus - 1)) {
    case 0: return {1.0 - x1, 1.0 - x2};  // 1 -> 1
    case 1: return {0.0, x2};             // 1 -> 2
    case 2: return {x1, 0.0};             // 1 -> 3
    case 3: return {1.0 - x2, x2};        // 2 -> 1
    case 4: return {0.0, 1.0 - x2};       // 2 -> 2
    case 5: return {x2, 0.0};             // 2 -> 3
    case 6: return {x1, 1.0 - x1};        // 3 -> 1
    case 7: return {0.0, x1};             // 3 -> 2
    case 8: return {1.0 - x1, 0.0};       // 3 -> 3
    default:
      throw std::out_of_range("local edge indices must be 1..3");
  }
}

/// Basis values at the quadrature nodes of one rule pair (2D rule of a given
/// order, 1D rule of the same order on each edge and through each theta map).
struct BasisQuadEntry {
  QuadRule2D rule2d;
  QuadRule1D rule1d;
  // phi2d[r][i-1], grad2d[r][i-1][m-1]
  std::vector<std::array<double, kMaxLocalDofs>> phi2d;
  std::vector<std::array<std::array<double, 2>, kMaxLocalDofs>> grad2d;
  // phi1d[n-1][r][i-1]: phi_i(gamma_n(s_r))
  std::array<std::vector<std::array<double, kMaxLocalDofs>>, 3> phi1d;
  // theta_phi1d[n_minus-1][n_plus-1][r][i-1]: phi_i(theta(gamma_{n-}(s_r)))
  std::array<std::array<std::vector<std::array<double, kMaxLocalDofs>>, 3>, 3> theta_phi1d;
};

/// Precomputed basis values at quadrature nodes for the orders an order-p
/// discretization needs: max(2p,1) on triangles and 2p+1 on edges.
class BasisQuadCache {
 public:
  explicit BasisQuadCache(int n_local)
      : n_local_(n_local), p_(degree_from_dof_count(n_local)) {
    int elem_ord = std::max(2 * p_, 1);
    int edge_ord = 2 * p_ + 1;
    for (int ord : {elem_ord, edge_ord}) build_entry(ord);
  }

  int n_local() const { return n_local_; }
  int degree() const { return p_; }
  int elem_order() const { return std::max(2 * p_, 1); }
  int edge_order() const { return 2 * p_ + 1; }

  const BasisQuadEntry& entry(int order) const {
    auto it = entries_.find(std::max(order, 1));
    if (it == entries_.end())
      throw std::invalid_argument("no cached basis values for order " + std::to_string(order));
    return it->second;
  }

 private:
  void build_entry(int ord) {
    if (entries_.count(ord)) return;
    BasisQuadEntry e;
    e.rule2d = quad_rule_2d(ord);
    e.rule1d = quad_rule_1d(ord);
    const int n2 = static_cast<int>(e.rule2d.points.size());
    const int n1 = static_cast<int>(e.rule1d.points.size());
    e.phi2d.resize(n2);
    e.grad2d.resize(n2);
    for (int r = 0; r < n2; ++r) {
      auto [x1, x2] = e.rule2d.points[r];
      for (int i = 1; i <= n_local_; ++i) {
        e.phi2d[r][i - 1] = basis_fn(i, x1, x2);
        e.grad2d[r][i - 1][0] = basis_grad(i, 1, x1, x2);
        e.grad2d[r][i - 1][1] = basis_grad(i, 2, x1, x2);
      }
    }
    for (int n = 1; n <= 3; ++n) {
      auto& edge = e.phi1d[n - 1];
      edge.resize(n1);
      for (int r = 0; r < n1; ++r) {
        RefPoint g = gamma_map(n, e.rule1d.points[r]);
        for (int i = 1; i <= n_local_; ++i) edge[r][i - 1] = basis_fn(i, g[0], g[1]);
      }
      for (int np = 1; np <= 3; ++np) {
        auto& mapped = e.theta_phi1d[n - 1][np - 1];
        mapped.resize(n1);
        for (int r = 0; r < n1; ++r) {
          RefPoint g = theta_map(n, np, gamma_map(n, e.rule1d.points[r]));
          for (int i = 1; i <= n_local_; ++i) mapped[r][i - 1] = basis_fn(i, g[0], g[1]);
        }
      }
    }
    entries_.emplace(ord, std::move(e));
  }

  int n_local_;
  int p_;
  std::map<int, BasisQuadEntry> entries_;
};

/// Convenience constructor matching the per-order cache contract.
inline BasisQuadCache build_basis_cache(int n_local) { return BasisQuadCache(n_local); }

}  // namespace ldg

#endif  // LDG_QUADRATURE_HPP
