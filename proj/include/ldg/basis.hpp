// Orthonormal modal basis on the unit reference triangle with vertices
// (0,0), (1,0), (0,1). Supports polynomial degrees 0..4, i.e. 1..15 local
// degrees of freedom. The basis is orthonormal w.r.t. the L2 scalar product
// on the reference triangle.

#ifndef LDG_BASIS_HPP
#define LDG_BASIS_HPP

#include <cmath>
#include <stdexcept>
#include <string>

namespace ldg {

constexpr int kMaxDegree = 4;
constexpr int kMaxLocalDofs = 15;

/// Number of local degrees of freedom for polynomial degree p.
constexpr int local_dof_count(int p) { return (p + 1) * (p + 2) / 2; }

/// Inverse of local_dof_count; throws if n is not one of {1,3,6,10,15}.
inline int degree_from_dof_count(int n) {
  for (int p = 0; p <= kMaxDegree; ++p)
    if (local_dof_count(p) == n) return p;
  throw std::invalid_argument("unsupported number of local basis functions: " +
                              std::to_string(n));
}

/// Validated polynomial order with its local dof count.
struct PolynomialOrder {
  int p;
  int n_local;

  explicit PolynomialOrder(int degree) : p(degree), n_local(0) {
    if (p < 0 || p > kMaxDegree)
      throw std::invalid_argument("polynomial order must be zero to four");
    n_local = local_dof_count(p);
  }
};

/// Evaluates the i-th basis function (1-based, i in 1..15) at a reference point.
inline double basis_fn(int i, double x1, double x2) {
  const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0), s5 = std::sqrt(5.0);
  const double s6 = std::sqrt(6.0), s10 = std::sqrt(10.0), s14 = std::sqrt(14.0);
  const double s30 = std::sqrt(30.0), s70 = std::sqrt(70.0);
  switch (i) {
    case 1: return s2;
    case 2: return 2.0 - 6.0 * x1;
    case 3: return 2.0 * s3 * (1.0 - x1 - 2.0 * x2);
    case 4: return s6 * ((10.0 * x1 - 8.0) * x1 + 1.0);
    case 5: return s3 * ((5.0 * x1 - 4.0) * x1 + (-15.0 * x2 + 12.0) * x2 - 1.0);
    case 6: return 3.0 * s5 * ((3.0 * x1 + 8.0 * x2 - 4.0) * x1 + (3.0 * x2 - 4.0) * x2 + 1.0);
    case 7: return 2.0 * s2 * (-1.0 + (15.0 + (-45.0 + 35.0 * x1) * x1) * x1);
    case 8:
      return 2.0 * s6 * (-1.0 + (13.0 + (-33.0 + 21.0 * x1) * x1) * x1 +
                         (2.0 + (-24.0 + 42.0 * x1) * x1) * x2);
    case 9:
      return 2.0 * s10 * (-1.0 + (9.0 + (-15.0 + 7.0 * x1) * x1) * x1 +
                          (6.0 + (-48.0 + 42.0 * x1) * x1 + (-6.0 + 42.0 * x1) * x2) * x2);
    case 10:
      return 2.0 * s14 * (-1.0 + (3.0 + (-3.0 + x1) * x1) * x1 +
                          (12.0 + (-24.0 + 12.0 * x1) * x1 +
                           (-30.0 + 30.0 * x1 + 20.0 * x2) * x2) * x2);
    case 11:
      return s10 * (1.0 + (-24.0 + (126.0 + (-224.0 + 126.0 * x1) * x1) * x1) * x1);
    case 12:
      return s30 * (1.0 + (-22.0 + (105.0 + (-168.0 + 84.0 * x1) * x1) * x1) * x1 +
                    (-2.0 + (42.0 + (-168.0 + 168.0 * x1) * x1) * x1) * x2);
    case 13:
      return 5.0 * s2 * (1.0 + (-18.0 + (69.0 + (-88.0 + 36.0 * x1) * x1) * x1) * x1 +
                         (-6.0 + (102.0 + (-312.0 + 216.0 * x1) * x1) * x1 +
                          (6.0 + (-96.0 + 216.0 * x1) * x1) * x2) * x2);
    case 14:
      return s70 * (1.0 + (-12.0 + (30.0 + (-28.0 + 9.0 * x1) * x1) * x1) * x1 +
                    (-12.0 + (132.0 + (-228.0 + 108.0 * x1) * x1) * x1 +
                     (30.0 + (-300.0 + 270.0 * x1) * x1 + (-20.0 + 180.0 * x1) * x2) * x2) * x2);
    case 15:
      return 3.0 * s10 * (1.0 + (-4.0 + (6.0 + (-4.0 + x1) * x1) * x1) * x1 +
                          (-20.0 + (60.0 + (-60.0 + 20.0 * x1) * x1) * x1 +
                           (90.0 + (-180.0 + 90.0 * x1) * x1 +
                            (-140.0 + 140.0 * x1 + 70.0 * x2) * x2) * x2) * x2);
    default:
      throw std::out_of_range("basis index must be in 1..15, got " + std::to_string(i));
  }
}

/// Evaluates component m (1 or 2) of the gradient of the i-th basis function.
inline double basis_grad(int i, int m, double x1, double x2) {
  const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0), s5 = std::sqrt(5.0);
  const double s6 = std::sqrt(6.0), s10 = std::sqrt(10.0), s14 = std::sqrt(14.0);
  const double s30 = std::sqrt(30.0), s70 = std::sqrt(70.0);
  if (m == 1) {
    switch (i) {
      case 1: return 0.0;
      case 2: return -6.0;
      case 3: return -2.0 * s3;
      case 4: return s6 * (20.0 * x1 - 8.0);
      case 5: return s3 * (10.0 * x1 - 4.0);
      case 6: return 6.0 * s5 * (3.0 * x1 + 4.0 * x2 - 2.0);
      case 7: return 2.0 * s2 * (15.0 + (-90.0 + 105.0 * x1) * x1);
      case 8: return 2.0 * s6 * (13.0 + (-66.0 + 63.0 * x1) * x1 + (-24.0 + 84.0 * x1) * x2);
      case 9:
        return 2.0 * s10 * (9.0 + (-30.0 + 21.0 * x1) * x1 +
                            (-48.0 + 84.0 * x1 + 42.0 * x2) * x2);
      case 10:
        return 2.0 * s14 * (3.0 + (-6.0 + 3.0 * x1) * x1 +
                            (-24.0 + 24.0 * x1 + 30.0 * x2) * x2);
      case 11: return s10 * (-24.0 + (252.0 + (-672.0 + 504.0 * x1) * x1) * x1);
      case 12:
        return s30 * (-22.0 + (210.0 + (-504.0 + 336.0 * x1) * x1) * x1 +
                      (42.0 + (-336.0 + 504.0 * x1) * x1) * x2);
      case 13:
        return 5.0 * s2 * (-18.0 + (138.0 + (-264.0 + 144.0 * x1) * x1) * x1 +
                           (102.0 + (-624.0 + 648.0 * x1) * x1 + (-96.0 + 432.0 * x1) * x2) * x2);
      case 14:
        return s70 * (-12.0 + (60.0 + (-84.0 + 36.0 * x1) * x1) * x1 +
                      (132.0 + (-456.0 + 324.0 * x1) * x1 +
                       (-300.0 + 540.0 * x1 + 180.0 * x2) * x2) * x2);
      case 15:
        return 3.0 * s10 * (-4.0 + (12.0 + (-12.0 + 4.0 * x1) * x1) * x1 +
                            (60.0 + (-120.0 + 60.0 * x1) * x1 +
                             (-180.0 + 180.0 * x1 + 140.0 * x2) * x2) * x2);
      default: break;
    }
  } else if (m == 2) {
    switch (i) {
      case 1: return 0.0;
      case 2: return 0.0;
      case 3: return -4.0 * s3;
      case 4: return 0.0;
      case 5: return 2.0 * s3 * (-15.0 * x2 + 6.0);
      case 6: return 6.0 * s5 * (4.0 * x1 + 3.0 * x2 - 2.0);
      case 7: return 0.0;
      case 8: return 2.0 * s6 * (2.0 + (-24.0 + 42.0 * x1) * x1);
      case 9:
        return 2.0 * s10 * (6.0 + (-48.0 + 42.0 * x1) * x1 + (-12.0 + 84.0 * x1) * x2);
      case 10:
        return 2.0 * s14 * (12.0 + (-24.0 + 12.0 * x1) * x1 +
                            (-60.0 + 60.0 * x1 + 60.0 * x2) * x2);
      case 11: return 0.0;
      case 12: return s30 * (-2.0 + (42.0 + (-168.0 + 168.0 * x1) * x1) * x1);
      case 13:
        return 5.0 * s2 * (-6.0 + (102.0 + (-312.0 + 216.0 * x1) * x1) * x1 +
                           (12.0 + (-192.0 + 432.0 * x1) * x1) * x2);
      case 14:
        return s70 * (-12.0 + (132.0 + (-228.0 + 108.0 * x1) * x1) * x1 +
                      (60.0 + (-600.0 + 540.0 * x1) * x1 + (-60.0 + 540.0 * x1) * x2) * x2);
      case 15:
        return 3.0 * s10 * (-20.0 + (60.0 + (-60.0 + 20.0 * x1) * x1) * x1 +
                            (180.0 + (-360.0 + 180.0 * x1) * x1 +
                             (-420.0 + 420.0 * x1 + 280.0 * x2) * x2) * x2);
      default: break;
    }
  } else {
    throw std::out_of_range("gradient component must be 1 or 2");
  }
  throw std::out_of_range("basis index must be in 1..15, got " + std::to_string(i));
}

}  // namespace ldg

#endif  // LDG_BASIS_HPP
