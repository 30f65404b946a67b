#ifndef SPHLS_HARMONICS_HPP
#define SPHLS_HARMONICS_HPP

#include <Eigen/Dense>

#include "sphls/geometry.hpp"

namespace sphls {

/// Degree-major flat indexing of real spherical harmonics:
/// flat0 = ell^2 + (m + ell), 0-based; the first (n+1)^2 indices span P_n.
struct HarmonicIndex {
  int ell{0};
  int m{0};
  int flat0() const { return ell * ell + m + ell; }
  static HarmonicIndex from_flat0(int k);
};

inline int harmonic_count(int degree) { return (degree + 1) * (degree + 1); }

/// Real spherical harmonics Y_k(p) for flat k = 0..(n+1)^2-1, orthonormal
/// w.r.t. the surface measure of total mass 4*pi. Fully normalized
/// ascending Legendre recurrence, stable past degree 200.
Eigen::VectorXd eval_harmonics(const SpherePoint& p, int degree);

/// Node-values matrix, row j = eval_harmonics(ps[j], degree).
struct DesignMatrix {
  Eigen::MatrixXd values;  // N x (degree+1)^2
  int degree{0};
};

DesignMatrix build_design_matrix(const PointSet& ps, int degree);

/// Jacobi polynomial P_n^{(1,0)}(t), normalized so P_n^{(1,0)}(1) = n+1.
double jacobi_p10(int degree, double t);

/// K_n(t) = (n+1)/2 * P_n^{(1,0)}(t); the reproducing kernel of P_n
/// satisfies sum_k Y_k(x)Y_k(y) = K_n(x.y)/(2*pi).
double darboux_kernel(int degree, double t);

/// (1/(2m+1)) * sum_{r=n-m..n+m} K_r(t). Requires 0 <= m <= n.
double vdvp_kernel(int degree, int ray, double t);

/// Legendre P_0..P_n at t (standard normalization P_l(1)=1).
Eigen::VectorXd legendre_all(int degree, double t);

}  // namespace sphls

#endif
