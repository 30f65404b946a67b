#ifndef SPHLS_APPROXIMATION_HPP
#define SPHLS_APPROXIMATION_HPP

#include <Eigen/Dense>
#include <string>

#include "sphls/geometry.hpp"
#include "sphls/harmonics.hpp"
#include "sphls/quadrature.hpp"

namespace sphls {

/// Basis of P_n orthonormal w.r.t. the discrete inner product
/// <f,g>_N = sum_i f(xi_i) g(xi_i), realized by a Householder QR of the
/// design matrix. The triangular factor is degree-nested: the first
/// (r+1)^2 columns of node_values span the harmonic span of degrees <= r.
struct DiscreteOrthonormalBasis {
  Eigen::MatrixXd node_values;  // N x (n+1)^2, orthonormal columns (thin Q)
  Eigen::MatrixXd r_factor;     // (n+1)^2 x (n+1)^2, upper triangular
  int degree{0};
  PointSet pointset;

  /// I_r(x) for a point off the grid: solve R^T w = Y(x).
  Eigen::VectorXd eval_at(const SpherePoint& p) const;
  /// Rowwise variant for a whole evaluation set.
  Eigen::MatrixXd eval_at(const PointSet& pts) const;

  /// Map discrete-orthonormal coefficients to harmonic coefficients.
  Eigen::VectorXd to_harmonic(const Eigen::VectorXd& coeffs) const;
};

class basis_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

DiscreteOrthonormalBasis build_orthonormal_basis(const PointSet& ps, int degree,
                                                 double rank_tol = 1e-10);

enum class OperatorTag { LS, VP_LS, HYPER, FHYPER };

std::string to_string(OperatorTag tag);
OperatorTag operator_tag_from_string(const std::string& s);

/// A spherical polynomial in harmonic coefficients, evaluable anywhere.
struct Approximant {
  Eigen::VectorXd harmonic_coeffs;  // length (degree+1)^2
  int degree{0};
  OperatorTag tag{OperatorTag::LS};
  int n{0};
  double theta{0.0};

  double evaluate(const SpherePoint& p) const;
  Eigen::VectorXd evaluate(const PointSet& pts) const;
};

/// vdVP coefficient filter: 1 on degrees <= n-m, linear decay
/// (n+m-l+1)/(2m+1) on n-m < l <= n+m, 0 beyond.
Eigen::VectorXd filter_weights(int n, int m);

inline int vp_ray(int n, double theta) { return static_cast<int>(std::floor(theta * n)); }

/// Discrete least squares projection onto P_n.
Approximant ls_fit(const DiscreteOrthonormalBasis& basis, const Eigen::VectorXd& samples);

/// de la Vallee Poussin mean of least squares fits of degrees n-m..n+m,
/// m = floor(theta*n), computed as a blockwise coefficient filter on the
/// degree-(n+m) fit. basis.degree must equal n + m.
Approximant vp_mean_fit(const DiscreteOrthonormalBasis& basis, const Eigen::VectorXd& samples,
                        int n, double theta);

/// Hyperinterpolation: quadrature-discretized Fourier projection;
/// requires rule exactness >= 2n.
Approximant hyper_fit(const QuadratureRule& rule, const Eigen::VectorXd& samples, int n);

/// Filtered hyperinterpolation; requires rule exactness >= 4n.
Approximant filtered_hyper_fit(const QuadratureRule& rule, const Eigen::VectorXd& samples,
                               int n, double theta);

Approximant load_approximant(const std::string& path);
void save_approximant(const Approximant& a, const std::string& path);

}  // namespace sphls

#endif
