#ifndef SPHLS_QUADRATURE_HPP
#define SPHLS_QUADRATURE_HPP

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

#include "sphls/geometry.hpp"

namespace sphls {

/// Positive rule integrating P_mu exactly against the surface measure
/// (weights in steradians, summing to 4*pi).
struct QuadratureRule {
  PointSet pointset;
  Eigen::VectorXd weights;
  int exactness{0};    // verified degree mu
  double residual{0.0};  // max exactness defect over harmonics up to mu
};

class quadrature_error : public std::runtime_error {
 public:
  quadrature_error(std::string kind, std::string what)
      : std::runtime_error(std::move(what)), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

/// Minimum-norm solve of A^T lambda = b (A the design matrix to degree mu,
/// b = 2*sqrt(pi) in the constant slot, 0 elsewhere). Throws
/// "exactness-unachievable" when the residual exceeds tol, "not-positive"
/// when any weight is <= 0.
QuadratureRule solve_weights(const PointSet& ps, int mu,
                             double tol = 1e-10 * 12.566370614359172);

/// Max over flat k <= (mu+1)^2 of |sum_i w_i Y_k(xi_i) - integral(Y_k)|.
double verify_exactness(const QuadratureRule& rule, int mu);

/// Empirical Marcinkiewicz constant: max over random Q in P_n of
/// (1/n^2) sum_i |Q(xi_i)| divided by an estimate of the surface integral
/// of |Q| computed with the reference rule. An estimate, not a bound.
double marcinkiewicz_ratio(const PointSet& ps, int n, int trials,
                           const QuadratureRule& reference,
                           unsigned long long seed = 0);

struct HpDiagnostic {
  double delta_cover{0.0};   // smallest delta s.t. caps of radius delta/n cover eval
  int local_count_max{1};    // max_i |{ xi_j : d(xi_j, xi_i) <= delta/n }|
};

/// Covering/crowding diagnostic; reports, never gates.
HpDiagnostic hp_diagnostic(const PointSet& ps, int n, double delta,
                           const PointSet& eval);

QuadratureRule load_rule(const std::string& path);
void save_rule(const QuadratureRule& rule, const std::string& path);

}  // namespace sphls

#endif
