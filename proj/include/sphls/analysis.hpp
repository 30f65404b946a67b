#ifndef SPHLS_ANALYSIS_HPP
#define SPHLS_ANALYSIS_HPP

#include <functional>
#include <optional>

#include "sphls/approximation.hpp"
#include "sphls/test_functions.hpp"

namespace sphls {

/// Grid maximum of an operator's Lebesgue function; a lower bound of the
/// true operator norm, so the evaluation grid size is always recorded.
struct LebesgueReport {
  OperatorTag tag{OperatorTag::LS};
  int n{0};
  double theta{0.0};
  std::string pointset_label;
  std::size_t eval_count{0};
  double lebesgue_constant{0.0};
  SpherePoint argmax_point;
};

struct ErrorReport {
  OperatorTag tag{OperatorTag::LS};
  int n{0};
  double theta{0.0};
  double sup_error{0.0};
  double masked_sup_error{0.0};
  std::size_t eval_count{0};
};

/// Lebesgue function of the least squares projection at a single point:
/// sum_k |H_n(x, xi_k)|.
double lebesgue_function_ls(const DiscreteOrthonormalBasis& basis, const SpherePoint& x);

LebesgueReport lebesgue_ls(const DiscreteOrthonormalBasis& basis, const PointSet& eval);

/// vdVP mean of least squares; basis degree must be n + floor(theta*n).
LebesgueReport lebesgue_vp(const DiscreteOrthonormalBasis& basis, int n, double theta,
                           const PointSet& eval);

LebesgueReport lebesgue_hyper(const QuadratureRule& rule, int n, const PointSet& eval);

LebesgueReport lebesgue_fhyper(const QuadratureRule& rule, int n, double theta,
                               const PointSet& eval);

struct ErrorMask {
  SingularCircle circle;
  double radius{0.0};  // exclude x with |d(x, center) - circle.radius| < radius
};

ErrorReport sup_error(const Approximant& approx,
                      const std::function<double(const SpherePoint&)>& f,
                      const PointSet& eval,
                      const std::optional<ErrorMask>& mask = std::nullopt);

struct GrowthFit {
  double exponent{0.0};
  double prefactor{0.0};
};

/// Log-log least squares fit of a (n, constant) series.
GrowthFit growth_fit(const std::vector<std::pair<double, double>>& series);

}  // namespace sphls

#endif
