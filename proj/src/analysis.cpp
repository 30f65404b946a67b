#include "sphls/analysis.hpp"

#include <cmath>

namespace sphls {

namespace {

int flat_degree(Eigen::Index k) {
  return static_cast<int>(std::sqrt(static_cast<double>(k) + 0.5));
}

// Grid maximum of x -> sum_k node_weights[k] * |(row(x) . rows_at_nodes[k])|,
// scanned in chunks to bound memory. Deterministic argmax: first index wins.
LebesgueReport scan_kernel_sums(const PointSet& eval,
                                const std::function<Eigen::MatrixXd(const PointSet&)>& eval_rows,
                                const Eigen::MatrixXd& node_rows,
                                const Eigen::VectorXd& node_weights) {
  constexpr std::size_t kChunk = 512;
  LebesgueReport rep;
  rep.eval_count = eval.size();
  double best = -1.0;
  std::size_t best_idx = 0;
  for (std::size_t begin = 0; begin < eval.size(); begin += kChunk) {
    const std::size_t len = std::min(kChunk, eval.size() - begin);
    PointSet chunk;
    chunk.points.assign(eval.points.begin() + static_cast<std::ptrdiff_t>(begin),
                        eval.points.begin() + static_cast<std::ptrdiff_t>(begin + len));
    const Eigen::MatrixXd rows = eval_rows(chunk);
    const Eigen::VectorXd sums = (rows * node_rows.transpose()).cwiseAbs() * node_weights;
    for (Eigen::Index i = 0; i < sums.size(); ++i) {
      if (sums[i] > best) {
        best = sums[i];
        best_idx = begin + static_cast<std::size_t>(i);
      }
    }
  }
  rep.lebesgue_constant = best;
  rep.argmax_point = eval[best_idx];
  return rep;
}

Eigen::MatrixXd scaled_design(const PointSet& pts, int degree, const Eigen::VectorXd& w_deg) {
  Eigen::MatrixXd rows = build_design_matrix(pts, degree).values;
  for (Eigen::Index k = 0; k < rows.cols(); ++k) rows.col(k) *= w_deg[flat_degree(k)];
  return rows;
}

}  // namespace

double lebesgue_function_ls(const DiscreteOrthonormalBasis& basis, const SpherePoint& x) {
  return (basis.node_values * basis.eval_at(x)).cwiseAbs().sum();
}

LebesgueReport lebesgue_ls(const DiscreteOrthonormalBasis& basis, const PointSet& eval) {
  auto rows_fn = [&](const PointSet& pts) { return basis.eval_at(pts); };
  LebesgueReport rep = scan_kernel_sums(
      eval, rows_fn, basis.node_values,
      Eigen::VectorXd::Ones(basis.node_values.rows()));
  rep.tag = OperatorTag::LS;
  rep.n = basis.degree;
  rep.pointset_label = basis.pointset.label;
  return rep;
}

LebesgueReport lebesgue_vp(const DiscreteOrthonormalBasis& basis, int n, double theta,
                           const PointSet& eval) {
  const int m = vp_ray(n, theta);
  if (basis.degree != n + m)
    throw std::invalid_argument("lebesgue_vp: basis degree must be n + floor(theta*n)");
  const Eigen::VectorXd w = filter_weights(n, m);
  // Filtered kernel sum_k w_deg(k) I_k(x) I_k(xi); filter on the eval side.
  auto rows_fn = [&](const PointSet& pts) {
    Eigen::MatrixXd rows = basis.eval_at(pts);
    for (Eigen::Index k = 0; k < rows.cols(); ++k) rows.col(k) *= w[flat_degree(k)];
    return rows;
  };
  LebesgueReport rep = scan_kernel_sums(
      eval, rows_fn, basis.node_values,
      Eigen::VectorXd::Ones(basis.node_values.rows()));
  rep.tag = OperatorTag::VP_LS;
  rep.n = n;
  rep.theta = theta;
  rep.pointset_label = basis.pointset.label;
  return rep;
}

LebesgueReport lebesgue_hyper(const QuadratureRule& rule, int n, const PointSet& eval) {
  if (rule.exactness < 2 * n)
    throw quadrature_error("insufficient-exactness",
                           "lebesgue_hyper needs rule exactness >= 2n");
  // K_n(x.xi)/(2pi) = sum_k Y_k(x) Y_k(xi)
  const Eigen::MatrixXd node_rows = build_design_matrix(rule.pointset, n).values;
  auto rows_fn = [&](const PointSet& pts) { return build_design_matrix(pts, n).values; };
  LebesgueReport rep = scan_kernel_sums(eval, rows_fn, node_rows, rule.weights);
  rep.tag = OperatorTag::HYPER;
  rep.n = n;
  rep.pointset_label = rule.pointset.label;
  return rep;
}

LebesgueReport lebesgue_fhyper(const QuadratureRule& rule, int n, double theta,
                               const PointSet& eval) {
  if (rule.exactness < 4 * n)
    throw quadrature_error("insufficient-exactness",
                           "lebesgue_fhyper needs rule exactness >= 4n");
  const int m = vp_ray(n, theta);
  const Eigen::VectorXd w = filter_weights(n, m);
  const Eigen::MatrixXd node_rows = build_design_matrix(rule.pointset, n + m).values;
  auto rows_fn = [&](const PointSet& pts) { return scaled_design(pts, n + m, w); };
  LebesgueReport rep = scan_kernel_sums(eval, rows_fn, node_rows, rule.weights);
  rep.tag = OperatorTag::FHYPER;
  rep.n = n;
  rep.theta = theta;
  rep.pointset_label = rule.pointset.label;
  return rep;
}

ErrorReport sup_error(const Approximant& approx,
                      const std::function<double(const SpherePoint&)>& f,
                      const PointSet& eval,
                      const std::optional<ErrorMask>& mask) {
  ErrorReport rep;
  rep.tag = approx.tag;
  rep.n = approx.n;
  rep.theta = approx.theta;
  rep.eval_count = eval.size();
  for (const auto& x : eval.points) {
    const double err = std::abs(f(x) - approx.evaluate(x));
    rep.sup_error = std::max(rep.sup_error, err);
    bool masked = false;
    if (mask) {
      const double d = geodesic_distance(mask->circle.center, x);
      masked = std::abs(d - mask->circle.radius) < mask->radius;
    }
    if (!masked) rep.masked_sup_error = std::max(rep.masked_sup_error, err);
  }
  return rep;
}

GrowthFit growth_fit(const std::vector<std::pair<double, double>>& series) {
  if (series.size() < 3)
    throw std::invalid_argument("growth_fit: need at least 3 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [n, c] : series) {
    if (!(n > 0.0) || !(c > 0.0))
      throw std::invalid_argument("growth_fit: entries must be positive");
    const double lx = std::log(n), ly = std::log(c);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double k = static_cast<double>(series.size());
  GrowthFit fit;
  fit.exponent = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  fit.prefactor = std::exp((sy - fit.exponent * sx) / k);
  return fit;
}

}  // namespace sphls
