#include "sphls/approximation.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace sphls {

namespace {
std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int flat_degree(Eigen::Index k) {
  return static_cast<int>(std::sqrt(static_cast<double>(k) + 0.5));
}
}  // namespace

std::string to_string(OperatorTag tag) {
  switch (tag) {
    case OperatorTag::LS: return "LS";
    case OperatorTag::VP_LS: return "VP_LS";
    case OperatorTag::HYPER: return "HYPER";
    case OperatorTag::FHYPER: return "FHYPER";
  }
  return "?";
}

OperatorTag operator_tag_from_string(const std::string& s) {
  if (s == "LS") return OperatorTag::LS;
  if (s == "VP_LS") return OperatorTag::VP_LS;
  if (s == "HYPER") return OperatorTag::HYPER;
  if (s == "FHYPER") return OperatorTag::FHYPER;
  throw std::invalid_argument("unknown operator tag: " + s);
}

DiscreteOrthonormalBasis build_orthonormal_basis(const PointSet& ps, int degree,
                                                 double rank_tol) {
  const Eigen::Index m = harmonic_count(degree);
  if (static_cast<Eigen::Index>(ps.size()) < m)
    throw basis_error("points-not-unisolvent: " + std::to_string(ps.size()) +
                      " nodes cannot carry the " + std::to_string(m) +
                      "-dimensional space of degree " + std::to_string(degree));
  DesignMatrix dm = build_design_matrix(ps, degree);

  // Non-pivoted QR keeps the triangular factor degree-nested.
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(dm.values);
  DiscreteOrthonormalBasis basis;
  basis.degree = degree;
  basis.pointset = ps;
  basis.node_values = qr.householderQ() * Eigen::MatrixXd::Identity(dm.values.rows(), m);
  basis.r_factor = qr.matrixQR().topRows(m).triangularView<Eigen::Upper>();

  // Fix signs so the diagonal of R is positive (determinism).
  for (Eigen::Index k = 0; k < m; ++k) {
    if (basis.r_factor(k, k) < 0.0) {
      basis.r_factor.row(k) = -basis.r_factor.row(k);
      basis.node_values.col(k) = -basis.node_values.col(k);
    }
  }

  const double diag_max = basis.r_factor.diagonal().cwiseAbs().maxCoeff();
  for (Eigen::Index k = 0; k < m; ++k) {
    if (std::abs(basis.r_factor(k, k)) < rank_tol * diag_max)
      throw basis_error("points-not-unisolvent: rank deficiency in degree block " +
                        std::to_string(flat_degree(k)));
  }
  return basis;
}

Eigen::VectorXd DiscreteOrthonormalBasis::eval_at(const SpherePoint& p) const {
  const Eigen::VectorXd y = eval_harmonics(p, degree);
  return r_factor.transpose().triangularView<Eigen::Lower>().solve(y);
}

Eigen::MatrixXd DiscreteOrthonormalBasis::eval_at(const PointSet& pts) const {
  DesignMatrix dm = build_design_matrix(pts, degree);
  // rows I(x)^T = Y(x)^T R^{-1}
  r_factor.triangularView<Eigen::Upper>().solveInPlace<Eigen::OnTheRight>(dm.values);
  return std::move(dm.values);
}

Eigen::VectorXd DiscreteOrthonormalBasis::to_harmonic(const Eigen::VectorXd& coeffs) const {
  return r_factor.triangularView<Eigen::Upper>().solve(coeffs);
}

double Approximant::evaluate(const SpherePoint& p) const {
  return harmonic_coeffs.dot(eval_harmonics(p, degree));
}

Eigen::VectorXd Approximant::evaluate(const PointSet& pts) const {
  Eigen::VectorXd out(static_cast<Eigen::Index>(pts.size()));
  for (std::size_t j = 0; j < pts.size(); ++j)
    out[static_cast<Eigen::Index>(j)] = evaluate(pts[j]);
  return out;
}

Eigen::VectorXd filter_weights(int n, int m) {
  Eigen::VectorXd w(n + m + 1);
  for (int l = 0; l <= n + m; ++l) {
    if (l <= n - m)
      w[l] = 1.0;
    else
      w[l] = static_cast<double>(n + m - l + 1) / (2.0 * m + 1.0);
  }
  return w;
}

Approximant ls_fit(const DiscreteOrthonormalBasis& basis, const Eigen::VectorXd& samples) {
  if (samples.size() != basis.node_values.rows())
    throw std::invalid_argument("ls_fit: sample count does not match node count");
  Approximant a;
  a.tag = OperatorTag::LS;
  a.degree = basis.degree;
  a.n = basis.degree;
  a.harmonic_coeffs = basis.to_harmonic(basis.node_values.transpose() * samples);
  return a;
}

Approximant vp_mean_fit(const DiscreteOrthonormalBasis& basis, const Eigen::VectorXd& samples,
                        int n, double theta) {
  if (theta < 0.0 || theta > 1.0)
    throw std::invalid_argument("vp_mean_fit: theta must lie in [0,1]");
  const int m = vp_ray(n, theta);
  if (basis.degree != n + m)
    throw std::invalid_argument("vp_mean_fit: basis degree must be n + floor(theta*n)");
  if (samples.size() != basis.node_values.rows())
    throw std::invalid_argument("vp_mean_fit: sample count does not match node count");

  Eigen::VectorXd coeffs = basis.node_values.transpose() * samples;
  const Eigen::VectorXd w = filter_weights(n, m);
  for (Eigen::Index k = 0; k < coeffs.size(); ++k) coeffs[k] *= w[flat_degree(k)];

  Approximant a;
  a.tag = OperatorTag::VP_LS;
  a.degree = n + m;
  a.n = n;
  a.theta = theta;
  a.harmonic_coeffs = basis.to_harmonic(coeffs);
  return a;
}

Approximant hyper_fit(const QuadratureRule& rule, const Eigen::VectorXd& samples, int n) {
  if (rule.exactness < 2 * n)
    throw quadrature_error("insufficient-exactness",
                           "hyperinterpolation of degree " + std::to_string(n) +
                           " needs exactness >= " + std::to_string(2 * n) + ", rule has " +
                           std::to_string(rule.exactness));
  if (samples.size() != rule.weights.size())
    throw std::invalid_argument("hyper_fit: sample count does not match node count");
  const DesignMatrix dm = build_design_matrix(rule.pointset, n);
  Approximant a;
  a.tag = OperatorTag::HYPER;
  a.degree = n;
  a.n = n;
  a.harmonic_coeffs = dm.values.transpose() * (rule.weights.cwiseProduct(samples));
  return a;
}

Approximant filtered_hyper_fit(const QuadratureRule& rule, const Eigen::VectorXd& samples,
                               int n, double theta) {
  if (theta < 0.0 || theta > 1.0)
    throw std::invalid_argument("filtered_hyper_fit: theta must lie in [0,1]");
  if (rule.exactness < 4 * n)
    throw quadrature_error("insufficient-exactness",
                           "filtered hyperinterpolation of degree " + std::to_string(n) +
                           " needs exactness >= " + std::to_string(4 * n) + ", rule has " +
                           std::to_string(rule.exactness));
  if (samples.size() != rule.weights.size())
    throw std::invalid_argument("filtered_hyper_fit: sample count does not match node count");
  const int m = vp_ray(n, theta);
  const DesignMatrix dm = build_design_matrix(rule.pointset, n + m);
  Eigen::VectorXd coeffs = dm.values.transpose() * (rule.weights.cwiseProduct(samples));
  const Eigen::VectorXd w = filter_weights(n, m);
  for (Eigen::Index k = 0; k < coeffs.size(); ++k) coeffs[k] *= w[flat_degree(k)];
  Approximant a;
  a.tag = OperatorTag::FHYPER;
  a.degree = n + m;
  a.n = n;
  a.theta = theta;
  a.harmonic_coeffs = coeffs;
  return a;
}

Approximant load_approximant(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open approximant file: " + path);
  Approximant a;
  std::vector<double> coeffs;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream ss(line.substr(1));
      std::string token;
      while (ss >> token) {
        auto eq = token.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = token.substr(0, eq);
        const std::string val = token.substr(eq + 1);
        if (key == "operator") a.tag = operator_tag_from_string(val);
        else if (key == "degree") a.degree = std::stoi(val);
        else if (key == "n") a.n = std::stoi(val);
        else if (key == "theta") a.theta = std::stod(val);
      }
      have_header = true;
      continue;
    }
    coeffs.push_back(std::stod(line));
  }
  if (!have_header) throw parse_error(path + ": missing header");
  if (static_cast<int>(coeffs.size()) != harmonic_count(a.degree))
    throw parse_error(path + ": coefficient count does not match degree");
  a.harmonic_coeffs =
      Eigen::Map<Eigen::VectorXd>(coeffs.data(), static_cast<Eigen::Index>(coeffs.size()));
  return a;
}

void save_approximant(const Approximant& a, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write approximant file: " + path);
  out << "# operator=" << to_string(a.tag) << " degree=" << a.degree << " n=" << a.n
      << " theta=" << fmt17(a.theta) << "\n";
  for (Eigen::Index k = 0; k < a.harmonic_coeffs.size(); ++k)
    out << fmt17(a.harmonic_coeffs[k]) << "\n";
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace sphls
