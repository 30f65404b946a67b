#include "sphls/quadrature.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "sphls/harmonics.hpp"

namespace sphls {

namespace {
constexpr double kFourPi = 12.566370614359172953850573533118;
constexpr double kTwoSqrtPi = 3.5449077018110320545963349666823;  // integral of Y_1

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void check_necessary_conditions(const QuadratureRule& rule) {
  // Necessary cardinality condition for exactness 2n with positive weights.
  if (rule.exactness >= 2 && rule.exactness % 2 == 0) {
    const long n = rule.exactness / 2;
    const long dim = (n + 1) * (n + 1);
    if (static_cast<long>(rule.pointset.size()) <= dim)
      throw quadrature_error("necessary-condition",
                             "positive rule of exactness " + std::to_string(rule.exactness) +
                             " requires more than " + std::to_string(dim) + " nodes, got " +
                             std::to_string(rule.pointset.size()));
  }
}
}  // namespace

QuadratureRule solve_weights(const PointSet& ps, int mu, double tol) {
  if (mu < 0) throw std::invalid_argument("solve_weights: negative exactness");
  const DesignMatrix dm = build_design_matrix(ps, mu);
  const Eigen::Index m = dm.values.cols();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(m);
  b[0] = kTwoSqrtPi;

  Eigen::MatrixXd at = dm.values.transpose();
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(at);
  QuadratureRule rule;
  rule.pointset = ps;
  rule.weights = cod.solve(b);
  rule.residual = (at * rule.weights - b).cwiseAbs().maxCoeff();
  rule.exactness = mu;

  if (rule.residual > tol)
    throw quadrature_error("exactness-unachievable",
                           "exactness " + std::to_string(mu) + " unachievable on " +
                           std::to_string(ps.size()) + " nodes, residual " + fmt17(rule.residual));
  Eigen::Index worst;
  const double min_w = rule.weights.minCoeff(&worst);
  if (min_w <= 0.0)
    throw quadrature_error("not-positive",
                           "weight " + std::to_string(worst) + " is " + fmt17(min_w));
  check_necessary_conditions(rule);
  return rule;
}

double verify_exactness(const QuadratureRule& rule, int mu) {
  const DesignMatrix dm = build_design_matrix(rule.pointset, mu);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(dm.values.cols());
  b[0] = kTwoSqrtPi;
  return (dm.values.transpose() * rule.weights - b).cwiseAbs().maxCoeff();
}

double marcinkiewicz_ratio(const PointSet& ps, int n, int trials,
                           const QuadratureRule& reference,
                           unsigned long long seed) {
  if (trials <= 0) {
    std::fprintf(stderr, "warning: marcinkiewicz_ratio with no trials, returning 0\n");
    return 0.0;
  }
  const DesignMatrix at_nodes = build_design_matrix(ps, n);
  const DesignMatrix at_ref = build_design_matrix(reference.pointset, n);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(at_nodes.values.cols());
    if (t == 0) {
      c[0] = 1.0;  // constant polynomial first, deterministic baseline
    } else {
      for (Eigen::Index i = 0; i < c.size(); ++i) c[i] = gauss(rng);
      c /= c.norm();
    }
    const double discrete =
        (at_nodes.values * c).cwiseAbs().sum() / (static_cast<double>(n) * n);
    // |Q| is not a polynomial; the reference rule gives an estimate only.
    const double integral =
        reference.weights.dot((at_ref.values * c).cwiseAbs());
    if (integral > 0.0) worst = std::max(worst, discrete / integral);
  }
  return worst;
}

HpDiagnostic hp_diagnostic(const PointSet& ps, int n, double delta,
                           const PointSet& eval) {
  if (delta <= 0.0) throw std::invalid_argument("hp_diagnostic: delta must be > 0");
  if (n < 1) throw std::invalid_argument("hp_diagnostic: n must be >= 1");
  HpDiagnostic d;
  d.delta_cover = n * mesh_norm(ps, eval);
  const double radius = delta / n;
  int max_count = 0;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    int count = 0;
    for (std::size_t j = 0; j < ps.size(); ++j)
      if (geodesic_distance(ps[i], ps[j]) <= radius) ++count;
    max_count = std::max(max_count, count);
  }
  d.local_count_max = max_count;
  return d;
}

QuadratureRule load_rule(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open weights file: " + path);
  QuadratureRule rule;
  rule.pointset.label = path;
  std::vector<double> w;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream ss(line.substr(1));
      std::string key;
      if (std::getline(ss, key, '=')) {
        key.erase(remove_if(key.begin(), key.end(), ::isspace), key.end());
        std::string val;
        std::getline(ss, val);
        if (key == "exactness") rule.exactness = std::stoi(val);
        if (key == "residual") rule.residual = std::stod(val);
      }
      continue;
    }
    std::istringstream ss(line);
    double x, y, z, wi;
    if (!(ss >> x >> y >> z >> wi))
      throw parse_error(path + ":" + std::to_string(lineno) + ": malformed weight line");
    rule.pointset.points.emplace_back(x, y, z);
    w.push_back(wi);
  }
  if (w.empty()) throw parse_error(path + ": no rows");
  rule.weights = Eigen::Map<Eigen::VectorXd>(w.data(), static_cast<Eigen::Index>(w.size()));
  return rule;
}

void save_rule(const QuadratureRule& rule, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write weights file: " + path);
  out << "# exactness=" << rule.exactness << "\n";
  out << "# residual=" << fmt17(rule.residual) << "\n";
  out << "# sum=" << fmt17(rule.weights.sum()) << "\n";
  for (std::size_t i = 0; i < rule.pointset.size(); ++i) {
    const auto& p = rule.pointset[i];
    out << fmt17(p.x) << ' ' << fmt17(p.y) << ' ' << fmt17(p.z) << ' '
        << fmt17(rule.weights[static_cast<Eigen::Index>(i)]) << "\n";
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace sphls
