#include <filesystem>
#include <random>

#include "doctest.h"
#include "sphls/approximation.hpp"
#include "test_util.hpp"

using namespace sphls;
using sphls_test::random_point;

namespace {

Eigen::VectorXd random_coeffs(int degree, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd c(harmonic_count(degree));
  for (Eigen::Index i = 0; i < c.size(); ++i) c[i] = gauss(rng);
  return c;
}

Eigen::VectorXd poly_at(const Eigen::VectorXd& coeffs, int degree, const PointSet& pts) {
  return build_design_matrix(pts, degree).values * coeffs;
}

PointSet random_points(int count, std::mt19937_64& rng) {
  PointSet ps;
  for (int i = 0; i < count; ++i) ps.points.push_back(random_point(rng));
  return ps;
}

}  // namespace

TEST_CASE("basis columns are orthonormal and bounded at the nodes") {
  const int n = 10;
  const auto ps = generate_spiral((2 * n + 1) * (2 * n + 1));
  const auto basis = build_orthonormal_basis(ps, n);

  const Eigen::MatrixXd defect =
      basis.node_values.transpose() * basis.node_values -
      Eigen::MatrixXd::Identity(basis.node_values.cols(), basis.node_values.cols());
  CHECK(defect.cwiseAbs().maxCoeff() <= 1e-10);

  // sum_r I_r(xi_i)^2 <= 1 row by row
  for (Eigen::Index i = 0; i < basis.node_values.rows(); ++i)
    CHECK(basis.node_values.row(i).squaredNorm() <= 1.0 + 1e-10);
}

TEST_CASE("node-pair kernel bound |H_n| <= 1") {
  const int n = 6;
  const auto ps = generate_spiral((2 * n + 1) * (2 * n + 1));
  const auto basis = build_orthonormal_basis(ps, n);
  const Eigen::MatrixXd h = basis.node_values * basis.node_values.transpose();
  CHECK(h.cwiseAbs().maxCoeff() <= 1.0 + 1e-10);
}

TEST_CASE("discrete kernel is symmetric off the grid") {
  const int n = 5;
  const auto ps = generate_spiral(200);
  const auto basis = build_orthonormal_basis(ps, n);
  std::mt19937_64 rng(37);
  for (int t = 0; t < 30; ++t) {
    const auto x = random_point(rng), y = random_point(rng);
    const double hxy = basis.eval_at(x).dot(basis.eval_at(y));
    const double hyx = basis.eval_at(y).dot(basis.eval_at(x));
    CHECK(std::abs(hxy - hyx) <= 1e-10);
  }
}

TEST_CASE("too few points is a unisolvency error") {
  const int n = 4;
  const auto ps = generate_spiral(harmonic_count(n) - 1);
  CHECK_THROWS_AS(build_orthonormal_basis(ps, n), basis_error);
}

TEST_CASE("transform is degree-nested") {
  const int n = 8, r = 3;
  const auto ps = generate_spiral((n + 2) * (n + 2));
  const auto basis = build_orthonormal_basis(ps, n);
  std::mt19937_64 rng(41);
  Eigen::VectorXd low = Eigen::VectorXd::Zero(harmonic_count(n));
  low.head(harmonic_count(r)) = random_coeffs(r, rng);
  const Eigen::VectorXd values = build_design_matrix(ps, n).values * low;
  const Eigen::VectorXd i_coeffs = basis.node_values.transpose() * values;
  // a degree-r polynomial lives entirely in the first (r+1)^2 columns
  CHECK(i_coeffs.tail(i_coeffs.size() - harmonic_count(r)).cwiseAbs().maxCoeff() <=
        1e-10 * i_coeffs.cwiseAbs().maxCoeff());
}

TEST_CASE("least squares reproduces polynomials of its own degree") {
  const int n = 7;
  const auto ps = generate_spiral((2 * n + 1) * (2 * n + 1));
  const auto basis = build_orthonormal_basis(ps, n);
  std::mt19937_64 rng(43);
  const auto grid = random_points(200, rng);
  for (int t = 0; t < 5; ++t) {
    const Eigen::VectorXd c = random_coeffs(n, rng);
    const auto fit = ls_fit(basis, poly_at(c, n, ps));
    const Eigen::VectorXd truth = poly_at(c, n, grid);
    const Eigen::VectorXd approx = fit.evaluate(grid);
    CHECK((approx - truth).cwiseAbs().maxCoeff() <=
          1e-8 * truth.cwiseAbs().maxCoeff());
  }
}

TEST_CASE("least squares maps constants to constants") {
  const int n = 4;
  const auto ps = generate_spiral(60);
  const auto basis = build_orthonormal_basis(ps, n);
  const auto fit = ls_fit(basis, Eigen::VectorXd::Constant(60, 2.5));
  std::mt19937_64 rng(47);
  for (int t = 0; t < 20; ++t)
    CHECK(fit.evaluate(random_point(rng)) == doctest::Approx(2.5).epsilon(1e-10));
}

TEST_CASE("least squares residual matches a normal-equations oracle") {
  const int n = 5;
  const auto ps = generate_spiral(150);
  const auto basis = build_orthonormal_basis(ps, n);
  std::mt19937_64 rng(53);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd samples(150);
  for (Eigen::Index i = 0; i < samples.size(); ++i) samples[i] = gauss(rng);

  const auto fit = ls_fit(basis, samples);
  const double residual = (fit.evaluate(ps) - samples).norm();

  // independent dense normal-equations solve on the raw design matrix
  const Eigen::MatrixXd a = build_design_matrix(ps, n).values;
  const Eigen::VectorXd oracle_coeffs =
      (a.transpose() * a).ldlt().solve(a.transpose() * samples);
  const double oracle_residual = (a * oracle_coeffs - samples).norm();
  CHECK(residual == doctest::Approx(oracle_residual).epsilon(1e-8));
  CHECK((fit.harmonic_coeffs - oracle_coeffs).cwiseAbs().maxCoeff() <=
        1e-8 * oracle_coeffs.cwiseAbs().maxCoeff());
}

TEST_CASE("ls_fit rejects mismatched sample vectors") {
  const auto basis = build_orthonormal_basis(generate_spiral(60), 4);
  CHECK_THROWS_AS(ls_fit(basis, Eigen::VectorXd::Zero(59)), std::invalid_argument);
}

TEST_CASE("filter weights follow the blockwise vdVP profile") {
  const int n = 10, m = 4;
  const auto w = filter_weights(n, m);
  REQUIRE(w.size() == n + m + 1);
  for (int l = 0; l <= n - m; ++l) CHECK(w[l] == 1.0);
  for (int l = n - m + 1; l <= n + m; ++l) {
    CHECK(w[l] == doctest::Approx((n + m - l + 1.0) / (2.0 * m + 1.0)));
    CHECK(w[l] <= w[l - 1]);
  }
}

TEST_CASE("vp mean with theta = 0 is plain least squares") {
  const int n = 6;
  const auto ps = generate_spiral((2 * n + 1) * (2 * n + 1));
  const auto basis = build_orthonormal_basis(ps, n);
  std::mt19937_64 rng(59);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd samples(static_cast<Eigen::Index>(ps.size()));
  for (Eigen::Index i = 0; i < samples.size(); ++i) samples[i] = gauss(rng);

  const auto vp = vp_mean_fit(basis, samples, n, 0.0);
  const auto ls = ls_fit(basis, samples);
  CHECK((vp.harmonic_coeffs - ls.harmonic_coeffs).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("vp mean equals the explicit average of least squares fits") {
  const int n = 6;
  const double theta = 0.5;
  const int m = vp_ray(n, theta);
  const auto ps = generate_spiral(2 * (n + m + 1) * (n + m + 1));
  const auto basis = build_orthonormal_basis(ps, n + m);
  std::mt19937_64 rng(61);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd samples(static_cast<Eigen::Index>(ps.size()));
  for (Eigen::Index i = 0; i < samples.size(); ++i) samples[i] = gauss(rng);

  const auto vp = vp_mean_fit(basis, samples, n, theta);

  const auto grid = random_points(200, rng);
  Eigen::VectorXd average = Eigen::VectorXd::Zero(200);
  for (int r = n - m; r <= n + m; ++r) {
    const auto basis_r = build_orthonormal_basis(ps, r);
    average += ls_fit(basis_r, samples).evaluate(grid);
  }
  average /= 2.0 * m + 1.0;

  CHECK((vp.evaluate(grid) - average).cwiseAbs().maxCoeff() <=
        1e-10 * samples.cwiseAbs().maxCoeff());
}

TEST_CASE("vp mean reproduces polynomials of degree n - m") {
  const int n = 8;
  const double theta = 0.5;
  const int m = vp_ray(n, theta);
  const auto ps = generate_spiral(2 * (n + m + 1) * (n + m + 1));
  const auto basis = build_orthonormal_basis(ps, n + m);
  std::mt19937_64 rng(67);
  const Eigen::VectorXd c = random_coeffs(n - m, rng);
  const auto fit = vp_mean_fit(basis, poly_at(c, n - m, ps), n, theta);
  const auto grid = random_points(200, rng);
  const Eigen::VectorXd truth = poly_at(c, n - m, grid);
  CHECK((fit.evaluate(grid) - truth).cwiseAbs().maxCoeff() <=
        1e-8 * truth.cwiseAbs().maxCoeff());
}

TEST_CASE("hyperinterpolation reproduces polynomials and constants") {
  const int n = 5;
  const auto ps = generate_spiral(2 * (2 * n + 1) * (2 * n + 1));
  const auto rule = solve_weights(ps, 2 * n);
  std::mt19937_64 rng(71);
  const Eigen::VectorXd c = random_coeffs(n, rng);
  const auto fit = hyper_fit(rule, poly_at(c, n, ps), n);
  const auto grid = random_points(100, rng);
  const Eigen::VectorXd truth = poly_at(c, n, grid);
  CHECK((fit.evaluate(grid) - truth).cwiseAbs().maxCoeff() <=
        1e-8 * truth.cwiseAbs().maxCoeff());

  const auto constant =
      hyper_fit(rule, Eigen::VectorXd::Constant(rule.weights.size(), -1.25), n);
  CHECK(constant.evaluate(random_point(rng)) == doctest::Approx(-1.25).epsilon(1e-10));
}

TEST_CASE("hyperinterpolation agrees with its kernel form") {
  const int n = 5;
  const auto ps = generate_spiral(2 * (2 * n + 1) * (2 * n + 1));
  const auto rule = solve_weights(ps, 2 * n);
  std::mt19937_64 rng(73);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd samples(static_cast<Eigen::Index>(ps.size()));
  for (Eigen::Index i = 0; i < samples.size(); ++i) samples[i] = gauss(rng);

  const auto fit = hyper_fit(rule, samples, n);
  for (int t = 0; t < 100; ++t) {
    const auto x = random_point(rng);
    double kernel_sum = 0.0;
    for (std::size_t i = 0; i < ps.size(); ++i)
      kernel_sum += rule.weights[static_cast<Eigen::Index>(i)] *
                    samples[static_cast<Eigen::Index>(i)] *
                    darboux_kernel(n, ps[i].dot(x));
    kernel_sum /= 2.0 * M_PI;
    CHECK(std::abs(fit.evaluate(x) - kernel_sum) <= 1e-9);
  }
}

TEST_CASE("hyperinterpolation refuses rules of insufficient exactness") {
  const auto ps = generate_spiral(242);
  const auto rule = solve_weights(ps, 10);
  try {
    hyper_fit(rule, Eigen::VectorXd::Zero(121), 6);
    FAIL("expected insufficient-exactness");
  } catch (const quadrature_error& e) {
    CHECK(e.kind() == "insufficient-exactness");
  }
}

TEST_CASE("filtered hyperinterpolation") {
  const int n = 4;
  const double theta = 0.5;
  const int m = vp_ray(n, theta);
  const auto ps = generate_spiral(2 * (4 * n + 1) * (4 * n + 1));
  const auto rule = solve_weights(ps, 4 * n);
  std::mt19937_64 rng(79);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd samples(static_cast<Eigen::Index>(ps.size()));
  for (Eigen::Index i = 0; i < samples.size(); ++i) samples[i] = gauss(rng);

  SUBCASE("theta = 0 equals hyperinterpolation") {
    const auto filtered = filtered_hyper_fit(rule, samples, n, 0.0);
    const auto plain = hyper_fit(rule, samples, n);
    CHECK((filtered.harmonic_coeffs - plain.harmonic_coeffs).cwiseAbs().maxCoeff() <= 1e-12);
  }

  SUBCASE("reproduces polynomials of degree n - m") {
    const Eigen::VectorXd c = random_coeffs(n - m, rng);
    const auto fit = filtered_hyper_fit(rule, poly_at(c, n - m, ps), n, theta);
    const auto grid = random_points(100, rng);
    const Eigen::VectorXd truth = poly_at(c, n - m, grid);
    CHECK((fit.evaluate(grid) - truth).cwiseAbs().maxCoeff() <=
          1e-8 * truth.cwiseAbs().maxCoeff());
  }

  SUBCASE("agrees with the direct kernel sum") {
    const auto fit = filtered_hyper_fit(rule, samples, n, theta);
    for (int t = 0; t < 100; ++t) {
      const auto x = random_point(rng);
      double kernel_sum = 0.0;
      for (std::size_t i = 0; i < ps.size(); ++i)
        kernel_sum += rule.weights[static_cast<Eigen::Index>(i)] *
                      samples[static_cast<Eigen::Index>(i)] *
                      vdvp_kernel(n, m, ps[i].dot(x));
      kernel_sum /= 2.0 * M_PI;
      CHECK(std::abs(fit.evaluate(x) - kernel_sum) <= 1e-9);
    }
  }

  SUBCASE("insufficient exactness is refused") {
    CHECK_THROWS_AS(filtered_hyper_fit(rule, samples, n + 1, theta), quadrature_error);
  }
}

TEST_CASE("evaluation is interpolatory on a full-rank square system") {
  const int n = 4;
  std::mt19937_64 rng(83);
  const auto ps = generate_spiral(harmonic_count(n));
  const auto basis = build_orthonormal_basis(ps, n);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd samples(static_cast<Eigen::Index>(ps.size()));
  for (Eigen::Index i = 0; i < samples.size(); ++i) samples[i] = gauss(rng);
  const auto fit = ls_fit(basis, samples);
  CHECK((fit.evaluate(ps) - samples).cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("fitting is linear") {
  const int n = 5;
  const auto ps = generate_spiral(150);
  const auto basis = build_orthonormal_basis(ps, n);
  std::mt19937_64 rng(89);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd f(150), g(150);
  for (Eigen::Index i = 0; i < 150; ++i) {
    f[i] = gauss(rng);
    g[i] = gauss(rng);
  }
  const double a = 1.75, b = -0.4;
  const auto combined = ls_fit(basis, a * f + b * g);
  const auto ff = ls_fit(basis, f);
  const auto gg = ls_fit(basis, g);
  const auto grid = random_points(50, rng);
  const Eigen::VectorXd lhs = combined.evaluate(grid);
  const Eigen::VectorXd rhs = a * ff.evaluate(grid) + b * gg.evaluate(grid);
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-10 * lhs.cwiseAbs().maxCoeff());
}

TEST_CASE("approximant files round trip") {
  const int n = 3;
  const auto ps = generate_spiral(40);
  const auto basis = build_orthonormal_basis(ps, n);
  std::mt19937_64 rng(97);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd samples(40);
  for (Eigen::Index i = 0; i < 40; ++i) samples[i] = gauss(rng);
  const auto fit = vp_mean_fit(build_orthonormal_basis(ps, n + 1), samples, n, 0.4);

  const auto path = std::filesystem::temp_directory_path() / "sphls_approx.txt";
  save_approximant(fit, path.string());
  const auto back = load_approximant(path.string());
  CHECK(back.tag == fit.tag);
  CHECK(back.degree == fit.degree);
  CHECK(back.n == fit.n);
  CHECK(back.theta == fit.theta);
  CHECK((back.harmonic_coeffs - fit.harmonic_coeffs).cwiseAbs().maxCoeff() == 0.0);
  std::filesystem::remove(path);
}
