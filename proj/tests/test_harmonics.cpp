#include <random>

#include "doctest.h"
#include "sphls/harmonics.hpp"
#include "sphls/quadrature.hpp"
#include "test_util.hpp"

using namespace sphls;
using sphls_test::Gauss1D;
using sphls_test::random_point;

namespace {
constexpr double kFourPi = 12.566370614359172953850573533118;

Eigen::Matrix3d random_rotation(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::Matrix3d m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = gauss(rng);
  const Eigen::HouseholderQR<Eigen::Matrix3d> qr(m);
  Eigen::Matrix3d q = qr.householderQ();
  if (q.determinant() < 0) q.col(0) = -q.col(0);
  return q;
}

SpherePoint rotate(const Eigen::Matrix3d& r, const SpherePoint& p) {
  const Eigen::Vector3d v = r * Eigen::Vector3d(p.x, p.y, p.z);
  return SpherePoint(v.x(), v.y(), v.z());
}
}  // namespace

TEST_CASE("flat index layout") {
  CHECK(HarmonicIndex{0, 0}.flat0() == 0);
  CHECK(HarmonicIndex{1, -1}.flat0() == 1);
  CHECK(HarmonicIndex{1, 1}.flat0() == 3);
  for (int k = 0; k < 400; ++k) {
    const auto idx = HarmonicIndex::from_flat0(k);
    CHECK(idx.flat0() == k);
    CHECK(std::abs(idx.m) <= idx.ell);
  }
}

TEST_CASE("constant harmonic normalization") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 10; ++t) {
    const auto y = eval_harmonics(random_point(rng), 3);
    CHECK(y[0] == doctest::Approx(0.2820947917738781).epsilon(1e-14));
  }
}

TEST_CASE("sum of squares equals (n+1)^2/(4 pi)") {
  std::mt19937_64 rng(13);
  const int n = 7;
  for (int t = 0; t < 20; ++t) {
    const auto y = eval_harmonics(random_point(rng), n);
    const double expected = (n + 1.0) * (n + 1.0) / kFourPi;
    CHECK(y.squaredNorm() == doctest::Approx(expected).epsilon(1e-12));
    // cross-check against K_n(1)/(2 pi)
    CHECK(y.squaredNorm() ==
          doctest::Approx(darboux_kernel(n, 1.0) / (kFourPi / 2.0)).epsilon(1e-12));
  }
}

TEST_CASE("orthonormality through a verified exactness-2n rule") {
  const int n = 5;
  // double the dimension of P_2n: square systems on the spiral lack
  // positive solutions
  const auto ps = generate_spiral(2 * (2 * n + 1) * (2 * n + 1));
  const auto rule = solve_weights(ps, 2 * n);
  const auto dm = build_design_matrix(ps, n);
  const Eigen::MatrixXd gram =
      dm.values.transpose() * rule.weights.asDiagonal() * dm.values;
  const Eigen::MatrixXd defect =
      gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols());
  CHECK(defect.cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("jacobi P_n^{(1,0)} normalization and oracle") {
  for (int n = 0; n <= 50; ++n)
    CHECK(jacobi_p10(n, 1.0) == doctest::Approx(n + 1.0).epsilon(1e-12));

  for (double t : {-1.0, -0.4, 0.0, 0.7, 1.0})
    CHECK(jacobi_p10(0, t) == doctest::Approx(1.0));

  CHECK(jacobi_p10(5, 0.3) ==
        doctest::Approx(sphls_test::jacobi_p10_oracle(5, 0.3)).epsilon(1e-12));

  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int t = 0; t < 50; ++t) {
    const int n = static_cast<int>(rng() % 20);
    const double x = unif(rng);
    const double expected = sphls_test::jacobi_p10_oracle(n, x);
    CHECK(jacobi_p10(n, x) == doctest::Approx(expected).epsilon(1e-11));
  }
}

TEST_CASE("Darboux kernel value at 1 and unit integral") {
  const Gauss1D gauss(80);
  for (int n : {0, 1, 3, 10, 25, 60}) {
    CHECK(darboux_kernel(n, 1.0) ==
          doctest::Approx((n + 1.0) * (n + 1.0) / 2.0).epsilon(1e-12));
    const double integral = gauss.integrate([n](double t) { return darboux_kernel(n, t); });
    CHECK(integral == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("Darboux kernel maximum sits at t = 1") {
  for (int n : {3, 10, 25}) {
    const double peak = darboux_kernel(n, 1.0);
    for (int i = 0; i < 10000; ++i) {
      const double t = -1.0 + 2.0 * i / 9999.0;
      CHECK(std::abs(darboux_kernel(n, t)) <= peak + 1e-9);
    }
  }
}

TEST_CASE("vdVP kernel") {
  CHECK_THROWS_AS(vdvp_kernel(3, 4, 0.5), std::invalid_argument);

  for (double t : {-0.8, 0.1, 0.99})
    CHECK(vdvp_kernel(12, 0, t) == doctest::Approx(darboux_kernel(12, t)).epsilon(1e-13));

  // (1/21) sum_{r=10..30} (r+1)^2/2 at t = 1
  double expected = 0.0;
  for (int r = 10; r <= 30; ++r) expected += (r + 1.0) * (r + 1.0) / 2.0;
  expected /= 21.0;
  CHECK(vdvp_kernel(20, 10, 1.0) == doctest::Approx(expected).epsilon(1e-12));

  const Gauss1D gauss(80);
  const double integral = gauss.integrate([](double t) { return vdvp_kernel(15, 7, t); });
  CHECK(integral == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("addition formula links harmonics and the Darboux kernel") {
  std::mt19937_64 rng(19);
  for (int n : {1, 5, 12, 30}) {
    const double scale = darboux_kernel(n, 1.0);
    for (int t = 0; t < 20; ++t) {
      const auto x = random_point(rng), y = random_point(rng);
      const double lhs = eval_harmonics(x, n).dot(eval_harmonics(y, n));
      const double rhs = darboux_kernel(n, x.dot(y)) / (2.0 * M_PI);
      CHECK(std::abs(lhs - rhs) <= 1e-9 * scale / (2.0 * M_PI));
    }
  }
}

TEST_CASE("degree-block sums are rotationally invariant") {
  std::mt19937_64 rng(23);
  const int n = 8;
  for (int t = 0; t < 20; ++t) {
    const auto x = random_point(rng), y = random_point(rng);
    const auto r = random_rotation(rng);
    const auto yx = eval_harmonics(x, n), yy = eval_harmonics(y, n);
    const auto yrx = eval_harmonics(rotate(r, x), n), yry = eval_harmonics(rotate(r, y), n);
    for (int ell = 0; ell <= n; ++ell) {
      const int lo = ell * ell, len = 2 * ell + 1;
      const double a = yx.segment(lo, len).dot(yy.segment(lo, len));
      const double b = yrx.segment(lo, len).dot(yry.segment(lo, len));
      CHECK(std::abs(a - b) <= 1e-9 * (2.0 * ell + 1.0) / kFourPi);
    }
  }
}

TEST_CASE("recurrences stay finite and accurate at degree 200") {
  std::mt19937_64 rng(29);
  const int n = 200;
  const auto y = eval_harmonics(random_point(rng), n);
  CHECK(y.allFinite());
  CHECK(y.squaredNorm() ==
        doctest::Approx((n + 1.0) * (n + 1.0) / kFourPi).epsilon(1e-10));
  CHECK(std::isfinite(jacobi_p10(200, 0.73)));
  CHECK(jacobi_p10(200, 1.0) == doctest::Approx(201.0).epsilon(1e-12));
}

TEST_CASE("design matrix layout") {
  const auto ps = generate_spiral(40);
  const auto dm = build_design_matrix(ps, 4);
  CHECK(dm.values.rows() == 40);
  CHECK(dm.values.cols() == 25);
  for (Eigen::Index j = 0; j < dm.values.rows(); ++j) {
    CHECK(dm.values(j, 0) == doctest::Approx(0.2820947917738781).epsilon(1e-14));
    const auto row = eval_harmonics(ps[static_cast<std::size_t>(j)], 4);
    CHECK((dm.values.row(j).transpose() - row).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
  }
}
