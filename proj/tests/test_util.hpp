// Shared helpers for the unit suites: small fixture point sets, random
// sampling, and independent oracles (kept free of the library's own
// evaluation paths wherever they are used as a cross-check).
#ifndef SPHLS_TEST_UTIL_HPP
#define SPHLS_TEST_UTIL_HPP

#include <cmath>
#include <random>
#include <vector>

#include "sphls/geometry.hpp"

namespace sphls_test {

inline sphls::PointSet octahedron() {
  sphls::PointSet ps;
  ps.label = "octahedron";
  ps.points = {
      sphls::SpherePoint(1, 0, 0),  sphls::SpherePoint(-1, 0, 0),
      sphls::SpherePoint(0, 1, 0),  sphls::SpherePoint(0, -1, 0),
      sphls::SpherePoint(0, 0, 1),  sphls::SpherePoint(0, 0, -1),
  };
  return ps;
}

inline sphls::SpherePoint random_point(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (;;) {
    const double x = gauss(rng), y = gauss(rng), z = gauss(rng);
    if (x * x + y * y + z * z > 1e-12) return sphls::SpherePoint(x, y, z);
  }
}

// Gauss-Legendre nodes/weights on [-1,1] by Newton iteration on P_k.
struct Gauss1D {
  std::vector<double> nodes, weights;

  explicit Gauss1D(int count) {
    nodes.resize(count);
    weights.resize(count);
    for (int i = 0; i < count; ++i) {
      double x = std::cos(M_PI * (i + 0.75) / (count + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= count; ++k) {
          const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = count * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-15) break;
      }
      nodes[i] = x;
      weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
  }

  template <typename F>
  double integrate(F&& f) const {
    double s = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
    return s;
  }
};

inline double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r *= static_cast<double>(n - k + i) / i;
  return r;
}

// Explicit-sum Jacobi oracle:
// P_n^{(a,b)}(x) = sum_s C(n+a, n-s) C(n+b, s) ((x-1)/2)^s ((x+1)/2)^(n-s)
inline double jacobi_p10_oracle(int n, double x) {
  double sum = 0.0;
  for (int s = 0; s <= n; ++s)
    sum += binomial(n + 1, n - s) * binomial(n, s) *
           std::pow((x - 1.0) / 2.0, s) * std::pow((x + 1.0) / 2.0, n - s);
  return sum;
}

}  // namespace sphls_test

#endif
