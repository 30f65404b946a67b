#include "sphls/harmonics.hpp"

#include <cmath>
#include <stdexcept>

namespace sphls {

namespace {
constexpr double kInvSqrt4Pi = 0.28209479177387814347403972578039;  // 1/sqrt(4*pi)
}  // namespace

HarmonicIndex HarmonicIndex::from_flat0(int k) {
  HarmonicIndex idx;
  idx.ell = static_cast<int>(std::sqrt(static_cast<double>(k)));
  while ((idx.ell + 1) * (idx.ell + 1) <= k) ++idx.ell;
  while (idx.ell * idx.ell > k) --idx.ell;
  idx.m = k - idx.ell * idx.ell - idx.ell;
  return idx;
}

Eigen::VectorXd eval_harmonics(const SpherePoint& p, int degree) {
  if (degree < 0) throw std::invalid_argument("eval_harmonics: negative degree");
  const int n = degree;
  Eigen::VectorXd out(harmonic_count(n));

  const double ct = p.z;                          // cos(theta)
  const double st = std::hypot(p.x, p.y);         // sin(theta) >= 0
  double cphi = 1.0, sphi = 0.0;
  if (st > 0.0) {
    cphi = p.x / st;
    sphi = p.y / st;
  }

  // Fully normalized associated Legendre, ascending in m then in ell.
  // Ptilde(l,0) = Y_{l0}; for m > 0, Y_{l,+-m} = sqrt(2)*Ptilde(l,m)*{cos,sin}(m*phi).
  const double sqrt2 = std::sqrt(2.0);
  double pmm = kInvSqrt4Pi;  // Ptilde(0,0)
  double cm = 1.0, sm = 0.0;  // cos(m*phi), sin(m*phi)
  for (int m = 0; m <= n; ++m) {
    if (m > 0) {
      pmm *= st * std::sqrt((2.0 * m + 1.0) / (2.0 * m));
      const double cm_next = cm * cphi - sm * sphi;
      sm = sm * cphi + cm * sphi;
      cm = cm_next;
    }
    const double scale_c = (m == 0) ? 1.0 : sqrt2 * cm;
    const double scale_s = sqrt2 * sm;

    double p_prev = 0.0;   // Ptilde(l-2,m)
    double p_curr = pmm;   // Ptilde(l,m), starting at l = m
    for (int ell = m; ell <= n; ++ell) {
      if (ell > m) {
        double p_next;
        if (ell == m + 1) {
          p_next = std::sqrt(2.0 * m + 3.0) * ct * p_curr;
        } else {
          const double a = std::sqrt((4.0 * ell * ell - 1.0) /
                                     (static_cast<double>(ell) * ell - static_cast<double>(m) * m));
          const double b = std::sqrt((static_cast<double>(ell - 1) * (ell - 1) - static_cast<double>(m) * m) /
                                     (4.0 * static_cast<double>(ell - 1) * (ell - 1) - 1.0));
          p_next = a * (ct * p_curr - b * p_prev);
        }
        p_prev = p_curr;
        p_curr = p_next;
      }
      const int base = ell * ell + ell;
      out[base + m] = p_curr * scale_c;
      if (m > 0) out[base - m] = p_curr * scale_s;
    }
  }
  return out;
}

DesignMatrix build_design_matrix(const PointSet& ps, int degree) {
  DesignMatrix dm;
  dm.degree = degree;
  const Eigen::Index cols = harmonic_count(degree);
  dm.values.resize(static_cast<Eigen::Index>(ps.size()), cols);
  for (std::size_t j = 0; j < ps.size(); ++j)
    dm.values.row(static_cast<Eigen::Index>(j)) = eval_harmonics(ps[j], degree).transpose();
  return dm;
}

double jacobi_p10(int degree, double t) {
  if (degree < 0) throw std::invalid_argument("jacobi_p10: negative degree");
  // Three-term recurrence for alpha = 1, beta = 0.
  double p_prev = 1.0;
  if (degree == 0) return p_prev;
  double p_curr = (3.0 * t + 1.0) / 2.0;
  for (int k = 2; k <= degree; ++k) {
    const double a1 = 2.0 * k * (k + 1.0) * (2.0 * k - 1.0);
    const double a2 = 2.0 * k;
    const double a3 = 2.0 * k * (2.0 * k + 1.0) * (2.0 * k - 1.0);
    const double a4 = 2.0 * k * (k - 1.0) * (2.0 * k + 1.0);
    const double p_next = ((a2 + a3 * t) * p_curr - a4 * p_prev) / a1;
    p_prev = p_curr;
    p_curr = p_next;
  }
  return p_curr;
}

double darboux_kernel(int degree, double t) {
  return 0.5 * (degree + 1.0) * jacobi_p10(degree, t);
}

double vdvp_kernel(int degree, int ray, double t) {
  if (ray < 0 || ray > degree) throw std::invalid_argument("vdvp_kernel: need 0 <= m <= n");
  double sum = 0.0;
  for (int r = degree - ray; r <= degree + ray; ++r) sum += darboux_kernel(r, t);
  return sum / (2.0 * ray + 1.0);
}

Eigen::VectorXd legendre_all(int degree, double t) {
  Eigen::VectorXd p(degree + 1);
  p[0] = 1.0;
  if (degree >= 1) p[1] = t;
  for (int l = 2; l <= degree; ++l)
    p[l] = ((2.0 * l - 1.0) * t * p[l - 1] - (l - 1.0) * p[l - 2]) / l;
  return p;
}

}  // namespace sphls
