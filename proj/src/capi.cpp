#include "sphls.h"

#include <cstring>
#include <new>
#include <string>

#include "sphls/analysis.hpp"
#include "sphls/approximation.hpp"
#include "sphls/geometry.hpp"
#include "sphls/quadrature.hpp"
#include "sphls/test_functions.hpp"

struct sphls_points {
  sphls::PointSet ps;
};
struct sphls_rule {
  sphls::QuadratureRule rule;
};
struct sphls_basis {
  sphls::DiscreteOrthonormalBasis basis;
};
struct sphls_approx {
  sphls::Approximant approx;
};

namespace {

thread_local std::string g_last_error;

sphls_status fail(sphls_status code, const std::string& what) {
  g_last_error = what;
  return code;
}

sphls_status map_quadrature_error(const sphls::quadrature_error& e) {
  if (e.kind() == "not-positive") return fail(SPHLS_ERR_NOT_POSITIVE, e.what());
  if (e.kind() == "exactness-unachievable")
    return fail(SPHLS_ERR_EXACTNESS_UNACHIEVABLE, e.what());
  if (e.kind() == "insufficient-exactness")
    return fail(SPHLS_ERR_INSUFFICIENT_EXACTNESS, e.what());
  return fail(SPHLS_ERR_INTERNAL, e.what());
}

// Runs fn, translating C++ exceptions into status codes.
template <typename Fn>
sphls_status guarded(Fn&& fn) {
  try {
    fn();
    return SPHLS_OK;
  } catch (const sphls::quadrature_error& e) {
    return map_quadrature_error(e);
  } catch (const sphls::basis_error& e) {
    return fail(SPHLS_ERR_NOT_UNISOLVENT, e.what());
  } catch (const sphls::parse_error& e) {
    return fail(SPHLS_ERR_PARSE, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(SPHLS_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(SPHLS_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SPHLS_ERR_IO, e.what());
  }
}

sphls_status require(bool ok, const char* what) {
  return ok ? SPHLS_OK : fail(SPHLS_ERR_INVALID_ARGUMENT, what);
}

void copy_report(const sphls::LebesgueReport& rep, sphls_lebesgue_report* out) {
  out->constant = rep.lebesgue_constant;
  out->argmax_xyz[0] = rep.argmax_point.x;
  out->argmax_xyz[1] = rep.argmax_point.y;
  out->argmax_xyz[2] = rep.argmax_point.z;
  out->eval_count = rep.eval_count;
}

Eigen::VectorXd to_vector(const double* samples, size_t count) {
  return Eigen::Map<const Eigen::VectorXd>(samples, static_cast<Eigen::Index>(count));
}

}  // namespace

extern "C" {

const char* sphls_last_error(void) { return g_last_error.c_str(); }
const char* sphls_version(void) { return "0.1.0"; }

sphls_status sphls_points_spiral(size_t count, sphls_points** out) {
  if (auto s = require(out != nullptr, "null output handle")) return s;
  return guarded([&] { *out = new sphls_points{sphls::generate_spiral(count)}; });
}

sphls_status sphls_points_load(const char* path, sphls_points** out) {
  if (auto s = require(path && out, "null argument")) return s;
  return guarded([&] { *out = new sphls_points{sphls::load_points(path)}; });
}

sphls_status sphls_points_save(const sphls_points* ps, const char* path) {
  if (auto s = require(ps && path, "null argument")) return s;
  return guarded([&] { sphls::save_points(ps->ps, path); });
}

size_t sphls_points_count(const sphls_points* ps) { return ps ? ps->ps.size() : 0; }

sphls_status sphls_points_get(const sphls_points* ps, size_t index, double* xyz) {
  if (auto s = require(ps && xyz, "null argument")) return s;
  if (auto s = require(index < ps->ps.size(), "point index out of range")) return s;
  const auto& p = ps->ps[index];
  xyz[0] = p.x;
  xyz[1] = p.y;
  xyz[2] = p.z;
  return SPHLS_OK;
}

int sphls_points_claimed_exactness(const sphls_points* ps) {
  return (ps && ps->ps.claimed_exactness) ? *ps->ps.claimed_exactness : -1;
}

void sphls_points_free(sphls_points* ps) { delete ps; }

sphls_status sphls_geodesic_distance(const double* a_xyz, const double* b_xyz, double* out) {
  if (auto s = require(a_xyz && b_xyz && out, "null argument")) return s;
  return guarded([&] {
    *out = sphls::geodesic_distance(sphls::SpherePoint(a_xyz[0], a_xyz[1], a_xyz[2]),
                                    sphls::SpherePoint(b_xyz[0], b_xyz[1], b_xyz[2]));
  });
}

sphls_status sphls_mesh_report(const sphls_points* ps, const sphls_points* eval,
                               double* separation, double* mesh_norm, double* mesh_ratio) {
  if (auto s = require(ps && eval, "null argument")) return s;
  return guarded([&] {
    const auto rep = sphls::mesh_report(ps->ps, eval->ps);
    if (separation) *separation = rep.separation;
    if (mesh_norm) *mesh_norm = rep.mesh_norm_estimate;
    if (mesh_ratio) *mesh_ratio = rep.mesh_ratio;
  });
}

sphls_status sphls_rule_solve(const sphls_points* ps, int exactness, sphls_rule** out) {
  if (auto s = require(ps && out, "null argument")) return s;
  return guarded([&] { *out = new sphls_rule{sphls::solve_weights(ps->ps, exactness)}; });
}

sphls_status sphls_rule_load(const char* path, sphls_rule** out) {
  if (auto s = require(path && out, "null argument")) return s;
  return guarded([&] { *out = new sphls_rule{sphls::load_rule(path)}; });
}

sphls_status sphls_rule_save(const sphls_rule* rule, const char* path) {
  if (auto s = require(rule && path, "null argument")) return s;
  return guarded([&] { sphls::save_rule(rule->rule, path); });
}

int sphls_rule_exactness(const sphls_rule* rule) { return rule ? rule->rule.exactness : -1; }
double sphls_rule_residual(const sphls_rule* rule) { return rule ? rule->rule.residual : -1.0; }
size_t sphls_rule_count(const sphls_rule* rule) { return rule ? rule->rule.pointset.size() : 0; }

sphls_status sphls_rule_weight(const sphls_rule* rule, size_t index, double* out) {
  if (auto s = require(rule && out, "null argument")) return s;
  if (auto s = require(index < rule->rule.pointset.size(), "weight index out of range")) return s;
  *out = rule->rule.weights[static_cast<Eigen::Index>(index)];
  return SPHLS_OK;
}

sphls_status sphls_rule_verify(const sphls_rule* rule, int degree, double* residual) {
  if (auto s = require(rule && residual, "null argument")) return s;
  return guarded([&] { *residual = sphls::verify_exactness(rule->rule, degree); });
}

void sphls_rule_free(sphls_rule* rule) { delete rule; }

sphls_status sphls_basis_build(const sphls_points* ps, int degree, sphls_basis** out) {
  if (auto s = require(ps && out, "null argument")) return s;
  return guarded(
      [&] { *out = new sphls_basis{sphls::build_orthonormal_basis(ps->ps, degree)}; });
}

void sphls_basis_free(sphls_basis* basis) { delete basis; }

sphls_status sphls_fit_ls(const sphls_basis* basis, const double* samples, size_t count,
                          sphls_approx** out) {
  if (auto s = require(basis && samples && out, "null argument")) return s;
  return guarded(
      [&] { *out = new sphls_approx{sphls::ls_fit(basis->basis, to_vector(samples, count))}; });
}

sphls_status sphls_fit_vp(const sphls_points* ps, const double* samples, size_t count,
                          int n, double theta, sphls_approx** out) {
  if (auto s = require(ps && samples && out, "null argument")) return s;
  return guarded([&] {
    const int m = sphls::vp_ray(n, theta);
    const auto basis = sphls::build_orthonormal_basis(ps->ps, n + m);
    *out = new sphls_approx{sphls::vp_mean_fit(basis, to_vector(samples, count), n, theta)};
  });
}

sphls_status sphls_fit_hyper(const sphls_rule* rule, const double* samples, size_t count,
                             int n, sphls_approx** out) {
  if (auto s = require(rule && samples && out, "null argument")) return s;
  return guarded([&] {
    *out = new sphls_approx{sphls::hyper_fit(rule->rule, to_vector(samples, count), n)};
  });
}

sphls_status sphls_fit_fhyper(const sphls_rule* rule, const double* samples, size_t count,
                              int n, double theta, sphls_approx** out) {
  if (auto s = require(rule && samples && out, "null argument")) return s;
  return guarded([&] {
    *out = new sphls_approx{
        sphls::filtered_hyper_fit(rule->rule, to_vector(samples, count), n, theta)};
  });
}

sphls_status sphls_approx_evaluate(const sphls_approx* approx, const sphls_points* pts,
                                   double* values) {
  if (auto s = require(approx && pts && values, "null argument")) return s;
  return guarded([&] {
    const Eigen::VectorXd v = approx->approx.evaluate(pts->ps);
    std::memcpy(values, v.data(), sizeof(double) * static_cast<size_t>(v.size()));
  });
}

int sphls_approx_degree(const sphls_approx* approx) { return approx ? approx->approx.degree : -1; }

sphls_status sphls_approx_save(const sphls_approx* approx, const char* path) {
  if (auto s = require(approx && path, "null argument")) return s;
  return guarded([&] { sphls::save_approximant(approx->approx, path); });
}

sphls_status sphls_approx_load(const char* path, sphls_approx** out) {
  if (auto s = require(path && out, "null argument")) return s;
  return guarded([&] { *out = new sphls_approx{sphls::load_approximant(path)}; });
}

void sphls_approx_free(sphls_approx* approx) { delete approx; }

sphls_status sphls_testfn_evaluate(const char* name, const sphls_points* pts, double* values) {
  if (auto s = require(name && pts && values, "null argument")) return s;
  return guarded([&] {
    const auto& fn = sphls::test_function(name);
    for (std::size_t i = 0; i < pts->ps.size(); ++i) values[i] = fn(pts->ps[i]);
  });
}

sphls_status sphls_testfn_circle(const char* name, double* center_xyz, double* radius) {
  if (auto s = require(name != nullptr, "null argument")) return s;
  return guarded([&] {
    const auto& fn = sphls::test_function(name);
    if (!fn.singular_circle)
      throw std::invalid_argument(std::string(name) + " has no singular circle");
    if (center_xyz) {
      center_xyz[0] = fn.singular_circle->center.x;
      center_xyz[1] = fn.singular_circle->center.y;
      center_xyz[2] = fn.singular_circle->center.z;
    }
    if (radius) *radius = fn.singular_circle->radius;
  });
}

sphls_status sphls_lebesgue_ls(const sphls_basis* basis, const sphls_points* eval,
                               sphls_lebesgue_report* out) {
  if (auto s = require(basis && eval && out, "null argument")) return s;
  return guarded([&] { copy_report(sphls::lebesgue_ls(basis->basis, eval->ps), out); });
}

sphls_status sphls_lebesgue_vp(const sphls_basis* basis, int n, double theta,
                               const sphls_points* eval, sphls_lebesgue_report* out) {
  if (auto s = require(basis && eval && out, "null argument")) return s;
  return guarded(
      [&] { copy_report(sphls::lebesgue_vp(basis->basis, n, theta, eval->ps), out); });
}

sphls_status sphls_lebesgue_hyper(const sphls_rule* rule, int n, const sphls_points* eval,
                                  sphls_lebesgue_report* out) {
  if (auto s = require(rule && eval && out, "null argument")) return s;
  return guarded([&] { copy_report(sphls::lebesgue_hyper(rule->rule, n, eval->ps), out); });
}

sphls_status sphls_lebesgue_fhyper(const sphls_rule* rule, int n, double theta,
                                   const sphls_points* eval, sphls_lebesgue_report* out) {
  if (auto s = require(rule && eval && out, "null argument")) return s;
  return guarded(
      [&] { copy_report(sphls::lebesgue_fhyper(rule->rule, n, theta, eval->ps), out); });
}

sphls_status sphls_sup_error(const sphls_approx* approx, const char* fn_name,
                             const sphls_points* eval, double mask_radius,
                             double* sup, double* masked_sup) {
  if (auto s = require(approx && fn_name && eval, "null argument")) return s;
  return guarded([&] {
    const auto& fn = sphls::test_function(fn_name);
    std::optional<sphls::ErrorMask> mask;
    if (mask_radius >= 0.0 && fn.singular_circle)
      mask = sphls::ErrorMask{*fn.singular_circle, mask_radius};
    const auto rep = sphls::sup_error(approx->approx, fn.evaluator, eval->ps, mask);
    if (sup) *sup = rep.sup_error;
    if (masked_sup) *masked_sup = rep.masked_sup_error;
  });
}

sphls_status sphls_growth_fit(const double* ns, const double* constants, size_t count,
                              double* exponent, double* prefactor) {
  if (auto s = require(ns && constants, "null argument")) return s;
  return guarded([&] {
    std::vector<std::pair<double, double>> series;
    series.reserve(count);
    for (size_t i = 0; i < count; ++i) series.emplace_back(ns[i], constants[i]);
    const auto fit = sphls::growth_fit(series);
    if (exponent) *exponent = fit.exponent;
    if (prefactor) *prefactor = fit.prefactor;
  });
}

}  // extern "C"
