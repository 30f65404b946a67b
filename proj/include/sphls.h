/* C interface to the sphls library: polynomial approximation on the unit
 * sphere from scattered samples (least squares, de la Vallee Poussin means,
 * hyperinterpolation, filtered hyperinterpolation), with the point-set,
 * quadrature and Lebesgue-constant machinery around them.
 *
 * All objects are opaque handles created by sphls_* constructors and
 * released with the matching *_free function. Functions return SPHLS_OK on
 * success; on failure sphls_last_error() holds a thread-local message.
 */
#ifndef SPHLS_H
#define SPHLS_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sphls_status {
  SPHLS_OK = 0,
  SPHLS_ERR_INVALID_ARGUMENT = 1,
  SPHLS_ERR_IO = 2,
  SPHLS_ERR_PARSE = 3,
  SPHLS_ERR_NOT_POSITIVE = 4,
  SPHLS_ERR_EXACTNESS_UNACHIEVABLE = 5,
  SPHLS_ERR_INSUFFICIENT_EXACTNESS = 6,
  SPHLS_ERR_NOT_UNISOLVENT = 7,
  SPHLS_ERR_INTERNAL = 99
} sphls_status;

const char* sphls_last_error(void);
const char* sphls_version(void);

/* ---- point sets ---- */

typedef struct sphls_points sphls_points;

sphls_status sphls_points_spiral(size_t count, sphls_points** out);
sphls_status sphls_points_load(const char* path, sphls_points** out);
sphls_status sphls_points_save(const sphls_points* ps, const char* path);
size_t sphls_points_count(const sphls_points* ps);
/* xyz must hold 3 doubles. */
sphls_status sphls_points_get(const sphls_points* ps, size_t index, double* xyz);
/* Claimed exactness from the file header; -1 when absent. */
int sphls_points_claimed_exactness(const sphls_points* ps);
void sphls_points_free(sphls_points* ps);

sphls_status sphls_geodesic_distance(const double* a_xyz, const double* b_xyz, double* out);

/* Exact pairwise separation, grid mesh-norm estimate and their ratio. */
sphls_status sphls_mesh_report(const sphls_points* ps, const sphls_points* eval,
                               double* separation, double* mesh_norm, double* mesh_ratio);

/* ---- quadrature rules ---- */

typedef struct sphls_rule sphls_rule;

sphls_status sphls_rule_solve(const sphls_points* ps, int exactness, sphls_rule** out);
sphls_status sphls_rule_load(const char* path, sphls_rule** out);
sphls_status sphls_rule_save(const sphls_rule* rule, const char* path);
int sphls_rule_exactness(const sphls_rule* rule);
double sphls_rule_residual(const sphls_rule* rule);
size_t sphls_rule_count(const sphls_rule* rule);
sphls_status sphls_rule_weight(const sphls_rule* rule, size_t index, double* out);
sphls_status sphls_rule_verify(const sphls_rule* rule, int degree, double* residual);
void sphls_rule_free(sphls_rule* rule);

/* ---- discrete orthonormal basis ---- */

typedef struct sphls_basis sphls_basis;

sphls_status sphls_basis_build(const sphls_points* ps, int degree, sphls_basis** out);
void sphls_basis_free(sphls_basis* basis);

/* ---- approximants ---- */

typedef struct sphls_approx sphls_approx;

/* samples has one value per node of the underlying point set. */
sphls_status sphls_fit_ls(const sphls_basis* basis, const double* samples, size_t count,
                          sphls_approx** out);
/* Builds its own basis of degree n + floor(theta*n) on ps. */
sphls_status sphls_fit_vp(const sphls_points* ps, const double* samples, size_t count,
                          int n, double theta, sphls_approx** out);
sphls_status sphls_fit_hyper(const sphls_rule* rule, const double* samples, size_t count,
                             int n, sphls_approx** out);
sphls_status sphls_fit_fhyper(const sphls_rule* rule, const double* samples, size_t count,
                              int n, double theta, sphls_approx** out);

sphls_status sphls_approx_evaluate(const sphls_approx* approx, const sphls_points* pts,
                                   double* values);
int sphls_approx_degree(const sphls_approx* approx);
sphls_status sphls_approx_save(const sphls_approx* approx, const char* path);
sphls_status sphls_approx_load(const char* path, sphls_approx** out);
void sphls_approx_free(sphls_approx* approx);

/* ---- built-in test functions ("f1", "fcone", "f2") ---- */

sphls_status sphls_testfn_evaluate(const char* name, const sphls_points* pts, double* values);
/* SPHLS_ERR_INVALID_ARGUMENT when the function has no singular circle. */
sphls_status sphls_testfn_circle(const char* name, double* center_xyz, double* radius);

/* ---- analysis ---- */

typedef struct sphls_lebesgue_report {
  double constant;
  double argmax_xyz[3];
  size_t eval_count;
} sphls_lebesgue_report;

sphls_status sphls_lebesgue_ls(const sphls_basis* basis, const sphls_points* eval,
                               sphls_lebesgue_report* out);
sphls_status sphls_lebesgue_vp(const sphls_basis* basis, int n, double theta,
                               const sphls_points* eval, sphls_lebesgue_report* out);
sphls_status sphls_lebesgue_hyper(const sphls_rule* rule, int n, const sphls_points* eval,
                                  sphls_lebesgue_report* out);
sphls_status sphls_lebesgue_fhyper(const sphls_rule* rule, int n, double theta,
                                   const sphls_points* eval, sphls_lebesgue_report* out);

/* Sup error of approx against a named test function over eval; mask_radius
 * masks a geodesic band around the function's singular circle (pass a
 * negative value, or a function without a circle, for no masking). */
sphls_status sphls_sup_error(const sphls_approx* approx, const char* fn_name,
                             const sphls_points* eval, double mask_radius,
                             double* sup, double* masked_sup);

/* Log-log least squares fit of (n_i, c_i), i = 0..count-1, count >= 3. */
sphls_status sphls_growth_fit(const double* ns, const double* constants, size_t count,
                              double* exponent, double* prefactor);

#ifdef __cplusplus
}
#endif

#endif /* SPHLS_H */
