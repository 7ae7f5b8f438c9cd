// Copyright 2026 The steinbound Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/*
 * steinbound C API.
 *
 * Every function returns an sb_status. On failure the thread-local message
 * returned by sb_last_error() describes the problem; it stays valid until the
 * next failing call on the same thread. Handles are opaque and must be
 * released with their matching *_destroy function (NULL is accepted).
 */
#ifndef STEINBOUND_STEINBOUND_H
#define STEINBOUND_STEINBOUND_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(STEINBOUND_BUILDING_LIBRARY)
#    define SB_API __declspec(dllexport)
#  else
#    define SB_API __declspec(dllimport)
#  endif
#else
#  define SB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sb_status {
  SB_OK = 0,
  SB_ERR_INVALID_ARGUMENT = 1, /* bad parameter, flag or config key */
  SB_ERR_DOMAIN = 2,           /* mathematically undefined input */
  SB_ERR_IO = 3,
  SB_ERR_NULL_POINTER = 4,
  SB_ERR_INTERNAL = 5,
  SB_HELP_REQUESTED = 6 /* --help: sb_last_error() holds the help text */
} sb_status;

SB_API const char* sb_last_error(void);
SB_API const char* sb_version(void);

/* ---- Gaussian analytics ------------------------------------------------ */

typedef enum sb_branch { SB_BRANCH_LOWER = 0, SB_BRANCH_UPPER = 1 } sb_branch;

typedef struct sb_stein_point {
  double z;
  double x;
  double value;
  double derivative;
  sb_branch branch;
} sb_stein_point;

typedef struct sb_lemma_report {
  double z;
  int global_bound_ok;
  int center_value_ok;
  int center_derivative_ok;
  size_t center_points;
  double margin_positivity;
  double margin_global_value;
  double margin_global_derivative;
  double margin_center_value;
  double margin_center_derivative;
  double worst_margin;
} sb_lemma_report;

SB_API sb_status sb_normal_cdf(double x, double* out);
SB_API sb_status sb_normal_tail(double x, double* out);
SB_API sb_status sb_scaled_tail(double x, double* out);
SB_API sb_status sb_stein_solution(double z, double x, sb_stein_point* out);
SB_API sb_status sb_check_lemma(double z, const double* grid, size_t n, sb_lemma_report* out);

/* ---- Tail models and bounds -------------------------------------------- */

typedef struct sb_tail_model sb_tail_model;
typedef double (*sb_cdf_fn)(double z, void* user_data);

SB_API sb_status sb_tail_unit_create(sb_tail_model** out);
SB_API sb_status sb_tail_markov_create(double p, double moment_p, sb_tail_model** out);
SB_API sb_status sb_tail_major_create(int q, double c_q, sb_tail_model** out);
SB_API sb_status sb_tail_expfun_create(double a, double t, sb_tail_model** out);
/* Copies the samples. */
SB_API sb_status sb_tail_empirical_create(const double* samples, size_t n, sb_tail_model** out);
/* user_data must outlive the model. */
SB_API sb_status sb_tail_exact_create(sb_cdf_fn cdf, void* user_data, sb_tail_model** out);
/* Exact law of the normalized rank-one second chaos (N^2 - 1)/sqrt(2). */
SB_API sb_status sb_tail_exact_q2_rank1_create(sb_tail_model** out);
SB_API void sb_tail_model_destroy(sb_tail_model* model);

SB_API sb_status sb_tail_probability(const sb_tail_model* model, double x, double* out);
SB_API sb_status sb_nonuniform_bound(double mean_abs, double stein_discrepancy,
                                     const sb_tail_model* tail, double z, double* out);
SB_API sb_status sb_chaos_bound(int q, double fourth_moment, double c_q, double z, double* out);
SB_API sb_status sb_uniform_bound(double mean_abs, double stein_discrepancy, double* out);

typedef struct sb_bound_row {
  double z;
  double tail_term;
  double gaussian_term;
  double bound;
} sb_bound_row;

typedef struct sb_bound_curve sb_bound_curve;

SB_API sb_status sb_bound_curve_evaluate(double mean_abs, double stein_discrepancy,
                                         const sb_tail_model* tail, const double* grid,
                                         size_t n, sb_bound_curve** out);
SB_API size_t sb_bound_curve_size(const sb_bound_curve* curve);
SB_API sb_status sb_bound_curve_row(const sb_bound_curve* curve, size_t i, sb_bound_row* out);
SB_API void sb_bound_curve_destroy(sb_bound_curve* curve);

/* ---- Wiener chaos ------------------------------------------------------- */

SB_API sb_status sb_hermite(int q, double x, double* out);
SB_API sb_status sb_chaos_variance(int q, const double* alphas, size_t n, double* out);
/* Writes n normalized coefficients to out_alphas. */
SB_API sb_status sb_chaos_normalize(int q, const double* alphas, size_t n, double* out_alphas);
/* F for the given normals (one per coefficient). */
SB_API sb_status sb_chaos_evaluate(int q, const double* alphas, const double* normals, size_t n,
                                   double* out);
SB_API sb_status sb_chaos_sample(int q, const double* alphas, size_t n, uint64_t seed,
                                 size_t count, unsigned workers, double* out_samples);
/* Variance-one coefficients; q == 2 exact (se = 0), otherwise Monte Carlo. */
SB_API sb_status sb_chaos_fourth_moment(int q, const double* alphas, size_t n, uint64_t seed,
                                        size_t samples, double* out_value, double* out_se);
/* clamped (may be NULL) is set to 1 when the radicand was negative. */
SB_API sb_status sb_stein_discrepancy_upper(int q, double fourth_moment, double* out,
                                            int* clamped);
SB_API sb_status sb_exact_cdf_q2_rank1(double z, double* out);

/* ---- Exponential functional of Brownian motion ------------------------- */

typedef struct sb_expfun_moments {
  double m_t;
  double second_moment;
  double sigma2_t;
  double sigma_t;
} sb_expfun_moments;

typedef enum sb_scheme { SB_SCHEME_TRAPEZOID = 0, SB_SCHEME_LEFT_POINT = 1 } sb_scheme;

SB_API sb_status sb_expfun_moments_compute(double a, double t, sb_expfun_moments* out);
SB_API sb_status sb_expfun_path_functional(double a, double t, sb_scheme scheme,
                                           const double* increments, size_t n_steps,
                                           double* out);
SB_API sb_status sb_expfun_sample(double a, double t, size_t n_steps, sb_scheme scheme,
                                  uint64_t seed, size_t count, unsigned workers,
                                  double* out_samples);
SB_API sb_status sb_expfun_tail_upper(double a, double t, double x, double* out);
SB_API sb_status sb_expfun_tail_lower(double x, double* out);
SB_API sb_status sb_expfun_two_sided_tail(double a, double t, double z, double* out);
SB_API sb_status sb_expfun_gamma_second_moment_upper(double a, double t, double* out);
SB_API sb_status sb_expfun_vnms_bound(double a, double t, double z, double* out);

/* ---- Empirical statistics ---------------------------------------------- */

typedef struct sb_ecdf sb_ecdf;

SB_API sb_status sb_ecdf_create(const double* samples, size_t n, sb_ecdf** out);
SB_API sb_status sb_ecdf_eval(const sb_ecdf* ecdf, double z, double* out);
SB_API sb_status sb_ecdf_tail(const sb_ecdf* ecdf, double x, double* out);
SB_API size_t sb_ecdf_size(const sb_ecdf* ecdf);
SB_API void sb_ecdf_destroy(sb_ecdf* ecdf);
SB_API sb_status sb_dkw_epsilon(size_t n, double delta, double* out);

/* ---- Scenario runner (the CLI) ----------------------------------------- */

typedef struct sb_run_config sb_run_config;

/* argv[0] is the program name, argv[1] the subcommand. */
SB_API sb_status sb_run_config_parse(int argc, const char* const* argv, sb_run_config** out);
SB_API sb_status sb_run_config_set_output(sb_run_config* config, const char* path);
SB_API sb_status sb_run_config_set_workers(sb_run_config* config, unsigned workers);
SB_API void sb_run_config_destroy(sb_run_config* config);

typedef struct sb_run_summary {
  int exit_status; /* 0 no violations, 2 certification violations */
  size_t rows;
  size_t violations;
  size_t notes;
} sb_run_summary;

/* Executes the scenario and writes the output file (stdout for "-"). */
SB_API sb_status sb_run(const sb_run_config* config, sb_run_summary* out);
/* Notes from the most recent successful sb_run on this thread. */
SB_API const char* sb_run_note(size_t i);

#ifdef __cplusplus
}
#endif

#endif /* STEINBOUND_STEINBOUND_H */
