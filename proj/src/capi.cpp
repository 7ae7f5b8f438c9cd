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

#include "steinbound/steinbound.h"

#include <cmath>
#include <exception>
#include <memory>
#include <new>
#include <stdexcept>
#include <string>
#include <vector>

#include "steinbound/bound.hpp"
#include "steinbound/chaos.hpp"
#include "steinbound/empirical.hpp"
#include "steinbound/expfun.hpp"
#include "steinbound/gaussian.hpp"
#include "steinbound/report.hpp"

struct sb_tail_model {
  steinbound::bounds::TailModel model;
};

struct sb_bound_curve {
  steinbound::bounds::BoundCurve curve;
};

struct sb_ecdf {
  std::shared_ptr<const steinbound::empirical::EmpiricalCdf> ecdf;
};

struct sb_run_config {
  steinbound::report::RunConfig config;
};

namespace {

namespace sb = steinbound;

thread_local std::string g_last_error;
thread_local std::vector<std::string> g_last_notes;

sb_status fail(sb_status code, const std::string& message) {
  g_last_error = message;
  return code;
}

// Maps C++ exceptions onto status codes. Must be called inside a catch block.
sb_status translate_current() {
  try {
    throw;
  } catch (const sb::report::HelpRequested& e) {
    return fail(SB_HELP_REQUESTED, e.what());
  } catch (const std::domain_error& e) {
    return fail(SB_ERR_DOMAIN, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(SB_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::out_of_range& e) {
    return fail(SB_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(SB_ERR_INTERNAL, "out of memory");
  } catch (const std::runtime_error& e) {
    return fail(SB_ERR_IO, e.what());
  } catch (const std::exception& e) {
    return fail(SB_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(SB_ERR_INTERNAL, "unknown error");
  }
}

template <class F>
sb_status guarded(F&& body) {
  try {
    body();
    return SB_OK;
  } catch (...) {
    return translate_current();
  }
}

#define SB_REQUIRE(ptr)                                              \
  do {                                                               \
    if ((ptr) == nullptr) return fail(SB_ERR_NULL_POINTER, #ptr " is null"); \
  } while (0)

std::vector<double> copy_array(const double* data, size_t n) {
  if (n > 0 && data == nullptr) throw std::invalid_argument("array pointer is null");
  return n == 0 ? std::vector<double>{} : std::vector<double>(data, data + n);
}

sb::chaos::DiagonalChaosSpec make_spec(int q, const double* alphas, size_t n) {
  sb::chaos::DiagonalChaosSpec spec{q, copy_array(alphas, n)};
  sb::chaos::validate(spec);
  return spec;
}

sb::expfun::Scheme to_scheme(sb_scheme s) {
  switch (s) {
    case SB_SCHEME_TRAPEZOID: return sb::expfun::Scheme::Trapezoid;
    case SB_SCHEME_LEFT_POINT: return sb::expfun::Scheme::LeftPoint;
  }
  throw std::invalid_argument("unknown scheme");
}

sb_status make_tail(sb::bounds::TailModel model, sb_tail_model** out) {
  SB_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    sb::bounds::validate(model);
    *out = new sb_tail_model{std::move(model)};
  });
}

}  // namespace

extern "C" {

const char* sb_last_error(void) { return g_last_error.c_str(); }

const char* sb_version(void) { return "1.0.0"; }

sb_status sb_normal_cdf(double x, double* out) {
  SB_REQUIRE(out);
  return guarded([&] { *out = sb::gaussian::normal_cdf(x); });
}

sb_status sb_normal_tail(double x, double* out) {
  SB_REQUIRE(out);
  return guarded([&] { *out = sb::gaussian::normal_tail(x); });
}

sb_status sb_scaled_tail(double x, double* out) {
  SB_REQUIRE(out);
  return guarded([&] { *out = sb::gaussian::scaled_tail(x); });
}

sb_status sb_stein_solution(double z, double x, sb_stein_point* out) {
  SB_REQUIRE(out);
  return guarded([&] {
    const auto p = sb::gaussian::stein_solution(z, x);
    *out = sb_stein_point{p.z, p.x, p.value, p.derivative,
                          p.branch == sb::gaussian::Branch::Lower ? SB_BRANCH_LOWER
                                                                  : SB_BRANCH_UPPER};
  });
}

sb_status sb_check_lemma(double z, const double* grid, size_t n, sb_lemma_report* out) {
  SB_REQUIRE(out);
  return guarded([&] {
    const auto g = copy_array(grid, n);
    const auto r = sb::gaussian::check_lemma(z, g);
    *out = sb_lemma_report{r.z,
                           r.global_bound_ok ? 1 : 0,
                           r.center_value_ok ? 1 : 0,
                           r.center_derivative_ok ? 1 : 0,
                           r.center_points,
                           r.margins.positivity,
                           r.margins.global_value,
                           r.margins.global_derivative,
                           r.margins.center_value,
                           r.margins.center_derivative,
                           r.worst_margin};
  });
}

sb_status sb_tail_unit_create(sb_tail_model** out) {
  return make_tail(sb::bounds::tail::Unit{}, out);
}

sb_status sb_tail_markov_create(double p, double moment_p, sb_tail_model** out) {
  return make_tail(sb::bounds::tail::Markov{p, moment_p}, out);
}

sb_status sb_tail_major_create(int q, double c_q, sb_tail_model** out) {
  return make_tail(sb::bounds::tail::MajorChaos{q, c_q}, out);
}

sb_status sb_tail_expfun_create(double a, double t, sb_tail_model** out) {
  SB_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    const sb::expfun::ExpFunParams params{a, t};
    sb::expfun::validate(params);
    sb::bounds::TailModel m = sb::bounds::tail::ExpFunTwoSided{params, sb::expfun::moments(params)};
    sb::bounds::validate(m);
    *out = new sb_tail_model{std::move(m)};
  });
}

sb_status sb_tail_empirical_create(const double* samples, size_t n, sb_tail_model** out) {
  SB_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    auto ecdf = std::make_shared<const sb::empirical::EmpiricalCdf>(copy_array(samples, n));
    *out = new sb_tail_model{sb::bounds::tail::Empirical{std::move(ecdf)}};
  });
}

sb_status sb_tail_exact_create(sb_cdf_fn cdf, void* user_data, sb_tail_model** out) {
  SB_REQUIRE(cdf);
  return make_tail(
      sb::bounds::tail::ExactCdf{[cdf, user_data](double z) { return cdf(z, user_data); }}, out);
}

sb_status sb_tail_exact_q2_rank1_create(sb_tail_model** out) {
  return make_tail(sb::bounds::tail::ExactCdf{&sb::chaos::exact_cdf_q2_rank1}, out);
}

void sb_tail_model_destroy(sb_tail_model* model) { delete model; }

sb_status sb_tail_probability(const sb_tail_model* model, double x, double* out) {
  SB_REQUIRE(model);
  SB_REQUIRE(out);
  return guarded([&] { *out = sb::bounds::tail_probability(model->model, x); });
}

sb_status sb_nonuniform_bound(double mean_abs, double stein_discrepancy, const sb_tail_model* tail,
                              double z, double* out) {
  SB_REQUIRE(tail);
  SB_REQUIRE(out);
  return guarded([&] {
    const sb::bounds::BoundInputs in{mean_abs, stein_discrepancy, tail->model, {}};
    *out = sb::bounds::nonuniform_bound(in, z);
  });
}

sb_status sb_chaos_bound(int q, double fourth_moment, double c_q, double z, double* out) {
  SB_REQUIRE(out);
  return guarded([&] { *out = sb::bounds::chaos_bound(q, fourth_moment, c_q, z); });
}

sb_status sb_uniform_bound(double mean_abs, double stein_discrepancy, double* out) {
  SB_REQUIRE(out);
  return guarded([&] {
    const sb::bounds::BoundInputs in{mean_abs, stein_discrepancy, sb::bounds::tail::Unit{}, {}};
    *out = sb::bounds::uniform_bound(in);
  });
}

sb_status sb_bound_curve_evaluate(double mean_abs, double stein_discrepancy,
                                  const sb_tail_model* tail, const double* grid, size_t n,
                                  sb_bound_curve** out) {
  SB_REQUIRE(tail);
  SB_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    const sb::bounds::BoundInputs in{mean_abs, stein_discrepancy, tail->model, {}};
    const auto g = copy_array(grid, n);
    *out = new sb_bound_curve{sb::bounds::evaluate_curve(in, g)};
  });
}

size_t sb_bound_curve_size(const sb_bound_curve* curve) {
  return curve == nullptr ? 0 : curve->curve.rows.size();
}

sb_status sb_bound_curve_row(const sb_bound_curve* curve, size_t i, sb_bound_row* out) {
  SB_REQUIRE(curve);
  SB_REQUIRE(out);
  if (i >= curve->curve.rows.size())
    return fail(SB_ERR_INVALID_ARGUMENT, "row index out of range");
  const auto& r = curve->curve.rows[i];
  *out = sb_bound_row{r.z, r.tail_term, r.gaussian_term, r.bound};
  return SB_OK;
}

void sb_bound_curve_destroy(sb_bound_curve* curve) { delete curve; }

sb_status sb_hermite(int q, double x, double* out) {
  SB_REQUIRE(out);
  return guarded([&] { *out = sb::chaos::hermite(q, x); });
}

sb_status sb_chaos_variance(int q, const double* alphas, size_t n, double* out) {
  SB_REQUIRE(out);
  return guarded([&] { *out = sb::chaos::variance(make_spec(q, alphas, n)); });
}

sb_status sb_chaos_normalize(int q, const double* alphas, size_t n, double* out_alphas) {
  SB_REQUIRE(out_alphas);
  return guarded([&] {
    const auto s = sb::chaos::normalize(make_spec(q, alphas, n));
    for (size_t i = 0; i < n; ++i) out_alphas[i] = s.alphas[i];
  });
}

sb_status sb_chaos_evaluate(int q, const double* alphas, const double* normals, size_t n,
                            double* out) {
  SB_REQUIRE(out);
  return guarded([&] {
    const auto g = copy_array(normals, n);
    *out = sb::chaos::evaluate(make_spec(q, alphas, n), g);
  });
}

sb_status sb_chaos_sample(int q, const double* alphas, size_t n, uint64_t seed, size_t count,
                          unsigned workers, double* out_samples) {
  if (count > 0) SB_REQUIRE(out_samples);
  return guarded([&] {
    const auto v = sb::chaos::sample_many(make_spec(q, alphas, n), seed, count, workers);
    for (size_t i = 0; i < count; ++i) out_samples[i] = v[i];
  });
}

sb_status sb_chaos_fourth_moment(int q, const double* alphas, size_t n, uint64_t seed,
                                 size_t samples, double* out_value, double* out_se) {
  SB_REQUIRE(out_value);
  return guarded([&] {
    const auto m = sb::chaos::fourth_moment(make_spec(q, alphas, n), {seed, samples, 0});
    *out_value = m.value;
    if (out_se) *out_se = m.standard_error;
  });
}

sb_status sb_stein_discrepancy_upper(int q, double fourth_moment, double* out, int* clamped) {
  SB_REQUIRE(out);
  return guarded([&] {
    const auto d = sb::chaos::stein_discrepancy_upper(q, fourth_moment);
    *out = d.value;
    if (clamped) *clamped = d.clamped ? 1 : 0;
  });
}

sb_status sb_exact_cdf_q2_rank1(double z, double* out) {
  SB_REQUIRE(out);
  return guarded([&] { *out = sb::chaos::exact_cdf_q2_rank1(z); });
}

sb_status sb_expfun_moments_compute(double a, double t, sb_expfun_moments* out) {
  SB_REQUIRE(out);
  return guarded([&] {
    const auto m = sb::expfun::moments({a, t});
    *out = sb_expfun_moments{m.m_t, m.second_moment, m.sigma2_t, m.sigma_t};
  });
}

sb_status sb_expfun_path_functional(double a, double t, sb_scheme scheme,
                                    const double* increments, size_t n_steps, double* out) {
  SB_REQUIRE(out);
  return guarded([&] {
    const auto inc = copy_array(increments, n_steps);
    *out = sb::expfun::path_functional({a, t}, {n_steps, to_scheme(scheme)}, inc);
  });
}

sb_status sb_expfun_sample(double a, double t, size_t n_steps, sb_scheme scheme, uint64_t seed,
                           size_t count, unsigned workers, double* out_samples) {
  if (count > 0) SB_REQUIRE(out_samples);
  return guarded([&] {
    const auto v =
        sb::expfun::sample_many({a, t}, {n_steps, to_scheme(scheme)}, seed, count, workers);
    for (size_t i = 0; i < count; ++i) out_samples[i] = v[i];
  });
}

sb_status sb_expfun_tail_upper(double a, double t, double x, double* out) {
  SB_REQUIRE(out);
  return guarded([&] {
    const sb::expfun::ExpFunParams p{a, t};
    *out = sb::expfun::tail_upper_dk1(x, p, sb::expfun::moments(p));
  });
}

sb_status sb_expfun_tail_lower(double x, double* out) {
  SB_REQUIRE(out);
  return guarded([&] { *out = sb::expfun::tail_lower_dk2(x); });
}

sb_status sb_expfun_two_sided_tail(double a, double t, double z, double* out) {
  SB_REQUIRE(out);
  return guarded([&] {
    const sb::expfun::ExpFunParams p{a, t};
    *out = sb::expfun::two_sided_tail(z, p, sb::expfun::moments(p));
  });
}

sb_status sb_expfun_gamma_second_moment_upper(double a, double t, double* out) {
  SB_REQUIRE(out);
  return guarded([&] {
    const sb::expfun::ExpFunParams p{a, t};
    *out = sb::expfun::gamma_second_moment_upper(p, sb::expfun::moments(p));
  });
}

sb_status sb_expfun_vnms_bound(double a, double t, double z, double* out) {
  SB_REQUIRE(out);
  return guarded([&] {
    const sb::expfun::ExpFunParams p{a, t};
    *out = sb::expfun::vnms_bound(p, sb::expfun::moments(p), z);
  });
}

sb_status sb_ecdf_create(const double* samples, size_t n, sb_ecdf** out) {
  SB_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    *out = new sb_ecdf{
        std::make_shared<const sb::empirical::EmpiricalCdf>(copy_array(samples, n))};
  });
}

sb_status sb_ecdf_eval(const sb_ecdf* ecdf, double z, double* out) {
  SB_REQUIRE(ecdf);
  SB_REQUIRE(out);
  return guarded([&] { *out = (*ecdf->ecdf)(z); });
}

sb_status sb_ecdf_tail(const sb_ecdf* ecdf, double x, double* out) {
  SB_REQUIRE(ecdf);
  SB_REQUIRE(out);
  return guarded([&] { *out = sb::empirical::empirical_tail(*ecdf->ecdf, x); });
}

size_t sb_ecdf_size(const sb_ecdf* ecdf) { return ecdf == nullptr ? 0 : ecdf->ecdf->size(); }

void sb_ecdf_destroy(sb_ecdf* ecdf) { delete ecdf; }

sb_status sb_dkw_epsilon(size_t n, double delta, double* out) {
  SB_REQUIRE(out);
  return guarded([&] { *out = sb::empirical::dkw_epsilon(n, delta); });
}

sb_status sb_run_config_parse(int argc, const char* const* argv, sb_run_config** out) {
  SB_REQUIRE(argv);
  SB_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { *out = new sb_run_config{sb::report::parse_config(argc, argv)}; });
}

sb_status sb_run_config_set_output(sb_run_config* config, const char* path) {
  SB_REQUIRE(config);
  SB_REQUIRE(path);
  if (*path == '\0') return fail(SB_ERR_INVALID_ARGUMENT, "output path is empty");
  return guarded([&] { config->config.output_path = path; });
}

sb_status sb_run_config_set_workers(sb_run_config* config, unsigned workers) {
  SB_REQUIRE(config);
  config->config.workers = workers;
  return SB_OK;
}

void sb_run_config_destroy(sb_run_config* config) { delete config; }

sb_status sb_run(const sb_run_config* config, sb_run_summary* out) {
  SB_REQUIRE(config);
  return guarded([&] {
    auto r = sb::report::run(config->config);
    if (out) *out = sb_run_summary{r.exit_status, r.rows, r.violations, r.notes.size()};
    g_last_notes = std::move(r.notes);
  });
}

const char* sb_run_note(size_t i) {
  return i < g_last_notes.size() ? g_last_notes[i].c_str() : nullptr;
}

}  // extern "C"
