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

// Acceptance suite: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "oracles.hpp"
#include "steinbound/bound.hpp"
#include "steinbound/chaos.hpp"
#include "steinbound/empirical.hpp"
#include "steinbound/expfun.hpp"
#include "steinbound/gaussian.hpp"
#include "steinbound/numeric.hpp"
#include "steinbound/parallel.hpp"
#include "steinbound/report.hpp"
#include "steinbound/rng.hpp"
#include "steinbound/steinbound.h"

namespace sb = steinbound;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;
auto g_mark = Clock::now();

void report(int id, bool ok, const std::string& name, const std::string& detail) {
  const double secs = std::chrono::duration<double>(Clock::now() - g_mark).count();
  std::printf("%s  %2d  %-36s %s [%.1fs]\n", ok ? "PASS" : "FAIL", id, name.c_str(), detail.c_str(), secs);
  std::fflush(stdout);
  if (!ok) ++g_failures;
  g_mark = Clock::now();
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

struct MeanVar {
  double mean = 0.0;
  double var = 0.0;
  double mean_se = 0.0;
  double var_se = 0.0;
};

MeanVar mean_var(const std::vector<double>& v) {
  const double n = static_cast<double>(v.size());
  sb::CompensatedSum s;
  for (double x : v) s.add(x);
  const double mean = s.value() / n;
  sb::CompensatedSum s2, s4;
  for (double x : v) {
    const double d = (x - mean) * (x - mean);
    s2.add(d);
    s4.add(d * d);
  }
  const double var = s2.value() / (n - 1.0);
  const double m4 = s4.value() / n;
  return {mean, var, std::sqrt(var / n), std::sqrt(std::max(0.0, m4 - var * var) / n)};
}

// ---------------------------------------------------------------------------

void criterion_1() {
  const auto t0 = Clock::now();
  double worst = 0.0;
  const auto xs = sb::linspace(-12.0, 12.0, 2401);
  for (int i = -24; i <= 24; ++i) {
    const double z = 0.25 * i;
    for (double x : xs) worst = std::max(worst, std::fabs(sb::gaussian::stein_ode_residual(z, x)));
  }
  const double secs = seconds_since(t0);
  report(1, worst <= 1e-9 && secs < 5.0, "Stein ODE residual",
         fmt("max=%.3e (tol 1e-9)", worst) + fmt(" time=%.2fs (< 5s)", secs));
}

void criterion_2() {
  const auto xs = sb::linspace(-12.0, 12.0, 4801);
  const double slack = 1e-12;
  const double global_value = sb::gaussian::kSqrt2Pi / 4.0;
  std::size_t violations = 0, center_points = 0, checked = 0;
  bool agrees = true;
  for (double z : {0.1, 0.5, 1.0, 2.0, 4.0, 6.0, 10.0}) {
    const double e = std::exp(-z * z / 4.0);
    for (double x : xs) {
      const auto p = sb::gaussian::stein_solution(z, x);
      ++checked;
      if (!(p.value > 0.0) || p.value > global_value + slack ||
          std::fabs(p.derivative) > 1.0 + slack)
        ++violations;
      if (std::fabs(x) <= z / 2.0) {
        ++center_points;
        if (p.value > sb::gaussian::kSqrt2Pi / 2.0 * e + slack ||
            std::fabs(p.derivative) > 2.0 * e + slack)
          ++violations;
      }
    }
    const auto r = sb::gaussian::check_lemma(z, xs);
    agrees = agrees && r.global_bound_ok && r.center_value_ok && r.center_derivative_ok;
  }
  report(2, violations == 0 && agrees && center_points > 0, "Lemma estimates",
         "points=" + std::to_string(checked) + " center=" + std::to_string(center_points) +
             " violations=" + std::to_string(violations));
}

void criterion_3() {
  const auto t0 = Clock::now();
  const auto zs = sb::linspace(-8.0, 8.0, 321);
  const double d = sb::chaos::stein_discrepancy_upper(2, 15.0).value;
  const sb::bounds::BoundInputs in{0.0, d, sb::bounds::tail::ExactCdf{&sb::chaos::exact_cdf_q2_rank1},
                                   sb::bounds::DiscrepancySource::InverseOrnsteinUhlenbeck};
  std::size_t violations = 0;
  double worst_ratio = 0.0, bound_err = 0.0;
  for (double z : zs) {
    const double disc = std::fabs(oracle::chaos_q2_rank1_cdf(z) - oracle::normal_cdf(z));
    const double bound = sb::bounds::nonuniform_bound(in, z);
    // Independent evaluation of the same bound with the oracle tail.
    const double x = std::fabs(z) / 2.0;
    const double tail = 1.0 - oracle::chaos_q2_rank1_cdf(x) + oracle::chaos_q2_rank1_cdf(-x);
    const double ref = std::sqrt(2.0) * (std::sqrt(std::clamp(tail, 0.0, 1.0)) + 2.0 * std::exp(-z * z / 4.0));
    bound_err = std::max(bound_err, std::fabs(bound - ref) / ref);
    if (disc > bound) ++violations;
    worst_ratio = std::max(worst_ratio, disc / bound);
  }
  const double secs = seconds_since(t0);
  const bool ok = violations == 0 && std::fabs(d - std::sqrt(2.0)) < 1e-15 && bound_err < 1e-9 && secs < 1.0;
  report(3, ok, "Exact q=2 chaos certification",
         "violations=" + std::to_string(violations) + fmt(" max disc/bound=%.4f", worst_ratio) +
             fmt(" bound rel err=%.1e", bound_err) + fmt(" time=%.3fs (< 1s)", secs));
}

void criterion_4() {
  const sb::chaos::DiagonalChaosSpec spec =
      sb::chaos::normalize({2, {1.0}});
  const auto samples = sb::chaos::sample_many(spec, 20240601, 1'000'000, 0);
  const auto m4 = sb::chaos::sample_fourth_moment(samples);
  const auto d = sb::chaos::stein_discrepancy_upper(2, m4.value);
  const double d_se = sb::chaos::stein_discrepancy_se(2, m4.value, m4.standard_error);
  const bool ok_m4 = std::fabs(m4.value - 15.0) <= 3.0 * m4.standard_error;
  const bool ok_d = std::fabs(d.value - std::sqrt(2.0)) <= 3.0 * d_se;
  report(4, ok_m4 && ok_d, "Monte Carlo fourth moment",
         fmt("m4=%.5f", m4.value) + fmt(" se=%.5f", m4.standard_error) +
             fmt(" (%.2f se)", (m4.value - 15.0) / m4.standard_error) + fmt(" d=%.5f", d.value) +
             fmt(" se=%.5f", d_se));
}

void criterion_5() {
  const double a = 0.0, t = 0.1;
  const auto m = sb::expfun::moments({a, t});
  const double mean_ref = oracle::expfun_mean(a, t);
  const double var_ref = oracle::expfun_variance(a, t);
  const double rel_m = std::fabs(m.m_t - mean_ref) / mean_ref;
  const double rel_v = std::fabs(m.sigma2_t - var_ref) / var_ref;
  const bool ok_closed = rel_m <= 1e-10 && rel_v <= 1e-10;

  // Coupled paths: the coarse path (2000 steps) uses pairwise sums of the
  // fine path's (4000 steps) increments, so both see the same Brownian path.
  const std::size_t paths = 200'000, coarse_n = 2000, fine_n = 4000;
  const sb::expfun::ExpFunParams p{a, t};
  std::vector<double> coarse(paths), fine(paths);
  const std::uint64_t key = sb::derive_key(7, sb::purpose::kExpFunPaths);
  const double sd = std::sqrt(t / static_cast<double>(fine_n));
  sb::parallel_blocks(paths, 0, [&](std::size_t begin, std::size_t end) {
    std::vector<double> inc_f(fine_n), inc_c(coarse_n);
    for (std::size_t i = begin; i < end; ++i) {
      sb::NormalStream normals(key, i);
      for (double& w : inc_f) w = sd * normals();
      for (std::size_t k = 0; k < coarse_n; ++k) inc_c[k] = inc_f[2 * k] + inc_f[2 * k + 1];
      fine[i] = sb::expfun::path_functional(p, {fine_n, sb::expfun::Scheme::Trapezoid}, inc_f);
      coarse[i] = sb::expfun::path_functional(p, {coarse_n, sb::expfun::Scheme::Trapezoid}, inc_c);
    }
  });
  const auto c = mean_var(coarse);
  const auto f = mean_var(fine);
  const bool ok_mc = std::fabs(c.mean - m.m_t) <= 3.0 * c.mean_se &&
                     std::fabs(c.var - m.sigma2_t) <= 3.0 * c.var_se;
  const bool ok_refine = std::fabs(f.mean - c.mean) < c.mean_se && std::fabs(f.var - c.var) < c.var_se;
  report(5, ok_closed && ok_mc && ok_refine, "Exponential functional moments",
         fmt("rel(m)=%.1e", rel_m) + fmt(" rel(s2)=%.1e", rel_v) +
             fmt(" mc mean %.2f se", (c.mean - m.m_t) / c.mean_se) +
             fmt(" mc var %.2f se", (c.var - m.sigma2_t) / c.var_se) +
             fmt(" refine %.3f se", std::max(std::fabs(f.mean - c.mean) / c.mean_se,
                                             std::fabs(f.var - c.var) / c.var_se)));
}

void criterion_6() {
  const double a = 0.0, t = 1e-3;
  const auto m = sb::expfun::moments({a, t});
  const double r1 = std::fabs(m.m_t / t - 1.0);
  const double r2 = std::fabs(3.0 * m.sigma2_t / (t * t * t) - 1.0);
  const double pref = 2.0 * std::exp(2.0 * a * t + 4.0 * t) * t * t * t / m.sigma2_t;
  const double r3 = std::fabs(pref / 6.0 - 1.0);
  const double z = 1.0;
  const double l = std::log1p(std::fabs(z) * m.sigma_t / (2.0 * m.m_t));
  const double expo = l * l / (4.0 * t);
  const double r4 = std::fabs(expo / (z * z / 48.0) - 1.0);
  report(6, r1 <= 1e-3 && r2 <= 1e-2 && r3 <= 0.01 && r4 <= 0.03, "Small-t asymptotics",
         fmt("|m/t-1|=%.2e", r1) + fmt(" |3s2/t^3-1|=%.2e", r2) + fmt(" prefactor %.2e", r3) +
             fmt(" exponent %.2e", r4));
}

// Returns true if all tail checks pass; appends a description to detail.
bool concentration_check(double t, const std::vector<double>& raw, std::string& detail) {
  const sb::expfun::ExpFunParams p{0.0, t};
  const auto m = sb::expfun::moments(p);
  const std::size_t n = raw.size();
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = sb::expfun::standardize(raw[i], m);
  bool ok = true;
  double worst = -1.0;
  for (double x : {0.5, 1.0, 1.5, 2.0}) {
    std::size_t up = 0, down = 0;
    for (double v : g) {
      up += v > x;
      down += v < -x;
    }
    const double pu = static_cast<double>(up) / static_cast<double>(n);
    const double pd = static_cast<double>(down) / static_cast<double>(n);
    const double bu = sb::expfun::tail_upper_dk1(x, p, m);
    const double bd = sb::expfun::tail_lower_dk2(x);
    const double su = sb::empirical::binomial_se(pu, n);
    const double sd = sb::empirical::binomial_se(pd, n);
    ok = ok && pu <= bu + 3.0 * su && pd <= bd + 3.0 * sd;
    worst = std::max({worst, pu - bu - 3.0 * su, pd - bd - 3.0 * sd});
  }
  detail += fmt(" t=%.2f", t) + fmt(" worst excess=%.3f", worst);
  return ok;
}

void criteria_7_and_8() {
  const std::size_t n = 1'000'000;
  std::string detail;
  bool ok7 = true;
  for (double t : {0.05, 0.1}) {
    const sb::expfun::ExpFunParams p{0.0, t};
    const auto raw = sb::expfun::sample_many(p, sb::expfun::default_path_config(t), 42, n, 0);
    ok7 = concentration_check(t, raw, detail) && ok7;
  }
  report(7, ok7, "Concentration tails", detail.substr(1));

  const auto t0 = Clock::now();
  sb::report::RunConfig cfg;
  cfg.scenario = sb::report::Scenario::ExpFunCompare;
  cfg.samples = n;
  cfg.a = 0.0;
  cfg.t = 0.05;
  cfg.z_grid = {-5.0, 5.0, 101};
  cfg.slack_k = 3.0;
  cfg.workers = 0;
  sb::report::validate(cfg);
  const auto out = sb::report::execute(cfg);
  const double secs = seconds_since(t0);
  report(8, out.exit_status == 0 && out.violations == 0 && out.table.rows.size() == 101 && secs <= 300.0,
         "Exponential functional certification",
         "exit=" + std::to_string(out.exit_status) + " violations=" + std::to_string(out.violations) +
             fmt(" time=%.1fs (<= 300s)", secs));
}

void criterion_9() {
  const double moment = sb::chaos::exact_abs_moment_q2_rank1(6);
  const double moment_ref = oracle::chaos_q2_rank1_abs_moment(6.0);
  const double d = sb::chaos::stein_discrepancy_upper(2, 15.0).value;
  const sb::bounds::BoundInputs in{0.0, d, sb::bounds::tail::Markov{6.0, moment}, {}};
  const double scale = 0.0 + d;  // mean_abs + d
  auto sweep = [&] {
    std::vector<double> ratio;
    for (double z : sb::linspace(0.0, 50.0, 5001))
      ratio.push_back(sb::bounds::nonuniform_bound(in, z) * (1.0 + std::pow(std::fabs(z), 3)) / scale);
    return ratio;
  };
  const auto r1 = sweep();
  const auto r2 = sweep();
  const double sup = *std::max_element(r1.begin(), r1.end());
  const double limit = std::sqrt(64.0 * moment);
  // Late terms must settle on the Markov limit.
  const double late = *std::max_element(r1.end() - 1001, r1.end());
  const bool ok = std::fabs(moment - 755.0) < 1e-12 && std::fabs(moment_ref - 755.0) < 1e-6 &&
                  std::isfinite(sup) && r1 == r2 && std::fabs(late / limit - 1.0) < 0.01;
  report(9, ok, "Markov rate bounded sequence",
         fmt("E|F|^6=%.6g", moment) + fmt(" sup=%.6g", sup) + fmt(" tail sup=%.6g", late) +
             fmt(" limit=%.6g", limit));
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

bool run_capi(const std::vector<std::string>& args, unsigned workers, const std::filesystem::path& out,
              std::string& error) {
  std::vector<const char*> argv{"steinbound"};
  for (const auto& a : args) argv.push_back(a.c_str());
  sb_run_config* cfg = nullptr;
  if (sb_run_config_parse(static_cast<int>(argv.size()), argv.data(), &cfg) != SB_OK) {
    error = sb_last_error();
    return false;
  }
  const std::string path = out.string();
  sb_run_summary summary;
  const bool ok = sb_run_config_set_workers(cfg, workers) == SB_OK &&
                  sb_run_config_set_output(cfg, path.c_str()) == SB_OK && sb_run(cfg, &summary) == SB_OK;
  if (!ok) error = sb_last_error();
  sb_run_config_destroy(cfg);
  return ok;
}

void criterion_10() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("steinbound_accept_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const std::vector<std::vector<std::string>> scenarios = {
      {"stein-check", "--z-count", "13"},
      {"chaos-compare", "--samples", "60000", "--seed", "11", "--format", "json"},
      {"chaos-compare", "--q", "3", "--alphas", "1,0.5,0.25", "--c-q", "2", "--samples", "30000"},
      {"expfun-compare", "--samples", "20000", "--t", "0.05", "--seed", "5"},
      {"expfun-compare", "--samples", "10000", "--t", "0.1", "--tail", "unit", "--format", "json"},
      {"bound-only", "--tail", "markov", "--z-count", "101"},
  };
  std::size_t identical = 0;
  std::string error;
  for (std::size_t s = 0; s < scenarios.size(); ++s) {
    std::vector<std::string> files;
    for (unsigned workers : {1u, 8u, 1u, 8u}) {
      const fs::path out = dir / ("s" + std::to_string(s) + "_" + std::to_string(files.size()));
      if (!run_capi(scenarios[s], workers, out, error)) break;
      files.push_back(slurp(out));
    }
    if (files.size() == 4 && !files[0].empty() &&
        std::all_of(files.begin(), files.end(), [&](const auto& f) { return f == files[0]; }))
      ++identical;
  }
  fs::remove_all(dir);
  report(10, identical == scenarios.size() && error.empty(), "Determinism across workers",
         std::to_string(identical) + "/" + std::to_string(scenarios.size()) +
             " scenarios byte-identical at 1 and 8 workers" + (error.empty() ? "" : " error: " + error));
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criteria_7_and_8();
  criterion_9();
  criterion_10();
  std::printf("%d of 10 criteria failed (%.1fs)\n", g_failures, seconds_since(t0));
  return g_failures == 0 ? 0 : 1;
}
