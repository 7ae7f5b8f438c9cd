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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>

#include "steinbound/bound.hpp"
#include "steinbound/chaos.hpp"
#include "steinbound/empirical.hpp"
#include "steinbound/expfun.hpp"
#include "steinbound/gaussian.hpp"
#include "steinbound/numeric.hpp"
#include "steinbound/report.hpp"

namespace steinbound::report {
namespace {

std::vector<double> grid_points(const Grid& g) { return linspace(g.min, g.max, g.count); }

// Rank-one second chaos, the one case with a closed-form law.
bool is_q2_rank_one(const chaos::DiagonalChaosSpec& spec) {
  if (spec.q != 2) return false;
  return std::count_if(spec.alphas.begin(), spec.alphas.end(), [](double a) { return a != 0.0; }) == 1;
}

// CDF of alpha H_2(N) normalized; the sign of alpha reflects the law.
std::function<double(double)> q2_rank_one_cdf(const chaos::DiagonalChaosSpec& spec) {
  const double sign = *std::find_if(spec.alphas.begin(), spec.alphas.end(),
                                    [](double a) { return a != 0.0; }) > 0.0 ? 1.0 : -1.0;
  if (sign > 0.0) return [](double z) { return chaos::exact_cdf_q2_rank1(z); };
  return [](double z) { return chaos::exact_survival_q2_rank1(-z); };
}

bool is_even_integer(double p) { return p >= 0.0 && p == std::floor(p) && std::fmod(p, 2.0) == 0.0; }

// Smallest grid |z| from which the bound stays below the uniform baseline.
std::optional<double> crossover(const bounds::BoundCurve& curve, double uniform) {
  std::optional<double> z_star;
  std::vector<std::pair<double, double>> by_abs;
  for (const auto& r : curve.rows) by_abs.emplace_back(std::fabs(r.z), r.bound);
  std::sort(by_abs.begin(), by_abs.end());
  for (auto it = by_abs.rbegin(); it != by_abs.rend(); ++it) {
    if (it->second < uniform)
      z_star = it->first;
    else
      break;
  }
  return z_star;
}

void add_crossover(ScenarioOutput& out, const bounds::BoundCurve& curve, double uniform) {
  const auto z_star = crossover(curve, uniform);
  if (z_star)
    out.summary.emplace_back("bound_below_uniform_from_abs_z", *z_star);
  else
    out.summary.emplace_back("bound_below_uniform_from_abs_z", std::string("none"));
}

struct ChaosSetup {
  chaos::DiagonalChaosSpec spec;
  double fourth_moment = 0.0;
  double fourth_moment_se = 0.0;
  bool fourth_moment_exact = false;
  double discrepancy = 0.0;
  TailChoice tail = TailChoice::Unit;
};

ChaosSetup setup_chaos(const RunConfig& c, ScenarioOutput& out) {
  ChaosSetup s;
  const chaos::DiagonalChaosSpec raw{c.q, c.alphas};
  s.spec = chaos::normalize(raw);
  if (std::fabs(chaos::variance(raw) - 1.0) > 1e-12)
    out.notes.push_back("alphas rescaled to unit variance");

  if (c.discrepancy) {
    s.discrepancy = *c.discrepancy;
  } else {
    const auto m4 = chaos::fourth_moment(s.spec, {c.seed, c.samples, c.workers});
    s.fourth_moment = m4.value;
    s.fourth_moment_se = m4.standard_error;
    s.fourth_moment_exact = m4.exact;
    const auto d = chaos::stein_discrepancy_upper(s.spec.q, m4.value);
    if (d.clamped)
      out.notes.push_back("warning: Monte Carlo fourth moment below 3; discrepancy clamped to 0");
    s.discrepancy = d.value;
  }

  if (c.tail) {
    s.tail = *c.tail;
  } else if (c.c_q) {
    s.tail = TailChoice::Major;
  } else if (is_q2_rank_one(s.spec)) {
    s.tail = TailChoice::Exact;
  } else {
    throw ConfigError("no tail model applies by default here; pass --tail (and --c-q for major)");
  }
  if (s.tail == TailChoice::Exact && !is_q2_rank_one(s.spec))
    throw ConfigError("--tail exact needs q = 2 with a single nonzero alpha");
  return s;
}

bounds::TailModel make_chaos_tail(const RunConfig& c, const ChaosSetup& s,
                                  const std::shared_ptr<const empirical::EmpiricalCdf>& ecdf) {
  switch (s.tail) {
    case TailChoice::Exact: return bounds::tail::ExactCdf{q2_rank_one_cdf(s.spec)};
    case TailChoice::Major: return bounds::tail::MajorChaos{s.spec.q, *c.c_q};
    case TailChoice::Unit: return bounds::tail::Unit{};
    case TailChoice::Empirical: return bounds::tail::Empirical{ecdf};
    case TailChoice::Markov: {
      if (c.markov_moment) return bounds::tail::Markov{c.markov_p, *c.markov_moment};
      if (is_q2_rank_one(s.spec) && is_even_integer(c.markov_p))
        return bounds::tail::Markov{
            c.markov_p, chaos::exact_abs_moment_q2_rank1(static_cast<int>(c.markov_p))};
      throw ConfigError("--tail markov needs --markov-moment here");
    }
    case TailChoice::ExpFun: break;
  }
  throw ConfigError("--tail " + tail_name(s.tail) + " does not apply to Wiener chaos");
}

Table discrepancy_table(const empirical::CertifyReport& report, const bounds::BoundCurve& curve,
                        double uniform) {
  Table t;
  t.columns = {"z", "empirical_cdf", "normal_cdf", "discrepancy", "se",
               "bound", "uniform_bound", "violated"};
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const auto& r = report.rows[i];
    t.rows.push_back({r.z, r.empirical_cdf, r.normal_cdf, r.discrepancy, r.standard_error,
                      curve.rows[i].bound, uniform, r.violated});
  }
  return t;
}

empirical::CertifyOptions certify_options(const RunConfig& c, std::size_t n) {
  empirical::CertifyOptions o;
  o.k = c.slack_k;
  o.mode = c.slack_mode == SlackChoice::Dkw ? empirical::SlackMode::Dkw
                                            : empirical::SlackMode::BinomialSe;
  o.dkw_delta = c.dkw_delta;
  o.sample_size = n;
  return o;
}

void add_certify_summary(ScenarioOutput& out, const empirical::CertifyReport& report,
                         const RunConfig& c) {
  out.summary.emplace_back("slack_mode", std::string(c.slack_mode == SlackChoice::Dkw ? "dkw" : "se"));
  out.summary.emplace_back("slack_k", c.slack_k);
  out.summary.emplace_back("checked", static_cast<std::int64_t>(report.checked));
  out.summary.emplace_back("violations", static_cast<std::int64_t>(report.violations));
  out.summary.emplace_back("max_discrepancy", report.max_discrepancy);
  out.summary.emplace_back("max_excess_over_bound", report.max_excess);
  out.violations = report.violations;
  out.exit_status = report.exit_status();
}

ScenarioOutput run_stein_check(const RunConfig& c) {
  ScenarioOutput out;
  out.table.columns = {"z", "x", "f", "f_prime", "ode_residual", "lemma_flags"};
  const auto zs = grid_points(c.z_grid);
  const auto xs = grid_points(c.x_grid);
  const double root = gaussian::kSqrt2Pi;
  double max_residual = 0.0;
  std::int64_t lemma_checked = 0;
  std::size_t violations = 0;
  double worst_margin = std::numeric_limits<double>::infinity();
  for (double z : zs) {
    const bool lemma_applies = z > 0.0;
    if (lemma_applies) {
      const auto lemma = gaussian::check_lemma(z, xs);
      ++lemma_checked;
      worst_margin = std::min(worst_margin, lemma.worst_margin);
    }
    const double decay = std::exp(-z * z / 4.0);
    for (double x : xs) {
      const auto p = gaussian::stein_solution(z, x);
      const double residual = gaussian::stein_ode_residual(z, x);
      max_residual = std::max(max_residual, residual);
      std::string flags = "---";
      if (lemma_applies) {
        const double slack = gaussian::kLemmaSlack;
        const bool global = p.value > 0.0 && p.value <= root / 4.0 + slack &&
                            std::fabs(p.derivative) <= 1.0 + slack;
        flags[0] = global ? '1' : '0';
        if (std::fabs(x) <= z / 2.0) {
          flags[1] = p.value <= root / 2.0 * decay + slack ? '1' : '0';
          flags[2] = std::fabs(p.derivative) <= 2.0 * decay + slack ? '1' : '0';
        }
        if (flags.find('0') != std::string::npos) ++violations;
      }
      out.table.rows.push_back({z, x, p.value, p.derivative, residual, flags});
    }
  }
  out.summary.emplace_back("z_points", static_cast<std::int64_t>(zs.size()));
  out.summary.emplace_back("x_points", static_cast<std::int64_t>(xs.size()));
  out.summary.emplace_back("lemma_z_checked", lemma_checked);
  out.summary.emplace_back("lemma_violations", static_cast<std::int64_t>(violations));
  out.summary.emplace_back("lemma_worst_margin", lemma_checked > 0 ? worst_margin : 0.0);
  out.summary.emplace_back("max_ode_residual", max_residual);
  if (lemma_checked < static_cast<std::int64_t>(zs.size()))
    out.notes.push_back("lemma estimates are only checked for z > 0");
  out.violations = violations;
  out.exit_status = violations == 0 ? 0 : 2;
  return out;
}

ScenarioOutput run_chaos_compare(const RunConfig& c) {
  ScenarioOutput out;
  const ChaosSetup s = setup_chaos(c, out);
  auto samples = chaos::sample_many(s.spec, c.seed, c.samples, c.workers);
  auto ecdf = std::make_shared<const empirical::EmpiricalCdf>(std::move(samples));

  bounds::BoundInputs inputs;
  inputs.mean_abs = 0.0;
  inputs.stein_discrepancy = s.discrepancy;
  inputs.tail = make_chaos_tail(c, s, ecdf);
  const auto zs = grid_points(c.z_grid);
  const auto curve = bounds::evaluate_curve(inputs, zs);
  const double uniform = bounds::uniform_bound(inputs);
  auto report = empirical::certify(empirical::discrepancy_curve(*ecdf, zs), curve,
                                   certify_options(c, ecdf->size()));
  out.table = discrepancy_table(report, curve, uniform);

  out.summary.emplace_back("q", static_cast<std::int64_t>(s.spec.q));
  out.summary.emplace_back("directions", static_cast<std::int64_t>(s.spec.alphas.size()));
  out.summary.emplace_back("samples", static_cast<std::int64_t>(ecdf->size()));
  out.summary.emplace_back("tail", tail_name(s.tail));
  if (!c.discrepancy) {
    out.summary.emplace_back("fourth_moment", s.fourth_moment);
    out.summary.emplace_back("fourth_moment_se", s.fourth_moment_se);
    out.summary.emplace_back("fourth_moment_exact", s.fourth_moment_exact);
  }
  out.summary.emplace_back("stein_discrepancy", s.discrepancy);
  if (c.c_q) {
    out.summary.emplace_back("c_q", *c.c_q);
    std::vector<double> xs;
    for (double z : zs)
      if (z >= 0.0) xs.push_back(z / 2.0);
    if (!xs.empty()) {
      out.summary.emplace_back("c_q_calibrated_diagnostic",
                               chaos::calibrate_major_constant(ecdf->sorted_samples(), s.spec.q, xs));
      out.notes.push_back(
          "c_q_calibrated_diagnostic is fitted to the samples on the tested range; it is not a "
          "proven constant");
    }
  }
  add_crossover(out, curve, uniform);
  add_certify_summary(out, report, c);
  return out;
}

ScenarioOutput run_expfun_compare(const RunConfig& c) {
  ScenarioOutput out;
  const expfun::ExpFunParams params{c.a, c.t};
  expfun::PathConfig path = expfun::default_path_config(c.t);
  if (c.n_steps) path.n_steps = *c.n_steps;
  path.scheme = c.scheme == "leftpoint" ? expfun::Scheme::LeftPoint : expfun::Scheme::Trapezoid;
  const auto m = expfun::moments(params);

  auto raw = expfun::sample_many(params, path, c.seed, c.samples, c.workers);
  CompensatedSum sum;
  for (double f : raw) sum.add(f);
  const double sample_mean = sum.value() / static_cast<double>(raw.size());
  double min_standardized = std::numeric_limits<double>::infinity();
  for (double& f : raw) {
    f = expfun::standardize(f, m);
    min_standardized = std::min(min_standardized, f);
  }
  auto ecdf = std::make_shared<const empirical::EmpiricalCdf>(std::move(raw));

  const TailChoice tail = c.tail.value_or(TailChoice::ExpFun);
  bounds::BoundInputs inputs;
  inputs.mean_abs = 0.0;
  inputs.stein_discrepancy = expfun::vnms_prefactor(params, m);
  inputs.source = bounds::DiscrepancySource::Skorokhod;
  switch (tail) {
    case TailChoice::ExpFun: inputs.tail = bounds::tail::ExpFunTwoSided{params, m}; break;
    case TailChoice::Unit: inputs.tail = bounds::tail::Unit{}; break;
    case TailChoice::Empirical: inputs.tail = bounds::tail::Empirical{ecdf}; break;
    case TailChoice::Markov:
      if (!c.markov_moment) throw ConfigError("--tail markov needs --markov-moment here");
      inputs.tail = bounds::tail::Markov{c.markov_p, *c.markov_moment};
      break;
    default: throw ConfigError("--tail " + tail_name(tail) + " does not apply to expfun-compare");
  }
  const auto zs = grid_points(c.z_grid);
  std::function<double(double)> explicit_bound;
  if (tail == TailChoice::ExpFun)
    explicit_bound = [&](double z) { return expfun::vnms_bound(params, m, z); };
  const auto curve = bounds::evaluate_curve(inputs, zs, explicit_bound);
  const double uniform = bounds::uniform_bound(inputs);
  auto report = empirical::certify(empirical::discrepancy_curve(*ecdf, zs), curve,
                                   certify_options(c, ecdf->size()));
  out.table = discrepancy_table(report, curve, uniform);

  out.summary.emplace_back("a", c.a);
  out.summary.emplace_back("t", c.t);
  out.summary.emplace_back("n_steps", static_cast<std::int64_t>(path.n_steps));
  out.summary.emplace_back("scheme", c.scheme);
  out.summary.emplace_back("samples", static_cast<std::int64_t>(ecdf->size()));
  out.summary.emplace_back("tail", tail_name(tail));
  out.summary.emplace_back("m_t", m.m_t);
  out.summary.emplace_back("sigma2_t", m.sigma2_t);
  out.summary.emplace_back("sample_mean_F_t", sample_mean);
  out.summary.emplace_back("stein_discrepancy", inputs.stein_discrepancy);
  out.summary.emplace_back("min_standardized_sample", min_standardized);
  out.summary.emplace_back("support_lower_bound", -m.m_t / m.sigma_t);
  add_crossover(out, curve, uniform);
  add_certify_summary(out, report, c);
  out.notes.push_back(
      "samples come from a discretized path; their O(step) bias relative to the exact law is an "
      "unquantified allowance in this certification");
  return out;
}

ScenarioOutput run_bound_only(const RunConfig& c) {
  ScenarioOutput out;
  bounds::BoundInputs inputs;
  inputs.mean_abs = c.mean_abs.value_or(0.0);
  const auto zs = grid_points(c.z_grid);
  std::function<double(double)> explicit_bound;
  std::optional<expfun::ExpFunParams> params;
  std::optional<expfun::ExpFunMoments> m;
  TailChoice resolved = TailChoice::ExpFun;

  if (c.tail == TailChoice::ExpFun) {
    params = expfun::ExpFunParams{c.a, c.t};
    m = expfun::moments(*params);
    inputs.stein_discrepancy = c.discrepancy.value_or(expfun::vnms_prefactor(*params, *m));
    inputs.source = bounds::DiscrepancySource::Skorokhod;
    inputs.tail = bounds::tail::ExpFunTwoSided{*params, *m};
    if (!c.discrepancy && !c.mean_abs)
      explicit_bound = [&](double z) { return expfun::vnms_bound(*params, *m, z); };
    out.summary.emplace_back("a", c.a);
    out.summary.emplace_back("t", c.t);
    out.summary.emplace_back("m_t", m->m_t);
    out.summary.emplace_back("sigma2_t", m->sigma2_t);
  } else {
    const ChaosSetup s = setup_chaos(c, out);
    resolved = s.tail;
    inputs.stein_discrepancy = s.discrepancy;
    inputs.tail = make_chaos_tail(c, s, nullptr);
    out.summary.emplace_back("q", static_cast<std::int64_t>(s.spec.q));
    if (!c.discrepancy) {
      out.summary.emplace_back("fourth_moment", s.fourth_moment);
      out.summary.emplace_back("fourth_moment_se", s.fourth_moment_se);
      out.summary.emplace_back("fourth_moment_exact", s.fourth_moment_exact);
    }
    if (s.tail == TailChoice::Major && !c.mean_abs && !c.discrepancy) {
      const int q = s.spec.q;
      const double m4 = s.fourth_moment;
      const double cq = *c.c_q;
      if (m4 >= 3.0)
        explicit_bound = [q, m4, cq](double z) { return bounds::chaos_bound(q, m4, cq, z); };
    }
  }
  const auto curve = bounds::evaluate_curve(inputs, zs, explicit_bound);
  const double uniform = bounds::uniform_bound(inputs);
  out.table.columns = {"z", "tail_term", "gaussian_term", "bound", "uniform_bound"};
  for (const auto& r : curve.rows)
    out.table.rows.push_back({r.z, r.tail_term, r.gaussian_term, r.bound, uniform});
  out.summary.emplace_back("tail", tail_name(resolved));
  out.summary.emplace_back("mean_abs", inputs.mean_abs);
  out.summary.emplace_back("stein_discrepancy", inputs.stein_discrepancy);
  out.summary.emplace_back("uniform_bound", uniform);
  add_crossover(out, curve, uniform);
  return out;
}

}  // namespace

ScenarioOutput execute(const RunConfig& config) {
  validate(config);
  switch (config.scenario) {
    case Scenario::SteinCheck: return run_stein_check(config);
    case Scenario::ChaosCompare: return run_chaos_compare(config);
    case Scenario::ExpFunCompare: return run_expfun_compare(config);
    case Scenario::BoundOnly: return run_bound_only(config);
  }
  throw ConfigError("unknown scenario");
}

RunResult run(const RunConfig& config) {
  const ScenarioOutput out = execute(config);
  const std::string bytes = render(config, out);
  if (config.output_path == "-") {
    std::cout << bytes;
    std::cout.flush();
  } else {
    std::ofstream file(config.output_path, std::ios::binary | std::ios::trunc);
    if (!file) throw std::runtime_error("cannot open output file '" + config.output_path + "'");
    file.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!file) throw std::runtime_error("failed writing output file '" + config.output_path + "'");
  }
  return {out.exit_status, out.table.rows.size(), out.violations, out.notes};
}

}  // namespace steinbound::report
