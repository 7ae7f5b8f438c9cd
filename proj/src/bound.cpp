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

#include "steinbound/bound.hpp"

#include <algorithm>
#include <cmath>

#include "steinbound/numeric.hpp"

namespace steinbound::bounds {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double clamp01(double v) {
  if (std::isnan(v)) throw std::domain_error("tail model produced NaN");
  return std::clamp(v, 0.0, 1.0);
}

}  // namespace

void validate(const TailModel& model) {
  std::visit(overloaded{
                 [](const tail::ExactCdf& m) {
                   if (!m.cdf) throw std::invalid_argument("ExactCdf tail: missing cdf");
                 },
                 [](const tail::Markov& m) {
                   if (!(m.p > 0.0) || !std::isfinite(m.p))
                     throw std::invalid_argument("Markov tail: p must be > 0");
                   if (!(m.moment_p >= 0.0) || !std::isfinite(m.moment_p))
                     throw std::invalid_argument("Markov tail: moment must be finite and >= 0");
                 },
                 [](const tail::MajorChaos& m) {
                   if (m.q < 2) throw std::invalid_argument("MajorChaos tail: q must be >= 2");
                   if (!(m.c_q > 0.0) || !std::isfinite(m.c_q))
                     throw std::invalid_argument("MajorChaos tail: c_q must be > 0");
                 },
                 [](const tail::ExpFunTwoSided& m) {
                   expfun::validate(m.params);
                   if (!(m.moments.sigma_t > 0.0) || !(m.moments.m_t > 0.0))
                     throw std::invalid_argument("ExpFunTwoSided tail: moments not set");
                 },
                 [](const tail::Empirical& m) {
                   if (!m.samples) throw std::invalid_argument("Empirical tail: no samples");
                 },
                 [](const tail::Unit&) {},
             },
             model);
}

double tail_probability(const TailModel& model, double x) {
  if (!(x >= 0.0)) throw std::invalid_argument("tail_probability: x must be >= 0");
  validate(model);
  return std::visit(
      overloaded{
          [&](const tail::ExactCdf& m) {
            if (std::isinf(x)) return 0.0;
            return clamp01(1.0 - m.cdf(x) + m.cdf(-x));
          },
          [&](const tail::Markov& m) {
            if (x == 0.0) return 1.0;
            return clamp01(m.moment_p / std::pow(x, m.p));
          },
          [&](const tail::MajorChaos& m) {
            return clamp01(m.c_q * m.c_q * std::exp(-0.5 * std::pow(x, 2.0 / m.q)));
          },
          [&](const tail::ExpFunTwoSided& m) {
            return clamp01(expfun::tail_upper_dk1(x, m.params, m.moments) +
                           expfun::tail_lower_dk2(x));
          },
          [&](const tail::Empirical& m) { return empirical::empirical_tail(*m.samples, x); },
          [](const tail::Unit&) { return 1.0; },
      },
      model);
}

void validate(const BoundInputs& inputs) {
  if (!(inputs.mean_abs >= 0.0) || !std::isfinite(inputs.mean_abs))
    throw std::invalid_argument("bound inputs: mean_abs must be finite and >= 0");
  if (!(inputs.stein_discrepancy >= 0.0) || !std::isfinite(inputs.stein_discrepancy))
    throw std::invalid_argument("bound inputs: stein_discrepancy must be finite and >= 0");
  validate(inputs.tail);
}

namespace {

BoundRow bound_row(const BoundInputs& inputs, double z) {
  require_finite(z, "nonuniform_bound z");
  BoundRow r;
  r.z = z;
  r.tail_term = tail_probability(inputs.tail, std::fabs(z) / 2.0);
  r.gaussian_term = 2.0 * std::exp(-z * z / 4.0);
  r.bound = (inputs.mean_abs + inputs.stein_discrepancy) * (std::sqrt(r.tail_term) + r.gaussian_term);
  return r;
}

}  // namespace

double nonuniform_bound(const BoundInputs& inputs, double z) {
  validate(inputs);
  return bound_row(inputs, z).bound;
}

double chaos_bound(int q, double fourth_moment, double c_q, double z) {
  if (q < 2) throw std::invalid_argument("chaos_bound: q must be >= 2");
  if (!(c_q > 0.0) || !std::isfinite(c_q))
    throw std::invalid_argument("chaos_bound: c_q must be > 0");
  require_finite(z, "chaos_bound z");
  if (!std::isfinite(fourth_moment) || fourth_moment < 3.0)
    throw std::domain_error(
        "chaos_bound: fourth moment " + std::to_string(fourth_moment) +
        " < 3 is impossible for a unit-variance chaos of order >= 2 (check the normalization)");
  const double d = std::sqrt((q - 1.0) / (3.0 * q) * (fourth_moment - 3.0));
  const double az = std::fabs(z);
  const double major = c_q * std::exp(-std::pow(az, 2.0 / q) / std::pow(2.0, 2.0 + 2.0 / q));
  return d * (major + 2.0 * std::exp(-z * z / 4.0));
}

double uniform_bound(const BoundInputs& inputs) {
  validate(inputs);
  return inputs.stein_discrepancy;
}

CurvePointError::CurvePointError(double z, const std::string& what)
    : std::invalid_argument("bound curve at z=" + std::to_string(z) + ": " + what), z_(z) {}

BoundCurve evaluate_curve(const BoundInputs& inputs, std::span<const double> grid) {
  return evaluate_curve(inputs, grid, {});
}

BoundCurve evaluate_curve(const BoundInputs& inputs, std::span<const double> grid,
                          const std::function<double(double)>& bound_override) {
  validate(inputs);
  if (grid.empty()) throw std::invalid_argument("evaluate_curve: empty grid");
  BoundCurve curve;
  curve.rows.reserve(grid.size());
  for (double z : grid) {
    try {
      BoundRow r = bound_row(inputs, z);
      if (bound_override) {
        r.bound = bound_override(z);
        if (!std::isfinite(r.bound) || r.bound < 0.0)
          throw std::domain_error("bound must be finite and >= 0, got " + std::to_string(r.bound));
      }
      curve.rows.push_back(r);
    } catch (const std::exception& e) {
      throw CurvePointError(z, e.what());
    }
  }
  return curve;
}

}  // namespace steinbound::bounds
