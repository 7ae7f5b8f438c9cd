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

#include "steinbound/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "steinbound/numeric.hpp"

namespace steinbound::gaussian {
namespace {

constexpr double kInvSqrt2 = 0.707106781186547524400844362104849;

// exp(x^2/2) with the rounding error of x*x folded back in.
double exp_half_square(double x) {
  const double sq = x * x;
  const double err = std::fma(x, x, -sq);
  return std::exp(0.5 * sq) * (1.0 + 0.5 * err);
}

// Mills ratio (1 - Phi(x)) / phi(x) by Lentz's continued fraction
// 1/(x + 1/(x + 2/(x + 3/(x + ...)))). Only used for x >= 8 where it
// converges in a few dozen terms.
double mills_ratio_cf(double x) {
  constexpr double tiny = 1e-300;
  constexpr double eps = 1e-17;
  double f = x;
  double c = x;
  double d = 0.0;
  for (int k = 1; k < 5000; ++k) {
    const double a = k;
    d = x + a * d;
    if (d == 0.0) d = tiny;
    c = x + a / c;
    if (c == 0.0) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::fabs(delta - 1.0) < eps) break;
  }
  return 1.0 / f;
}

}  // namespace

double normal_cdf(double x) {
  require_finite(x, "normal_cdf");
  return 0.5 * std::erfc(-x * kInvSqrt2);
}

double normal_tail(double x) {
  require_finite(x, "normal_tail");
  return 0.5 * std::erfc(x * kInvSqrt2);
}

double scaled_tail(double x) {
  require_finite(x, "scaled_tail");
  if (x >= 8.0) return mills_ratio_cf(x);
  if (x < -37.5) return std::numeric_limits<double>::infinity();
  return kSqrt2Pi * exp_half_square(x) * (0.5 * std::erfc(x * kInvSqrt2));
}

double stein_branch_value(double z, double x, Branch branch) {
  require_finite(z, "stein_solution z");
  require_finite(x, "stein_solution x");
  // Each branch is sqrt(2pi) e^{x^2/2} times a product of two normal
  // probabilities. Pair the Gaussian factor with whichever probability keeps
  // the exponent non-positive so nothing overflows.
  if (branch == Branch::Lower) {
    // sqrt(2pi) e^{x^2/2} Phi(x) (1 - Phi(z))
    if (x <= 0.0) return scaled_tail(-x) * normal_tail(z);
    if (x <= z)
      return normal_cdf(x) * scaled_tail(z) * std::exp(0.5 * (x - z) * (x + z));
    return normal_cdf(x) * normal_tail(z) * kSqrt2Pi * exp_half_square(x);
  }
  // sqrt(2pi) e^{x^2/2} (1 - Phi(x)) Phi(z)
  if (x >= 0.0) return scaled_tail(x) * normal_cdf(z);
  if (z < x)
    return normal_tail(x) * scaled_tail(-z) * std::exp(0.5 * (x - z) * (x + z));
  return normal_tail(x) * normal_cdf(z) * kSqrt2Pi * exp_half_square(x);
}

SteinSolutionPoint stein_solution(double z, double x) {
  SteinSolutionPoint p;
  p.z = z;
  p.x = x;
  p.branch = x <= z ? Branch::Lower : Branch::Upper;
  p.value = stein_branch_value(z, x, p.branch);
  const double indicator = p.branch == Branch::Lower ? 1.0 : 0.0;
  p.derivative = x * p.value + indicator - normal_cdf(z);
  return p;
}

double stein_derivative_fd(double z, double x, double h) {
  const Branch b = x <= z ? Branch::Lower : Branch::Upper;
  auto f = [&](double u) { return stein_branch_value(z, u, b); };
  return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h);
}

double stein_ode_residual(double z, double x) {
  const double indicator = x <= z ? 1.0 : 0.0;
  const double f = stein_branch_value(z, x, x <= z ? Branch::Lower : Branch::Upper);
  return std::fabs(stein_derivative_fd(z, x) - x * f - (indicator - normal_cdf(z)));
}

LemmaReport check_lemma(double z, std::span<const double> grid) {
  require_finite(z, "check_lemma z");
  if (z <= 0.0)
    throw std::invalid_argument("check_lemma: the estimates are stated for z > 0");
  if (grid.empty()) throw std::invalid_argument("check_lemma: empty grid");

  constexpr double inf = std::numeric_limits<double>::infinity();
  const double global_value_bound = kSqrt2Pi / 4.0;
  const double decay = std::exp(-z * z / 4.0);
  const double center_value_bound = kSqrt2Pi / 2.0 * decay;
  const double center_derivative_bound = 2.0 * decay;

  LemmaReport r;
  r.z = z;
  r.grid.assign(grid.begin(), grid.end());
  r.margins = {inf, inf, inf, inf, inf};
  for (double x : grid) {
    require_finite(x, "check_lemma grid");
    const SteinSolutionPoint p = stein_solution(z, x);
    const double abs_der = std::fabs(p.derivative);
    r.margins.positivity = std::min(r.margins.positivity, p.value);
    r.margins.global_value = std::min(r.margins.global_value, global_value_bound - p.value);
    r.margins.global_derivative = std::min(r.margins.global_derivative, 1.0 - abs_der);
    if (std::fabs(x) <= z / 2.0) {
      ++r.center_points;
      r.margins.center_value =
          std::min(r.margins.center_value, center_value_bound - p.value);
      r.margins.center_derivative =
          std::min(r.margins.center_derivative, center_derivative_bound - abs_der);
    }
  }
  r.global_bound_ok = r.margins.positivity > 0.0 &&
                      r.margins.global_value >= -kLemmaSlack &&
                      r.margins.global_derivative >= -kLemmaSlack;
  r.center_value_ok = r.margins.center_value >= -kLemmaSlack;
  r.center_derivative_ok = r.margins.center_derivative >= -kLemmaSlack;
  r.worst_margin = std::min({r.margins.positivity, r.margins.global_value,
                             r.margins.global_derivative, r.margins.center_value,
                             r.margins.center_derivative});
  return r;
}

}  // namespace steinbound::gaussian
