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

#include "steinbound/chaos.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "steinbound/gaussian.hpp"
#include "steinbound/numeric.hpp"
#include "steinbound/parallel.hpp"

namespace steinbound::chaos {
namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

double sum_squares(std::span<const double> v) {
  CompensatedSum s;
  for (double a : v) s.add(a * a);
  return s.value();
}

}  // namespace

void validate(const DiagonalChaosSpec& spec) {
  if (spec.q < 2)
    throw std::invalid_argument("chaos: order q must be >= 2, got " + std::to_string(spec.q));
  if (spec.alphas.empty()) throw std::invalid_argument("chaos: alphas must be nonempty");
  bool any_nonzero = false;
  for (double a : spec.alphas) {
    if (!std::isfinite(a)) throw std::invalid_argument("chaos: alphas must be finite");
    any_nonzero = any_nonzero || a != 0.0;
  }
  if (!any_nonzero) throw std::invalid_argument("chaos: all alphas are zero");
}

double hermite(int q, double x) {
  if (q < 0) throw std::invalid_argument("hermite: q must be >= 0");
  if (q == 0) return 1.0;
  double prev = 1.0;
  double cur = x;
  for (int k = 1; k < q; ++k) {
    const double next = x * cur - k * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double gaussian_moment(int power) {
  if (power < 0) throw std::invalid_argument("gaussian_moment: power must be >= 0");
  if (power % 2 == 1) return 0.0;
  double m = 1.0;
  for (int k = power - 1; k > 1; k -= 2) m *= k;
  return m;
}

double variance(const DiagonalChaosSpec& spec) {
  validate(spec);
  return factorial(spec.q) * sum_squares(spec.alphas);
}

DiagonalChaosSpec normalize(const DiagonalChaosSpec& spec) {
  const double scale = 1.0 / std::sqrt(variance(spec));
  DiagonalChaosSpec out = spec;
  for (double& a : out.alphas) a *= scale;
  return out;
}

bool is_normalized(const DiagonalChaosSpec& spec, double tol) {
  return std::fabs(variance(spec) - 1.0) <= tol;
}

double evaluate(const DiagonalChaosSpec& spec, std::span<const double> normals) {
  if (normals.size() != spec.alphas.size())
    throw std::invalid_argument("chaos::evaluate: need one normal per direction");
  CompensatedSum s;
  for (std::size_t i = 0; i < normals.size(); ++i)
    s.add(spec.alphas[i] * hermite(spec.q, normals[i]));
  return s.value();
}

double sample(const DiagonalChaosSpec& spec, NormalStream& normals) {
  CompensatedSum s;
  for (double a : spec.alphas) s.add(a * hermite(spec.q, normals()));
  return s.value();
}

std::vector<double> sample_many(const DiagonalChaosSpec& spec, std::uint64_t seed,
                                std::size_t count, unsigned workers,
                                std::uint64_t purpose) {
  validate(spec);
  const std::uint64_t key = derive_key(seed, purpose);
  std::vector<double> out(count);
  parallel_blocks(count, workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      NormalStream normals(key, i);
      out[i] = sample(spec, normals);
    }
  });
  return out;
}

MomentEstimate sample_fourth_moment(std::span<const double> samples) {
  if (samples.size() < 2)
    throw std::invalid_argument("sample_fourth_moment: need at least two samples");
  const auto n = static_cast<double>(samples.size());
  CompensatedSum s;
  for (double f : samples) s.add(f * f * f * f);
  const double mean = s.value() / n;
  CompensatedSum dev;
  for (double f : samples) {
    const double d = f * f * f * f - mean;
    dev.add(d * d);
  }
  const double var = dev.value() / (n - 1.0);
  return {mean, std::sqrt(var / n), false};
}

MomentEstimate fourth_moment(const DiagonalChaosSpec& spec, const MonteCarloOptions& mc) {
  validate(spec);
  if (!is_normalized(spec))
    throw std::invalid_argument("fourth_moment: spec must have variance one (normalize first)");
  if (spec.q == 2) {
    // Each H_2(N_i) = N_i^2 - 1 has cumulants kappa_n = 2^{n-1} (n-1)!, so
    // kappa_2(F) = 2 sum a^2 and kappa_4(F) = 48 sum a^4.
    CompensatedSum s2, s4;
    for (double a : spec.alphas) {
      s2.add(a * a);
      s4.add(a * a * a * a);
    }
    const double k2 = 2.0 * s2.value();
    const double k4 = 48.0 * s4.value();
    return {3.0 * k2 * k2 + k4, 0.0, true};
  }
  const auto samples = sample_many(spec, mc.seed, mc.samples, mc.workers, purpose::kChaosMoments);
  return sample_fourth_moment(samples);
}

DiscrepancyUpper stein_discrepancy_upper(int q, double fourth_moment) {
  if (q < 2) throw std::invalid_argument("stein_discrepancy_upper: q must be >= 2");
  if (!std::isfinite(fourth_moment))
    throw std::invalid_argument("stein_discrepancy_upper: fourth moment must be finite");
  const double radicand = (q - 1.0) / (3.0 * q) * (fourth_moment - 3.0);
  if (radicand < 0.0) return {0.0, true};
  return {std::sqrt(radicand), false};
}

double stein_discrepancy_se(int q, double fourth_moment, double fourth_moment_se) {
  const double d = stein_discrepancy_upper(q, fourth_moment).value;
  const double c = (q - 1.0) / (3.0 * q);
  if (d == 0.0) return std::numeric_limits<double>::infinity();
  return c / (2.0 * d) * fourth_moment_se;
}

double exact_cdf_q2_rank1(double z) {
  require_finite(z, "exact_cdf_q2_rank1");
  const double s2 = 1.0 + std::sqrt(2.0) * z;  // N^2 <= s2
  if (s2 <= 0.0) return 0.0;
  return 1.0 - 2.0 * gaussian::normal_tail(std::sqrt(s2));
}

double exact_survival_q2_rank1(double z) {
  require_finite(z, "exact_survival_q2_rank1");
  const double s2 = 1.0 + std::sqrt(2.0) * z;
  if (s2 <= 0.0) return 1.0;
  return 2.0 * gaussian::normal_tail(std::sqrt(s2));
}

double exact_abs_tail_q2_rank1(double x) {
  if (!(x >= 0.0)) throw std::invalid_argument("exact_abs_tail_q2_rank1: x must be >= 0");
  // F has no atoms, so P(F < -x) = P(F <= -x).
  return std::clamp(exact_survival_q2_rank1(x) + exact_cdf_q2_rank1(-x), 0.0, 1.0);
}

double exact_abs_moment_q2_rank1(int p) {
  if (p < 0 || p % 2 != 0)
    throw std::invalid_argument("exact_abs_moment_q2_rank1: p must be even and >= 0");
  // E (N^2 - 1)^p = sum_k C(p,k) (-1)^{p-k} E N^{2k}
  double total = 0.0;
  double binom = 1.0;
  for (int k = 0; k <= p; ++k) {
    const double sign = (p - k) % 2 == 0 ? 1.0 : -1.0;
    total += sign * binom * gaussian_moment(2 * k);
    binom = binom * (p - k) / (k + 1);
  }
  return total / std::pow(2.0, p / 2);
}

double calibrate_major_constant(std::span<const double> samples, int q,
                                std::span<const double> x_grid) {
  if (samples.empty()) throw std::invalid_argument("calibrate_major_constant: no samples");
  if (q < 2) throw std::invalid_argument("calibrate_major_constant: q must be >= 2");
  std::vector<double> abs_sorted(samples.size());
  std::transform(samples.begin(), samples.end(), abs_sorted.begin(),
                 [](double v) { return std::fabs(v); });
  std::sort(abs_sorted.begin(), abs_sorted.end());
  const auto n = static_cast<double>(abs_sorted.size());
  double c2 = 0.0;
  for (double x : x_grid) {
    if (!(x >= 0.0)) throw std::invalid_argument("calibrate_major_constant: x must be >= 0");
    const auto above = abs_sorted.end() - std::upper_bound(abs_sorted.begin(), abs_sorted.end(), x);
    const double p = static_cast<double>(above) / n;
    c2 = std::max(c2, p * std::exp(0.5 * std::pow(x, 2.0 / q)));
  }
  return std::sqrt(c2);
}

}  // namespace steinbound::chaos
