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

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "steinbound/rng.hpp"

namespace steinbound::chaos {

/// F = sum_i alpha_i H_q(N_i) for i.i.d. standard normals N_i, i.e. the
/// multiple integral of order q of a diagonal finite-rank kernel.
struct DiagonalChaosSpec {
  int q = 2;
  std::vector<double> alphas;
};

/// Throws std::invalid_argument unless q >= 2, alphas is nonempty and finite
/// and at least one coefficient is nonzero.
void validate(const DiagonalChaosSpec& spec);

/// Probabilists' Hermite polynomial He_q(x).
double hermite(int q, double x);

/// E[N^{2k}] = (2k-1)!!; zero for odd powers.
double gaussian_moment(int power);

/// q! * sum alpha_i^2.
double variance(const DiagonalChaosSpec& spec);

/// Rescales alphas so that the variance is one.
DiagonalChaosSpec normalize(const DiagonalChaosSpec& spec);

bool is_normalized(const DiagonalChaosSpec& spec, double tol = 1e-12);

/// F evaluated at the given normals; normals.size() must equal alphas.size().
double evaluate(const DiagonalChaosSpec& spec, std::span<const double> normals);

/// One realization of F. Consumes exactly alphas.size() normal variates.
double sample(const DiagonalChaosSpec& spec, NormalStream& normals);

/// Draws count samples; sample i uses Philox stream i under
/// derive_key(seed, purpose). Output is independent of `workers`.
std::vector<double> sample_many(const DiagonalChaosSpec& spec, std::uint64_t seed,
                                std::size_t count, unsigned workers = 1,
                                std::uint64_t purpose = purpose::kChaosSamples);

struct MomentEstimate {
  double value = 0.0;
  double standard_error = 0.0;  // 0 for closed-form values
  bool exact = false;
};

struct MonteCarloOptions {
  std::uint64_t seed = 0;
  std::size_t samples = 1'000'000;
  unsigned workers = 1;
};

/// E[F^4] for a variance-one spec: closed form from second-chaos cumulants
/// when q == 2, Monte Carlo with standard error otherwise.
/// Throws std::invalid_argument if the spec is not normalized.
MomentEstimate fourth_moment(const DiagonalChaosSpec& spec,
                             const MonteCarloOptions& mc = {});

/// Sample mean of F^4 with its standard error; works for any q.
MomentEstimate sample_fourth_moment(std::span<const double> samples);

struct DiscrepancyUpper {
  double value = 0.0;
  bool clamped = false;  // fourth moment fell below 3 and the radicand was clamped
};

/// sqrt((q-1)/(3q) (E F^4 - 3)), the fourth-moment upper bound on the Stein
/// discrepancy of a unit-variance chaos of order q.
DiscrepancyUpper stein_discrepancy_upper(int q, double fourth_moment);

/// Delta-method standard error of stein_discrepancy_upper given the SE of
/// the fourth moment. Infinite when the discrepancy is zero.
double stein_discrepancy_se(int q, double fourth_moment, double fourth_moment_se);

/// Exact law of F = (N^2 - 1)/sqrt(2) (the normalized rank-one q == 2 case).
double exact_cdf_q2_rank1(double z);
/// P(F > z) for the same law, accurate in the upper tail.
double exact_survival_q2_rank1(double z);
/// P(|F| > x) for the same law, x >= 0.
double exact_abs_tail_q2_rank1(double x);
/// E[|F|^p] for even p >= 0, for the same law.
double exact_abs_moment_q2_rank1(int p);

/// Smallest c with empirical P(|F| > x) <= c^2 exp(-x^{2/q}/2) over the
/// tested x. A diagnostic only: it calibrates against samples, not a proof.
double calibrate_major_constant(std::span<const double> samples, int q,
                                std::span<const double> x_grid);

}  // namespace steinbound::chaos
