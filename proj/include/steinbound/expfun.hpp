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

// Exponential functional of Brownian motion F_t = int_0^t exp(a s + B_s) ds.
namespace steinbound::expfun {

struct ExpFunParams {
  double a = 0.0;  // drift
  double t = 1.0;  // horizon, > 0
};

void validate(const ExpFunParams& p);

enum class Scheme { LeftPoint, Trapezoid };

struct PathConfig {
  std::size_t n_steps = 2000;
  Scheme scheme = Scheme::Trapezoid;
};

/// Trapezoid with n_steps = 2000 * t / 0.1, at least 2.
PathConfig default_path_config(double t);

struct ExpFunMoments {
  double m_t = 0.0;            // E F_t
  double second_moment = 0.0;  // E F_t^2
  double sigma2_t = 0.0;       // Var F_t
  double sigma_t = 0.0;
};

/// (e^{(a+1/2)t} - 1)/(a + 1/2), continuous through a = -1/2.
double mean_mt(double a, double t);

/// E F_t^2 = 2 int_0^t int_0^u e^{a(s+u)} e^{(3s+u)/2} ds du in closed form,
/// continuous through a = -1/2 and a = -3/2.
double second_moment(double a, double t);

double variance_sigma2(double a, double t);

ExpFunMoments moments(const ExpFunParams& p);

/// Quadrature of e^{as + B_s} along one path given its Brownian increments
/// over the uniform grid (increments.size() == n_steps).
double path_functional(const ExpFunParams& p, const PathConfig& cfg,
                       std::span<const double> increments);

/// One realization of F_t; consumes exactly cfg.n_steps normal variates.
double sample_F_t(const ExpFunParams& p, const PathConfig& cfg, NormalStream& normals);

/// count realizations; path i uses Philox stream i of
/// derive_key(seed, purpose::kExpFunPaths). Independent of `workers`.
std::vector<double> sample_many(const ExpFunParams& p, const PathConfig& cfg,
                                std::uint64_t seed, std::size_t count,
                                unsigned workers = 1);

/// (f - m_t)/sigma_t.
double standardize(double f, const ExpFunMoments& m);

/// P(F~ >= x) <= exp(-ln^2(1 + x sigma/m)/(2t)), x >= 0.
double tail_upper_dk1(double x, const ExpFunParams& p, const ExpFunMoments& m);

/// P(F~ <= -x) <= exp(-x^2/2), x >= 0.
double tail_lower_dk2(double x);

/// min(1, dk1(|z|/2) + dk2(|z|/2)), an upper bound on P(|F~| > |z|/2).
double two_sided_tail(double z, const ExpFunParams& p, const ExpFunMoments& m);

/// 4 t^7 e^{4at + 8t} / sigma_t^4, upper bound on E|1 - Gamma_t|^2.
double gamma_second_moment_upper(const ExpFunParams& p, const ExpFunMoments& m);

/// 2 e^{2at+4t} t^3 sqrt(t) / sigma_t^2, the square root of the above.
double vnms_prefactor(const ExpFunParams& p, const ExpFunMoments& m);

/// Explicit non-uniform bound on |P(F~ <= z) - Phi(z)|.
double vnms_bound(const ExpFunParams& p, const ExpFunMoments& m, double z);

}  // namespace steinbound::expfun
