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

#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "steinbound/empirical.hpp"
#include "steinbound/expfun.hpp"

// Non-uniform Berry-Esseen bounds
//   |P(F <= z) - Phi(z)| <= (|E F| + d) (sqrt(P(|F| > |z|/2)) + 2 e^{-z^2/4})
// with a pluggable upper bound for the tail probability.
namespace steinbound::bounds {

namespace tail {

/// Exact law given through its CDF; P(|F| > x) = 1 - cdf(x) + cdf(-x).
struct ExactCdf {
  std::function<double(double)> cdf;
};

/// min(1, E|F|^p / x^p).
struct Markov {
  double p = 2.0;
  double moment_p = 1.0;
};

/// min(1, c_q^2 exp(-x^{2/q}/2)) for a unit-variance chaos of order q.
struct MajorChaos {
  int q = 2;
  double c_q = 1.0;
};

/// dk1(x) + dk2(x) for the standardized exponential functional.
struct ExpFunTwoSided {
  expfun::ExpFunParams params;
  expfun::ExpFunMoments moments;
};

/// #{|sample| > x}/n.
struct Empirical {
  std::shared_ptr<const empirical::EmpiricalCdf> samples;
};

struct Unit {};

}  // namespace tail

using TailModel = std::variant<tail::ExactCdf, tail::Markov, tail::MajorChaos,
                               tail::ExpFunTwoSided, tail::Empirical, tail::Unit>;

/// Throws std::invalid_argument for out-of-domain model parameters.
void validate(const TailModel& model);

/// Upper bound on P(|F| > x), clamped to [0, 1]. Throws for x < 0.
double tail_probability(const TailModel& model, double x);

/// Where the discrepancy came from. The arithmetic is identical; the tag only
/// travels into reports.
enum class DiscrepancySource {
  InverseOrnsteinUhlenbeck,  // sqrt(E|1 - <DF, -DL^{-1}F>|^2)
  Skorokhod,                 // sqrt(E|1 - <DF, u>|^2) for F = E F + delta(u)
};

struct BoundInputs {
  double mean_abs = 0.0;
  double stein_discrepancy = 0.0;
  TailModel tail = tail::Unit{};
  DiscrepancySource source = DiscrepancySource::InverseOrnsteinUhlenbeck;
};

void validate(const BoundInputs& inputs);

double nonuniform_bound(const BoundInputs& inputs, double z);

/// Chaos specialization with the Major tail written in closed form:
/// sqrt((q-1)/(3q)(m4 - 3)) (c_q e^{-|z|^{2/q}/2^{2+2/q}} + 2 e^{-z^2/4}).
/// Throws std::domain_error when fourth_moment < 3.
double chaos_bound(int q, double fourth_moment, double c_q, double z);

/// The z-independent baseline: the discrepancy itself.
double uniform_bound(const BoundInputs& inputs);

struct BoundRow {
  double z = 0.0;
  double tail_term = 0.0;      // P(|F| > |z|/2) upper bound
  double gaussian_term = 0.0;  // 2 e^{-z^2/4}
  double bound = 0.0;
};

struct BoundCurve {
  std::vector<BoundRow> rows;
};

/// Raised by evaluate_curve when one grid point fails.
class CurvePointError : public std::invalid_argument {
 public:
  CurvePointError(double z, const std::string& what);
  [[nodiscard]] double z() const { return z_; }

 private:
  double z_;
};

BoundCurve evaluate_curve(const BoundInputs& inputs, std::span<const double> grid);

/// Curve whose bound column is an arbitrary function of z (the explicit
/// exponential-functional bound, for instance). tail_term and gaussian_term
/// are filled from `inputs` for reference.
BoundCurve evaluate_curve(const BoundInputs& inputs, std::span<const double> grid,
                          const std::function<double(double)>& bound_override);

}  // namespace steinbound::bounds
