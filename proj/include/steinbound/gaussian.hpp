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

#include <span>
#include <vector>

namespace steinbound::gaussian {

inline constexpr double kSqrt2Pi = 2.506628274631000502415765284811;

/// Standard normal CDF. Throws std::domain_error on non-finite input.
double normal_cdf(double x);

/// Upper tail 1 - Phi(x), evaluated without cancellation so that the
/// relative error stays small far into the tail.
double normal_tail(double x);

/// Mills-ratio kernel sqrt(2*pi) * exp(x^2/2) * (1 - Phi(x)).
///
/// Finite for every x >= -37.5; below that the true value exceeds the double
/// range and +inf is returned. Tends to 1/x as x -> +inf.
double scaled_tail(double x);

enum class Branch { Lower, Upper };  // Lower: x <= z, Upper: x > z

struct SteinSolutionPoint {
  double z = 0.0;
  double x = 0.0;
  double value = 0.0;       // f_z(x)
  double derivative = 0.0;  // f_z'(x); left-branch value at the seam x == z
  Branch branch = Branch::Lower;
};

/// Solution of f'(x) - x f(x) = 1{x <= z} - Phi(z) that stays bounded at
/// +-inf, together with its derivative from the ODE itself.
SteinSolutionPoint stein_solution(double z, double x);

/// Evaluates the formula of one branch at any x, including past the seam.
/// Used for one-sided finite differences near x == z.
double stein_branch_value(double z, double x, Branch branch);

/// Five-point finite-difference derivative of f_z on the branch containing
/// x. Independent of the ODE route; the report uses it for residuals.
double stein_derivative_fd(double z, double x, double h = 1e-3);

/// |f'(x) - x f(x) - (1{x<=z} - Phi(z))| with f' from stein_derivative_fd.
double stein_ode_residual(double z, double x);

inline constexpr double kLemmaSlack = 1e-12;

struct LemmaMargins {
  double positivity = 0.0;        // min f_z(x)
  double global_value = 0.0;      // min sqrt(2pi)/4 - f_z(x)
  double global_derivative = 0.0; // min 1 - |f_z'(x)|
  double center_value = 0.0;      // min sqrt(2pi)/2 e^{-z^2/4} - f_z(x), |x| <= z/2
  double center_derivative = 0.0; // min 2 e^{-z^2/4} - |f_z'(x)|,       |x| <= z/2
};

struct LemmaReport {
  double z = 0.0;
  std::vector<double> grid;
  bool global_bound_ok = true;
  bool center_value_ok = true;
  bool center_derivative_ok = true;
  std::size_t center_points = 0;  // grid points with |x| <= z/2
  LemmaMargins margins;
  double worst_margin = 0.0;
};

/// Checks the three groups of estimates on f_z and f_z' for z > 0 over the
/// given grid. Inequalities are tested with additive slack kLemmaSlack.
/// Throws std::invalid_argument for z <= 0 or an empty grid.
LemmaReport check_lemma(double z, std::span<const double> grid);

}  // namespace steinbound::gaussian
