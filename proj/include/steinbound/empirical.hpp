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
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace steinbound::bounds {
struct BoundCurve;
}

namespace steinbound::empirical {

/// Right-continuous empirical CDF, P^(F <= z) = #{samples <= z} / n.
class EmpiricalCdf {
 public:
  /// Throws std::invalid_argument on empty or non-finite input.
  explicit EmpiricalCdf(std::vector<double> samples);

  [[nodiscard]] std::size_t size() const { return sorted_.size(); }
  [[nodiscard]] std::span<const double> sorted_samples() const { return sorted_; }

  [[nodiscard]] std::size_t count_at_most(double z) const;
  [[nodiscard]] std::size_t count_below(double z) const;  // strict
  [[nodiscard]] double operator()(double z) const;

 private:
  std::vector<double> sorted_;
};

EmpiricalCdf build_ecdf(std::vector<double> samples);

struct DiscrepancyRow {
  double z = 0.0;
  double empirical_cdf = 0.0;
  double normal_cdf = 0.0;  // reference CDF at z (Phi unless overridden)
  double discrepancy = 0.0;
  double standard_error = 0.0;
  std::optional<double> bound;
  bool violated = false;
};

/// Binomial standard error sqrt(p(1-p)/n), floored at 1e-3 sqrt(0.25/n) when
/// p is 0 or 1.
double binomial_se(double p, std::size_t n);

/// |ecdf(z) - Phi(z)| per grid point with binomial SE attached.
std::vector<DiscrepancyRow> discrepancy_curve(const EmpiricalCdf& ecdf,
                                              std::span<const double> grid);

/// Same against an arbitrary reference CDF.
std::vector<DiscrepancyRow> discrepancy_curve(const EmpiricalCdf& ecdf,
                                              std::span<const double> grid,
                                              const std::function<double(double)>& reference_cdf);

/// Dvoretzky-Kiefer-Wolfowitz half-width sqrt(ln(2/delta)/(2n)).
double dkw_epsilon(std::size_t n, double delta);

/// #{|sample| > x} / n.
double empirical_tail(const EmpiricalCdf& ecdf, double x);

enum class SlackMode {
  BinomialSe,  // k standard errors per point
  Dkw,         // uniform DKW half-width at confidence 1 - dkw_delta
};

struct CertifyOptions {
  double k = 3.0;
  SlackMode mode = SlackMode::BinomialSe;
  double dkw_delta = 0.01;
  std::size_t sample_size = 0;  // required in Dkw mode
};

struct CertifyReport {
  std::vector<DiscrepancyRow> rows;
  std::size_t checked = 0;
  std::size_t violations = 0;
  double max_discrepancy = 0.0;
  double max_excess = 0.0;  // max over rows of discrepancy - slack - bound
  std::vector<std::string> notes;

  [[nodiscard]] int exit_status() const { return violations == 0 ? 0 : 2; }
};

/// Marks rows whose discrepancy exceeds the bound by more than the
/// statistical slack. Throws std::invalid_argument if the z grids differ.
CertifyReport certify(std::vector<DiscrepancyRow> rows, const bounds::BoundCurve& bound_curve,
                      const CertifyOptions& options = {});

}  // namespace steinbound::empirical
