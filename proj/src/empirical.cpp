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

#include "steinbound/empirical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "steinbound/bound.hpp"
#include "steinbound/gaussian.hpp"

namespace steinbound::empirical {

EmpiricalCdf::EmpiricalCdf(std::vector<double> samples) : sorted_(std::move(samples)) {
  if (sorted_.empty()) throw std::invalid_argument("build_ecdf: no samples");
  for (double v : sorted_)
    if (!std::isfinite(v)) throw std::invalid_argument("build_ecdf: non-finite sample");
  std::sort(sorted_.begin(), sorted_.end());
}

std::size_t EmpiricalCdf::count_at_most(double z) const {
  return static_cast<std::size_t>(std::upper_bound(sorted_.begin(), sorted_.end(), z) -
                                  sorted_.begin());
}

std::size_t EmpiricalCdf::count_below(double z) const {
  return static_cast<std::size_t>(std::lower_bound(sorted_.begin(), sorted_.end(), z) -
                                  sorted_.begin());
}

double EmpiricalCdf::operator()(double z) const {
  return static_cast<double>(count_at_most(z)) / static_cast<double>(sorted_.size());
}

EmpiricalCdf build_ecdf(std::vector<double> samples) { return EmpiricalCdf(std::move(samples)); }

double binomial_se(double p, std::size_t n) {
  const auto nn = static_cast<double>(n);
  if (p <= 0.0 || p >= 1.0) return std::sqrt(0.25 / nn) * 1e-3;
  return std::sqrt(p * (1.0 - p) / nn);
}

std::vector<DiscrepancyRow> discrepancy_curve(const EmpiricalCdf& ecdf,
                                              std::span<const double> grid,
                                              const std::function<double(double)>& reference_cdf) {
  std::vector<DiscrepancyRow> rows;
  rows.reserve(grid.size());
  for (double z : grid) {
    if (!std::isfinite(z)) throw std::invalid_argument("discrepancy_curve: non-finite z");
    DiscrepancyRow r;
    r.z = z;
    r.empirical_cdf = ecdf(z);
    r.normal_cdf = reference_cdf(z);
    r.discrepancy = std::fabs(r.empirical_cdf - r.normal_cdf);
    r.standard_error = binomial_se(r.empirical_cdf, ecdf.size());
    rows.push_back(r);
  }
  return rows;
}

std::vector<DiscrepancyRow> discrepancy_curve(const EmpiricalCdf& ecdf,
                                              std::span<const double> grid) {
  return discrepancy_curve(ecdf, grid, [](double z) { return gaussian::normal_cdf(z); });
}

double dkw_epsilon(std::size_t n, double delta) {
  if (n == 0) throw std::invalid_argument("dkw_epsilon: n must be >= 1");
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("dkw_epsilon: delta must lie in (0, 1)");
  return std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(n)));
}

double empirical_tail(const EmpiricalCdf& ecdf, double x) {
  if (!(x >= 0.0)) throw std::invalid_argument("empirical_tail: x must be >= 0");
  const std::size_t above = ecdf.size() - ecdf.count_at_most(x);
  const std::size_t below = ecdf.count_below(-x);
  return static_cast<double>(above + below) / static_cast<double>(ecdf.size());
}

CertifyReport certify(std::vector<DiscrepancyRow> rows, const bounds::BoundCurve& bound_curve,
                      const CertifyOptions& options) {
  if (rows.size() != bound_curve.rows.size())
    throw std::invalid_argument("certify: discrepancy and bound grids have different sizes");
  if (!(options.k >= 0.0)) throw std::invalid_argument("certify: slack k must be >= 0");

  CertifyReport report;
  report.max_excess = -std::numeric_limits<double>::infinity();
  double dkw = 0.0;
  if (options.mode == SlackMode::Dkw) {
    if (options.sample_size == 0)
      throw std::invalid_argument("certify: DKW slack needs the sample size");
    dkw = dkw_epsilon(options.sample_size, options.dkw_delta);
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto& r = rows[i];
    const auto& b = bound_curve.rows[i];
    if (r.z != b.z)
      throw std::invalid_argument("certify: grid mismatch at row " + std::to_string(i));
    const double slack = options.mode == SlackMode::Dkw ? dkw : options.k * r.standard_error;
    r.bound = b.bound;
    r.violated = r.discrepancy - slack > b.bound;
    ++report.checked;
    if (r.violated) ++report.violations;
    report.max_discrepancy = std::max(report.max_discrepancy, r.discrepancy);
    report.max_excess = std::max(report.max_excess, r.discrepancy - slack - b.bound);
  }
  report.rows = std::move(rows);
  return report;
}

}  // namespace steinbound::empirical
