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

#include "steinbound/expfun.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "steinbound/numeric.hpp"
#include "steinbound/parallel.hpp"

namespace steinbound::expfun {
namespace {

// phi1(y) = (e^y - 1)/y, with the removable singularity at 0.
double phi1(double y) {
  if (std::fabs(y) < 1e-6) return 1.0 + y / 2.0 + y * y / 6.0 + y * y * y / 24.0;
  return std::expm1(y) / y;
}

// M(n, y) = int_0^1 v^n e^{yv} dv = phi1^{(n)}(y) for n = 0..count-1.
std::vector<double> phi1_derivatives(double y, int count) {
  std::vector<double> m(count);
  if (std::fabs(y) <= 2.0) {
    // sum_j y^j / (j! (n + 1 + j))
    for (int n = 0; n < count; ++n) {
      double term = 1.0;
      double s = 1.0 / (n + 1);
      for (int j = 1; j < 80; ++j) {
        term *= y / j;
        const double add = term / (n + 1 + j);
        s += add;
        if (std::fabs(add) < 1e-18 * std::fabs(s)) break;
      }
      m[n] = s;
    }
    return m;
  }
  // Forward recursion M(n) = (e^y - n M(n-1))/y. Its error growth for
  // n > |y| is outweighed by the delta^{n-1}/n! weights it is used with.
  const double ey = std::exp(y);
  m[0] = phi1(y);
  for (int n = 1; n < count; ++n) m[n] = (ey - n * m[n - 1]) / y;
  return m;
}

// (phi1(y + d) - phi1(y)) / d, continuous through d = 0.
double phi1_divided_difference(double y, double d) {
  if (std::fabs(d) >= 0.5) return (phi1(y + d) - phi1(y)) / d;
  // Taylor series in d: sum_{n>=1} d^{n-1}/n! M(n, y).
  constexpr int kTerms = 20;
  const auto m = phi1_derivatives(y, kTerms + 1);
  double s = 0.0;
  double w = 1.0;  // d^{n-1}/n!
  for (int n = 1; n <= kTerms; ++n) {
    w = n == 1 ? 1.0 : w * d / n;
    s += w * m[n];
  }
  return s;
}

void require_nonnegative(double x, const char* what) {
  if (!(x >= 0.0) || !std::isfinite(x))
    throw std::invalid_argument(std::string(what) + ": x must be finite and >= 0");
}

}  // namespace

void validate(const ExpFunParams& p) {
  if (!std::isfinite(p.a)) throw std::invalid_argument("expfun: drift a must be finite");
  if (!std::isfinite(p.t) || !(p.t > 0.0))
    throw std::invalid_argument("expfun: horizon t must be finite and > 0");
}

PathConfig default_path_config(double t) {
  validate({0.0, t});
  const double n = std::round(2000.0 * t / 0.1);
  return {static_cast<std::size_t>(std::max(2.0, n)), Scheme::Trapezoid};
}

double mean_mt(double a, double t) {
  validate({a, t});
  // E e^{as + B_s} = e^{(a + 1/2)s}
  return t * phi1((a + 0.5) * t);
}

double second_moment(double a, double t) {
  validate({a, t});
  // For s < u, E e^{B_s + B_u} = e^{(3s + u)/2}. Integrating s first gives
  // 2 int_0^t e^{bu} (e^{cu} - 1)/c du with b = a + 1/2, c = a + 3/2, which is
  // 2 t^2 times a divided difference of phi1.
  const double y = (a + 0.5) * t;
  const double d = (a + 1.5) * t;
  return 2.0 * t * t * phi1_divided_difference(y, d);
}

double variance_sigma2(double a, double t) {
  const double m = mean_mt(a, t);
  return second_moment(a, t) - m * m;
}

ExpFunMoments moments(const ExpFunParams& p) {
  validate(p);
  ExpFunMoments m;
  m.m_t = mean_mt(p.a, p.t);
  m.second_moment = second_moment(p.a, p.t);
  m.sigma2_t = m.second_moment - m.m_t * m.m_t;
  if (!(m.sigma2_t > 0.0))
    throw std::domain_error("expfun: variance underflowed to a non-positive value");
  m.sigma_t = std::sqrt(m.sigma2_t);
  return m;
}

double path_functional(const ExpFunParams& p, const PathConfig& cfg,
                       std::span<const double> increments) {
  validate(p);
  if (cfg.n_steps < 2) throw std::invalid_argument("expfun: n_steps must be >= 2");
  if (increments.size() != cfg.n_steps)
    throw std::invalid_argument("expfun: need one increment per grid cell");
  const double h = p.t / static_cast<double>(cfg.n_steps);
  double b = 0.0;
  double sum = cfg.scheme == Scheme::Trapezoid ? 0.5 : 1.0;  // g_0 = 1
  const std::size_t n = cfg.n_steps;
  for (std::size_t k = 1; k < n; ++k) {
    b += increments[k - 1];
    sum += std::exp(p.a * h * static_cast<double>(k) + b);
  }
  if (cfg.scheme == Scheme::Trapezoid) {
    b += increments[n - 1];
    sum += 0.5 * std::exp(p.a * p.t + b);
  }
  return h * sum;
}

double sample_F_t(const ExpFunParams& p, const PathConfig& cfg, NormalStream& normals) {
  thread_local std::vector<double> increments;
  increments.resize(cfg.n_steps);
  const double sd = std::sqrt(p.t / static_cast<double>(cfg.n_steps));
  for (double& w : increments) w = sd * normals();
  return path_functional(p, cfg, increments);
}

std::vector<double> sample_many(const ExpFunParams& p, const PathConfig& cfg,
                                std::uint64_t seed, std::size_t count, unsigned workers) {
  validate(p);
  if (cfg.n_steps < 2) throw std::invalid_argument("expfun: n_steps must be >= 2");
  const std::uint64_t key = derive_key(seed, purpose::kExpFunPaths);
  std::vector<double> out(count);
  parallel_blocks(count, workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      NormalStream normals(key, i);
      out[i] = sample_F_t(p, cfg, normals);
    }
  });
  return out;
}

double standardize(double f, const ExpFunMoments& m) {
  if (!(m.sigma_t > 0.0) || !std::isfinite(m.sigma_t))
    throw std::invalid_argument("standardize: sigma_t must be positive");
  return (f - m.m_t) / m.sigma_t;
}

double tail_upper_dk1(double x, const ExpFunParams& p, const ExpFunMoments& m) {
  require_nonnegative(x, "tail_upper_dk1");
  validate(p);
  const double l = std::log1p(x * m.sigma_t / m.m_t);
  return std::exp(-l * l / (2.0 * p.t));
}

double tail_lower_dk2(double x) {
  require_nonnegative(x, "tail_lower_dk2");
  return std::exp(-x * x / 2.0);
}

double two_sided_tail(double z, const ExpFunParams& p, const ExpFunMoments& m) {
  require_finite(z, "two_sided_tail");
  const double x = std::fabs(z) / 2.0;
  return std::min(1.0, tail_upper_dk1(x, p, m) + tail_lower_dk2(x));
}

double gamma_second_moment_upper(const ExpFunParams& p, const ExpFunMoments& m) {
  validate(p);
  const double t = p.t;
  return 4.0 * std::pow(t, 7) * std::exp(4.0 * p.a * t + 8.0 * t) / (m.sigma2_t * m.sigma2_t);
}

double vnms_prefactor(const ExpFunParams& p, const ExpFunMoments& m) {
  validate(p);
  const double t = p.t;
  return 2.0 * std::exp(2.0 * p.a * t + 4.0 * t) * t * t * t * std::sqrt(t) / m.sigma2_t;
}

double vnms_bound(const ExpFunParams& p, const ExpFunMoments& m, double z) {
  require_finite(z, "vnms_bound");
  const double az = std::fabs(z);
  const double l = std::log1p(az * m.sigma_t / (2.0 * m.m_t));
  const double shape = std::exp(-l * l / (4.0 * p.t)) + std::exp(-z * z / 16.0) +
                       2.0 * std::exp(-z * z / 4.0);
  return vnms_prefactor(p, m) * shape;
}

}  // namespace steinbound::expfun
