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

#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "steinbound/expfun.hpp"
#include "steinbound/numeric.hpp"

using namespace steinbound::expfun;

TEST_CASE("mean_mt") {
  CHECK(mean_mt(0.0, 1.0) == doctest::Approx(2.0 * (std::sqrt(M_E) - 1.0)).epsilon(1e-15));
  CHECK(mean_mt(0.0, 1.0) == doctest::Approx(1.2974425).epsilon(1e-7));
  for (double t : {0.01, 0.3, 2.0}) CHECK(mean_mt(-0.5, t) == doctest::Approx(t).epsilon(1e-15));
  CHECK(mean_mt(0.0, 1e-3) / 1e-3 == doctest::Approx(1.00025).epsilon(1e-6));
  for (double a : {-2.0, -0.5, 0.0, 0.7})
    for (double t : {1e-4, 0.05, 0.1, 1.0, 3.0})
      CHECK(mean_mt(a, t) == doctest::Approx(oracle::expfun_mean(a, t)).epsilon(1e-12));
}

TEST_CASE("variance_sigma2 against the covariance quadrature") {
  const double e = M_E;
  const double closed = 4.0 / 3.0 * ((e * e - 1.0) / 2.0 - 2.0 * (std::sqrt(e) - 1.0)) -
                        std::pow(2.0 * (std::sqrt(e) - 1.0), 2);
  CHECK(variance_sigma2(0.0, 1.0) == doctest::Approx(closed).epsilon(1e-13));
  CHECK(variance_sigma2(0.0, 1.0) == doctest::Approx(0.8462).epsilon(1e-4));
  for (double a : {-2.0, -1.5, -0.5, 0.0, 0.7})
    for (double t : {1e-3, 0.05, 0.1, 0.5, 1.0, 2.0})
      CHECK(variance_sigma2(a, t) == doctest::Approx(oracle::expfun_variance(a, t)).epsilon(1e-10));
  CHECK(3.0 * variance_sigma2(0.0, 1e-3) / 1e-9 == doctest::Approx(1.0).epsilon(1e-2));
}

TEST_CASE("moments bundle and second moment") {
  const auto m = moments({0.0, 0.1});
  CHECK(m.sigma2_t == doctest::Approx(m.second_moment - m.m_t * m.m_t).epsilon(1e-9));
  CHECK(m.sigma_t == doctest::Approx(std::sqrt(m.sigma2_t)));
  CHECK_THROWS(moments({0.0, 0.0}));
  CHECK_THROWS(moments({0.0, -1.0}));
}

TEST_CASE("path functional") {
  const std::vector<double> zero(1000, 0.0);
  CHECK(path_functional({0.0, 0.1}, {1000, Scheme::Trapezoid}, zero) == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(path_functional({0.0, 0.1}, {1000, Scheme::LeftPoint}, zero) == doctest::Approx(0.1).epsilon(1e-14));
  // a = 1: trapezoid rule of e^s on [0, 1].
  const double trap = path_functional({1.0, 1.0}, {1000, Scheme::Trapezoid}, zero);
  CHECK(trap == doctest::Approx(M_E - 1.0).epsilon(1e-6));
  CHECK_THROWS(path_functional({0.0, 0.1}, {1000, Scheme::Trapezoid}, std::vector<double>(999, 0.0)));
  CHECK(default_path_config(0.1).n_steps == 2000);
  CHECK(default_path_config(0.05).n_steps == 1000);
  CHECK(default_path_config(1e-6).n_steps >= 2);
}

TEST_CASE("sampling: MC mean and standardized variance") {
  const ExpFunParams p{0.0, 0.1};
  const auto m = moments(p);
  const auto v = sample_many(p, {2000, Scheme::Trapezoid}, 4, 200'000, 0);
  const double n = static_cast<double>(v.size());
  steinbound::CompensatedSum s;
  for (double x : v) s.add(x);
  const double mean = s.value() / n;
  CHECK(std::fabs(mean - m.m_t) <= 3.0 * m.sigma_t / std::sqrt(n));
  steinbound::CompensatedSum s2, s4;
  for (double x : v) {
    const double g = standardize(x, m);
    s2.add(g * g);
    s4.add(g * g * g * g);
  }
  const double var = s2.value() / n;
  const double se = std::sqrt((s4.value() / n - var * var) / n);
  CHECK(std::fabs(var - 1.0) <= 4.0 * se);
}

TEST_CASE("sampling is independent of worker count") {
  const ExpFunParams p{0.3, 0.2};
  CHECK(sample_many(p, {50, Scheme::LeftPoint}, 1, 9000, 1) == sample_many(p, {50, Scheme::LeftPoint}, 1, 9000, 8));
}

TEST_CASE("standardize") {
  const auto m = moments({0.0, 0.1});
  CHECK(standardize(m.m_t, m) == 0.0);
  CHECK(standardize(m.m_t + m.sigma_t, m) == doctest::Approx(1.0));
}

TEST_CASE("concentration bounds") {
  const ExpFunParams p{0.0, 0.1};
  const auto m = moments(p);
  CHECK(tail_upper_dk1(0.0, p, m) == 1.0);
  const double l = std::log(1.0 + m.sigma_t / m.m_t);
  CHECK(tail_upper_dk1(1.0, p, m) == doctest::Approx(std::exp(-l * l / 0.2)).epsilon(1e-14));
  CHECK(tail_lower_dk2(0.0) == 1.0);
  CHECK(tail_lower_dk2(2.0) == doctest::Approx(0.1353352832366127).epsilon(1e-14));
  CHECK(two_sided_tail(0.0, p, m) == 1.0);
  CHECK(two_sided_tail(4.0, p, m) == doctest::Approx(tail_upper_dk1(2.0, p, m) + std::exp(-2.0)));
  CHECK(two_sided_tail(-4.0, p, m) == two_sided_tail(4.0, p, m));
  CHECK_THROWS(tail_upper_dk1(-1.0, p, m));
  CHECK_THROWS(tail_lower_dk2(-1.0));
  double prev = 2.0;
  for (double x = 0.0; x <= 10.0; x += 0.1) {
    const double v = tail_upper_dk1(x, p, m);
    CHECK(v <= prev);
    CHECK(v >= 0.0);
    prev = v;
  }
}

TEST_CASE("gamma second moment and vnms bound") {
  const ExpFunParams p1{0.0, 1.0};
  const auto m1 = moments(p1);
  CHECK(gamma_second_moment_upper(p1, m1) ==
        doctest::Approx(4.0 * std::exp(8.0) / (m1.sigma2_t * m1.sigma2_t)).epsilon(1e-14));
  for (double t : {0.01, 0.05, 0.1, 1.0}) {
    const ExpFunParams p{0.2, t};
    const auto m = moments(p);
    CHECK(vnms_prefactor(p, m) == doctest::Approx(std::sqrt(gamma_second_moment_upper(p, m))).epsilon(1e-13));
    CHECK(vnms_bound(p, m, 0.0) == doctest::Approx(4.0 * vnms_prefactor(p, m)).epsilon(1e-15));
    for (double z = 0.5; z < 8.0; z += 0.5) {
      CHECK(vnms_bound(p, m, z) == vnms_bound(p, m, -z));
      CHECK(vnms_bound(p, m, z) > 0.0);
    }
  }
  const ExpFunParams small{0.0, 1e-3};
  const auto ms = moments(small);
  CHECK(vnms_prefactor(small, ms) / (6.0 * std::sqrt(1e-3)) == doctest::Approx(1.0).epsilon(0.01));
}
