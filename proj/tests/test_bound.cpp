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
#include <memory>
#include <vector>

#include "oracles.hpp"
#include "steinbound/bound.hpp"
#include "steinbound/chaos.hpp"
#include "steinbound/numeric.hpp"

using namespace steinbound::bounds;

TEST_CASE("tail models") {
  CHECK(tail_probability(tail::Unit{}, 3.0) == 1.0);
  CHECK(tail_probability(tail::Markov{6.0, 15.0}, 2.0) == 0.234375);
  CHECK(tail_probability(tail::Markov{6.0, 15.0}, 0.5) == 1.0);
  CHECK(tail_probability(tail::Markov{6.0, 15.0}, 0.0) == 1.0);
  // c_q^2 exp(-x^{2/q}/2) with q = 2, x = 4.
  CHECK(tail_probability(tail::MajorChaos{2, 1.0}, 4.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-15));
  CHECK(tail_probability(tail::MajorChaos{3, 0.5}, 8.0) == doctest::Approx(0.25 * std::exp(-2.0)).epsilon(1e-14));
  const tail::ExactCdf exact{&steinbound::chaos::exact_cdf_q2_rank1};
  CHECK(tail_probability(exact, 2.0) ==
        doctest::Approx(1.0 - oracle::chaos_q2_rank1_cdf(2.0) + oracle::chaos_q2_rank1_cdf(-2.0)));
  auto ecdf = std::make_shared<const steinbound::empirical::EmpiricalCdf>(std::vector<double>{-3.0, 1.0, 2.0, 5.0});
  CHECK(tail_probability(tail::Empirical{ecdf}, 1.5) == 0.75);
  CHECK_THROWS(tail_probability(tail::Unit{}, -1.0));
  CHECK_THROWS(validate(TailModel{tail::Markov{0.0, 1.0}}));
  CHECK_THROWS(validate(TailModel{tail::MajorChaos{1, 1.0}}));
  CHECK_THROWS(validate(TailModel{tail::MajorChaos{2, 0.0}}));
  CHECK_THROWS(validate(TailModel{tail::Empirical{nullptr}}));
}

TEST_CASE("property: tail models lie in [0,1] and are non-increasing") {
  const auto p = steinbound::expfun::ExpFunParams{0.0, 0.1};
  const std::vector<TailModel> models{
      tail::Unit{},
      tail::Markov{6.0, 755.0},
      tail::Markov{2.5, 0.3},
      tail::MajorChaos{3, 2.0},
      tail::ExactCdf{&steinbound::chaos::exact_cdf_q2_rank1},
      tail::ExpFunTwoSided{p, steinbound::expfun::moments(p)},
  };
  for (const auto& m : models) {
    double prev = 1.0;
    for (double x = 0.0; x <= 30.0; x += 0.05) {
      const double v = tail_probability(m, x);
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
      CHECK(v <= prev + 1e-15);
      prev = v;
    }
  }
}

TEST_CASE("nonuniform bound examples") {
  const BoundInputs unit{0.0, std::sqrt(2.0), tail::Unit{}, {}};
  CHECK(nonuniform_bound(unit, 0.0) == doctest::Approx(3.0 * std::sqrt(2.0)).epsilon(1e-15));
  const BoundInputs exact{0.0, std::sqrt(2.0), tail::ExactCdf{&steinbound::chaos::exact_cdf_q2_rank1}, {}};
  const double p = 1.0 - oracle::chaos_q2_rank1_cdf(2.0) + oracle::chaos_q2_rank1_cdf(-2.0);
  CHECK(nonuniform_bound(exact, 4.0) ==
        doctest::Approx(std::sqrt(2.0) * (std::sqrt(p) + 2.0 * std::exp(-4.0))).epsilon(1e-12));
  CHECK(nonuniform_bound(exact, -4.0) == nonuniform_bound(exact, 4.0));
  const BoundInputs mean{0.5, 0.0, tail::Unit{}, {}};
  CHECK(nonuniform_bound(mean, 0.0) == doctest::Approx(1.5));
  CHECK_THROWS(validate(BoundInputs{-1.0, 0.0, tail::Unit{}, {}}));
  CHECK_THROWS(validate(BoundInputs{0.0, -1.0, tail::Unit{}, {}}));
}

TEST_CASE("chaos bound") {
  CHECK(chaos_bound(2, 15.0, 1.0, 0.0) == doctest::Approx(3.0 * std::sqrt(2.0)).epsilon(1e-14));
  for (double z : {-3.0, 0.0, 1.0, 7.0}) CHECK(chaos_bound(2, 3.0, 1.0, z) == 0.0);
  CHECK_THROWS_AS(chaos_bound(2, 2.5, 1.0, 0.0), std::domain_error);
  // First factor equals the Stein discrepancy upper bound (the uniform bound).
  const double d = steinbound::chaos::stein_discrepancy_upper(3, 20.0).value;
  const double shape = 2.0 * std::exp(-std::pow(2.0, 2.0 / 3.0) / std::pow(2.0, 2.0 + 2.0 / 3.0)) + 2.0 * std::exp(-1.0);
  CHECK(chaos_bound(3, 20.0, 2.0, 2.0) == doctest::Approx(d * shape).epsilon(1e-14));
  CHECK(uniform_bound(BoundInputs{0.0, d, tail::Unit{}, {}}) == d);
}

TEST_CASE("chaos bound equals the general bound with the Major tail") {
  for (int q : {2, 3, 5})
    for (double m4 : {3.5, 15.0, 40.0})
      for (double z = -9.0; z <= 9.0; z += 0.5) {
        const double d = steinbound::chaos::stein_discrepancy_upper(q, m4).value;
        const BoundInputs in{0.0, d, tail::MajorChaos{q, 1.0}, {}};
        CHECK(chaos_bound(q, m4, 1.0, z) == doctest::Approx(nonuniform_bound(in, z)).epsilon(1e-13));
      }
}

TEST_CASE("uniform bound") {
  CHECK(uniform_bound(BoundInputs{0.0, std::sqrt(2.0), tail::Unit{}, {}}) == std::sqrt(2.0));
  CHECK(uniform_bound(BoundInputs{0.0, 0.0, tail::Unit{}, {}}) == 0.0);
}

TEST_CASE("bound curves") {
  const BoundInputs exact{0.0, std::sqrt(2.0), tail::ExactCdf{&steinbound::chaos::exact_cdf_q2_rank1}, {}};
  const std::vector<double> zero{0.0};
  const auto single = evaluate_curve(exact, zero);
  REQUIRE(single.rows.size() == 1);
  CHECK(single.rows[0].bound == nonuniform_bound(exact, 0.0));
  const auto sym = evaluate_curve(exact, std::vector<double>{-1.0, 1.0});
  CHECK(sym.rows[0].bound == sym.rows[1].bound);

  const auto grid = steinbound::linspace(-8.0, 8.0, 161);
  const auto curve = evaluate_curve(exact, grid);
  // Crossover: from some |z| on the bound stays below the uniform baseline.
  double crossover = -1.0;
  for (std::size_t i = curve.rows.size(); i-- > 80;) {
    if (curve.rows[i].bound >= std::sqrt(2.0)) break;
    crossover = curve.rows[i].z;
  }
  CHECK(crossover > 0.0);
  CHECK(crossover < 8.0);
  for (const auto& r : curve.rows) {
    CHECK(r.bound == doctest::Approx(std::sqrt(2.0) * (std::sqrt(r.tail_term) + r.gaussian_term)));
    CHECK(r.gaussian_term == doctest::Approx(2.0 * std::exp(-r.z * r.z / 4.0)));
  }
  const auto over = evaluate_curve(exact, grid, [](double z) { return std::fabs(z); });
  CHECK(over.rows[0].bound == 8.0);
  CHECK_THROWS_AS(evaluate_curve(exact, grid, [](double z) { return z; }), CurvePointError);
}

TEST_CASE("property: bound is even in z for symmetric tails and decays") {
  const BoundInputs in{0.1, 0.7, tail::Markov{4.0, 3.0}, {}};
  double prev = nonuniform_bound(in, 0.0);
  for (double z = 0.1; z <= 40.0; z += 0.1) {
    const double b = nonuniform_bound(in, z);
    CHECK(b == nonuniform_bound(in, -z));
    CHECK(b <= prev + 1e-15);
    prev = b;
  }
}
