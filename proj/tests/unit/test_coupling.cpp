// Copyright 2026 The critgraph Authors
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

#include <cmath>

#include "critgraph/coupling.hpp"
#include "critgraph/errors.hpp"
#include "critgraph/random.hpp"
#include "doctest.h"

using namespace critgraph;
using namespace critgraph::coupling;

TEST_CASE("padding with p = 0 and p = 1") {
  Rng rng(1);
  const auto zero = pad_with_binomials(10, 0.0, 6, rng);
  for (auto x : zero.lower.increments()) CHECK(x == -1);
  for (auto x : zero.upper.increments()) CHECK(x == -1);
  const auto one = pad_with_binomials(10, 1.0, 6, rng);
  for (auto x : one.upper.increments()) CHECK(x == 9);
  CHECK(one.all_dominated());
}

TEST_CASE("padding dominates pathwise") {
  Rng rng(2);
  for (int r = 0; r < 2000; ++r) CHECK(pad_with_binomials(30, 0.1, 20, rng).all_dominated());
}

TEST_CASE("padding audit") {
  const auto r = audit_padding(30, 0.1, 20, 20000, 3);
  CHECK(r.violations == 0);
  CHECK(r.gof.size() == 3);
  CHECK(r.passed());
}

TEST_CASE("exploration coupling with p = 0") {
  Rng rng(4);
  const auto c = couple_exploration_iid(200, 0.0, 20, 50, rng);
  for (auto e : c.trace.eta) CHECK(e == 0);
  for (auto d : c.delta) CHECK(d == 0);
  CHECK(c.domination_ok);
}

TEST_CASE("exploration coupling dominates on qualifying steps") {
  Rng rng(5);
  for (int r = 0; r < 2000; ++r) {
    const auto c = couple_exploration_iid(200, 1.0 / 200.0, 20, 50, rng);
    CHECK(c.domination_ok);
    for (std::size_t t = 0; t < c.delta.size() && t < c.trace.eta.size(); ++t) {
      if (c.qualifying[t]) CHECK(c.trace.eta[t] >= c.delta[t]);
    }
  }
}

TEST_CASE("exploration coupling marginal at step 10") {
  const auto r = audit_exploration_coupling(200, 1.0 / 200.0, 20, 50, {10}, 20000, 6);
  CHECK(r.violations == 0);
  REQUIRE(r.gof.size() == 1);
  CHECK(r.gof[0].p_value > 1e-3);
}

TEST_CASE("rearrangement of the i + j array") {
  TriangularArray<std::int64_t> arr(4, 3);
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) arr.at(i, j) = i + j;
  const auto r = rearrange_bernoullis(arr);
  CHECK(r.X == std::vector<std::int64_t>{9, 7, 4});
  CHECK(r.tilde_X == std::vector<std::int64_t>{5, 7, 8});
  CHECK(r.prefix_dominated());
}

TEST_CASE("rearrangement of zeros and of a single row") {
  TriangularArray<double> zeros(5, 5);
  const auto z = rearrange_bernoullis(zeros);
  for (double x : z.X) CHECK(x == 0.0);
  for (double x : z.tilde_X) CHECK(x == 0.0);
  TriangularArray<std::int64_t> row(6, 1);
  for (int j = 1; j <= 5; ++j) row.at(1, j) = j;
  const auto r = rearrange_bernoullis(row);
  CHECK(r.tilde_X == r.X);
}

TEST_CASE("rearrangement property on random arrays") {
  const auto r = audit_rearrangement(2000, 20, 7);
  CHECK(r.samples == 2000);
  CHECK(r.violations == 0);
}

TEST_CASE("bernoulli poisson table at p = 0.1") {
  const auto t = binomial_poisson_table(0.1);
  CHECK(t.disagreement() == doctest::Approx(0.1 * (1 - std::exp(-0.1))).epsilon(1e-14));
  CHECK(t.disagreement() == doctest::Approx(0.009516).epsilon(1e-4));
  CHECK(t.disagreement() <= 0.01);
  CHECK(t.p11 == doctest::Approx(0.090484).epsilon(1e-5));
  double total = t.p00 + t.p10 + t.p11;
  for (int k = 2; k < 40; ++k) total += t.p1k(k);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(binomial_poisson_table(1.5), DomainError);
}

TEST_CASE("table sampler marginals") {
  Rng rng(8);
  const auto t = binomial_poisson_table(0.3);
  const int N = 400000;
  int ber = 0;
  int zero = 0;
  for (int i = 0; i < N; ++i) {
    const auto s = binomial_poisson_pair(t, rng);
    ber += s.bernoulli;
    zero += s.poisson == 0;
    if (s.poisson >= 1) CHECK(s.bernoulli == 1);
  }
  CHECK(std::fabs(ber / double(N) - 0.3) < 4 * std::sqrt(0.21 / N));
  const double e = std::exp(-0.3);
  CHECK(std::fabs(zero / double(N) - e) < 4 * std::sqrt(e * (1 - e) / N));
}

TEST_CASE("tilting with mu = 1 leaves the law unchanged") {
  const auto t = tilt_poisson_walk(1.0, 3, 20);
  for (std::size_t i = 0; i < t.p_marginals.size(); ++i)
    for (std::size_t k = 0; k < t.p_marginals[i].size(); ++k)
      CHECK(t.q_marginals[i][k] == doctest::Approx(t.p_marginals[i][k]).epsilon(1e-14));
}

TEST_CASE("tilted marginal at mu = 1.1") {
  const auto t = tilt_poisson_walk(1.1, 5, 30);
  for (const auto& m : t.q_marginals) {
    CHECK(std::fabs(m[1] - std::exp(-1.0)) < 1e-8);
    CHECK(std::fabs(m[0] - std::exp(-1.0)) < 1e-8);
  }
  CHECK(std::fabs(t.q_total_mass - 1.0) < 1e-8);
}

TEST_CASE("tilt weight recomputes from increments") {
  Rng rng(9);
  for (int r = 0; r < 100; ++r) {
    const auto s = sample_tilted_walk(1.3, 6, rng);
    std::int64_t sum = 0;
    for (auto x : s.increments) sum += x;
    const double w = std::pow(1.3, -static_cast<double>(sum)) * std::exp(0.3 * 6);
    CHECK(std::fabs(s.weight / w - 1.0) < 1e-12);
  }
}

TEST_CASE("truncation that drops too much mass is reported") {
  CHECK_THROWS_AS(tilt_poisson_walk(3.0, 5, 3), ResourceError);
}

TEST_CASE("poisson approximation gap") {
  CHECK(poisson_approx_gap(1000, 0.001, 0) == 0.0);
  CHECK(poisson_approx_gap(1000, 0.001, 1000) == doctest::Approx(1.0));
  const auto c = graph::CriticalParams::make(1000000, 4.0, 0.0);
  const double g = poisson_approx_gap(c.n, c.p, c.T1);
  CHECK(g == doctest::Approx(static_cast<double>(c.T1) / c.n).epsilon(1e-9));
}

TEST_CASE("table audit at p = 0.1") {
  const auto r = audit_table_coupling(0.1, 2000000, 10);
  CHECK(r.violations == 0);
  CHECK(r.extra.at("table_max_abs_error").get<double>() <= 1e-12);
  const double est = r.extra.at("disagreement_estimate").get<double>();
  const double se = r.extra.at("disagreement_se").get<double>();
  CHECK(std::fabs(est - 0.1 * (1 - std::exp(-0.1))) <= 3 * se);
}

TEST_CASE("audits are reproducible") {
  CHECK(audit_padding(30, 0.1, 20, 3000, 11).to_json() ==
        audit_padding(30, 0.1, 20, 3000, 11, 2).to_json());
  CHECK(audit_table_coupling(0.05, 3000000, 12, 1).to_json() ==
        audit_table_coupling(0.05, 3000000, 12, 2).to_json());
}
