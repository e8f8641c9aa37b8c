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

#include <set>

#include "critgraph/ballot.hpp"
#include "critgraph/errors.hpp"
#include "doctest.h"
#include "support/oracles.hpp"

using namespace critgraph;
using namespace critgraph::ballot;

TEST_CASE("rotation by n is the identity") {
  const WalkPath w({1, -1, 1});
  const auto r = rotate_walk(w, 3);
  CHECK(r == w);
  CHECK(r.sums() == std::vector<std::int64_t>{0, 1, 0, 1});
}

TEST_CASE("rotation by one moves the first increment to the end") {
  const auto r = rotate_walk(WalkPath({1, -1, 1}), 1);
  CHECK(r.increments() == std::vector<std::int64_t>{-1, 1, 1});
  CHECK(r.sums() == std::vector<std::int64_t>{0, -1, 0, 1});
}

TEST_CASE("rotations keep the increment multiset and final sum") {
  const WalkPath w({2, -1, 0, -1, 1, 2});
  for (std::size_t r = 1; r <= w.length(); ++r) {
    for (std::size_t s = 1; s <= w.length(); ++s) {
      const auto twice = rotate_walk(rotate_walk(w, r), s);
      CHECK(twice.final_sum() == w.final_sum());
      auto a = twice.increments();
      auto b = w.increments();
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      CHECK(a == b);
    }
  }
}

TEST_CASE("rotation index must lie in [1, n]") {
  CHECK_THROWS_AS(rotate_walk(WalkPath({1, 1}), 0), DomainError);
  CHECK_THROWS_AS(rotate_walk(WalkPath({1, 1}), 3), DomainError);
}

TEST_CASE("favourable rotation counts") {
  CHECK(count_favourable(WalkPath({1, -1, 1})) == 1);
  CHECK(count_favourable(WalkPath({1, 1})) == 2);
  // every +-1 path of length 4 with nonpositive end has no favourable rotation
  oracle::for_each_sequence({-1, 1}, 4, [](const std::vector<int>& idx) {
    std::vector<std::int64_t> inc;
    for (int i : idx) inc.push_back(i == 0 ? -1 : 1);
    const WalkPath w(inc);
    if (w.final_sum() <= 0) CHECK(count_favourable(w) == 0);
  });
}

TEST_CASE("step distribution validation and json round trip") {
  CHECK_THROWS_AS(StepDistribution({0, 1}, {Rational(1, 2), Rational(1, 3)}), DomainError);
  CHECK_THROWS_AS(StepDistribution({0, 1}, {Rational(3, 2), Rational(-1, 2)}), DomainError);
  const auto d = StepDistribution::uniform({2, -1, 0});
  CHECK(d.support() == std::vector<std::int64_t>{-1, 0, 2});
  const auto back = StepDistribution::from_json(d.to_json());
  CHECK(back.support() == d.support());
  CHECK(back.probabilities() == d.probabilities());
  CHECK(d.mean() == Rational(1, 3));
  CHECK(StepDistribution::uniform({-2, 0, 4}).lattice_span() == 2);
}

TEST_CASE("ballot left side for fair steps") {
  const auto fair = StepDistribution::fair_sign();
  CHECK(ballot_lhs_exact(fair, 4, 2) == Rational(1, 8));
  CHECK(ballot_lhs_exact(fair, 4, 4) == Rational(1, 16));
  const auto d = StepDistribution({-1, 1, 2}, {Rational(1, 2), Rational(1, 3), Rational(1, 6)});
  CHECK(ballot_lhs_exact(d, 1, 2) == Rational(1, 6));
  CHECK(ballot_lhs_exact(d, 1, 1) == Rational(1, 3));
}

TEST_CASE("ballot inequality examples") {
  const auto eq = check_ballot_inequality(StepDistribution::fair_sign(), 4, 2);
  CHECK(eq.lhs == Rational(1, 8));
  CHECK(eq.rhs == Rational(1, 8));
  CHECK(eq.holds);

  const auto u = StepDistribution::uniform({-1, 0, 1});
  const auto r = check_ballot_inequality(u, 3, 1);
  const auto [pos, end] = oracle::positive_and_endpoint(u.support(), u.probabilities(), 3, 1);
  CHECK(r.lhs == pos);
  CHECK(r.rhs == Rational(1, 3) * end);
  CHECK(r.holds);

  const auto far = check_ballot_inequality(u, 3, 4);
  CHECK(far.lhs == 0);
  CHECK(far.rhs == 0);
}

TEST_CASE("shifted form examples") {
  const auto fair = StepDistribution::fair_sign();
  const auto a = check_corollary_shifted(fair, 2, 1, 1);
  // only (+,-) keeps 1 + S_t >= 1; (-,+) touches 0 at t = 1
  CHECK(a.lhs == Rational(1, 4));
  // rhs = P(X_1 = 1)^{-1} (1/3) P(S_3 = 1) = 2 (1/3)(3/8)
  CHECK(a.rhs == Rational(1, 4));
  CHECK(a.holds);

  const auto b = check_corollary_shifted(fair, 1, 2, 1);
  CHECK(b.lhs == Rational(1, 2));
  CHECK(b.rhs == Rational(1, 2));
  CHECK(b.holds);

  const auto c = check_corollary_shifted(fair, 2, 9, 1);
  CHECK(c.lhs == 0);
  CHECK(c.holds);
}

TEST_CASE("exact enumeration agrees with brute force on a lopsided law") {
  const auto d = StepDistribution({-1, 0, 2}, {Rational(4, 9), Rational(2, 9), Rational(1, 3)});
  for (int n = 1; n <= 6; ++n) {
    for (std::int64_t j = 1; j <= 2 * n; ++j) {
      const auto [pos, end] = oracle::positive_and_endpoint(d.support(), d.probabilities(), n, j);
      CHECK(ballot_lhs_exact(d, n, j) == pos);
      const auto law = endpoint_law(d, n);
      const auto it = law.find(j);
      CHECK((it == law.end() ? Rational(0) : it->second) == end);
    }
  }
}

TEST_CASE("shifted form agrees with brute force") {
  const auto d = StepDistribution({-1, 1, 2}, {Rational(1, 3), Rational(1, 3), Rational(1, 3)});
  for (std::int64_t h : {1, 2}) {
    for (std::int64_t j = 1; j <= 8; ++j) {
      const auto r = check_corollary_shifted(d, 3, j, h);
      const auto [pos, end] = oracle::positive_and_endpoint(d.support(), d.probabilities(), 3, j, h);
      CHECK(r.lhs == pos);
    }
  }
}

TEST_CASE("grid family contents") {
  const auto fam = grid_family({-1, 0, 1, 2}, 9);
  CHECK(fam.size() == 220);
  std::set<std::vector<std::int64_t>> supports;
  for (const auto& d : fam) {
    Rational total = 0;
    for (const auto& p : d.probabilities()) {
      CHECK(p > 0);
      total += p;
    }
    CHECK(total == 1);
    supports.insert(d.support());
  }
  CHECK(supports.size() == 15);
}

TEST_CASE("small exhaustive audits pass") {
  CHECK(audit_ballot_family(grid_family({-1, 1, 2}, 4), 5).violations == 0);
  CHECK(audit_favourable_counts({-1, 0, 1, 2}, 5).violations == 0);
  CHECK(audit_cycle_equality(8).violations == 0);
}

TEST_CASE("rate check single step") {
  const auto rows = kemperman_rate_check(StepDistribution::fair_sign(), 1, 1, 20000, 7);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1].j == 1);
  CHECK(rows[1].estimate.estimate == doctest::Approx(0.5).epsilon(0.03));
  CHECK(rows[1].ratio == doctest::Approx(0.25).epsilon(0.03));
}

TEST_CASE("rate check ratios for fair steps are positive") {
  const auto rows = kemperman_rate_check(StepDistribution::fair_sign(), 100, 6, 200000, 11);
  for (const auto& r : rows) {
    if (r.j >= 2 && r.j % 2 == 0) {
      CHECK(r.ratio > 0.0);
      CHECK(std::isfinite(r.ratio));
    }
  }
}

TEST_CASE("determinism of the rate check") {
  const auto d = StepDistribution::uniform({-1, 0, 1});
  const auto a = kemperman_rate_check(d, 30, 4, 5000, 3, 1);
  const auto b = kemperman_rate_check(d, 30, 4, 5000, 3, 3);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].estimate.successes == b[i].estimate.successes);
}
