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

// Sanity checks of the reference computations themselves against values
// that can be worked out by hand.
#include <cmath>

#include "doctest.h"
#include "support/oracles.hpp"

TEST_CASE("graph enumeration on three vertices") {
  const auto laws = oracle::enumerate_graph_laws(3, 0.5);
  CHECK(laws.component[1] == doctest::Approx(0.25));
  CHECK(laws.component[2] == doctest::Approx(0.25));
  CHECK(laws.component[3] == doctest::Approx(0.5));
  // connected iff at least two of three edges
  CHECK(laws.cmax[3] == doctest::Approx(0.5));
  CHECK(laws.cmax[1] == doctest::Approx(0.125));
}

TEST_CASE("graph enumeration on four vertices") {
  const auto laws = oracle::enumerate_graph_laws(4, 0.5);
  CHECK(laws.component[1] == doctest::Approx(0.125));
  // 38 of the 64 labelled graphs on four vertices are connected
  CHECK(laws.cmax[4] == doctest::Approx(38.0 / 64));
  double total = 0;
  for (double v : laws.cmax) total += v;
  CHECK(total == doctest::Approx(1.0));
}

TEST_CASE("incomplete beta tail") {
  CHECK(oracle::binomial_upper_tail(4, 0.5, 3) == doctest::Approx(5.0 / 16));
  CHECK(oracle::binomial_upper_tail(10, 0.5, 10) == doctest::Approx(std::ldexp(1.0, -10)));
  CHECK(oracle::binomial_upper_tail(10, 0.3, 0) == 1.0);
  CHECK(oracle::binomial_upper_tail(10, 0.3, 11) == 0.0);
}

TEST_CASE("reflection window limits") {
  // barrier far below: plain Gaussian window
  CHECK(oracle::reflection_window(0.0, -50.0, 1.0, -1.0, 1.0) ==
        doctest::Approx(std::erf(1.0 / std::sqrt(2.0))));
  // from x = 1 above 0, all terminal values: 1 - 2 P(N < -1)
  CHECK(oracle::reflection_window(1.0, 0.0, 1.0, 0.0, 60.0) ==
        doctest::Approx(0.6826894921370859).epsilon(1e-13));
}

TEST_CASE("brute force ballot counts") {
  const std::vector<oracle::Rational> half{oracle::Rational(1, 2), oracle::Rational(1, 2)};
  const auto [pos, end] = oracle::positive_and_endpoint({-1, 1}, half, 4, 2);
  CHECK(pos == oracle::Rational(1, 8));
  CHECK(end == oracle::Rational(1, 4));
  const auto [pos1, end1] = oracle::positive_and_endpoint({-1, 1}, half, 2, 1, 1);
  CHECK(pos1 == oracle::Rational(1, 4));
  CHECK(end1 == 0);
}
