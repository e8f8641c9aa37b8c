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
#include <random>

#include "critgraph/brownian.hpp"
#include "critgraph/errors.hpp"
#include "doctest.h"
#include "support/oracles.hpp"

using namespace critgraph;
using namespace critgraph::brownian;

namespace {

double gaussian_density(double t, double d) {
  return std::exp(-d * d / (2 * t)) / std::sqrt(2 * M_PI * t);
}

// Importance-sampled estimate for a two-segment polyline: the path carries
// drift theta1 then theta2, aimed at the middle of each window, and is
// reweighted by the Girsanov factor. Killing uses the bridge crossing
// probability against each linear piece, which is exact for any drift.
std::pair<double, double> tilted_polyline_mc(const PolylineQuery& q, int steps, int paths,
                                             std::uint64_t seed) {
  const double d1 = q.first.duration;
  const double d2 = q.second.duration;
  const double theta1 = (0.5 * (q.mid_low + q.mid_high) - q.x0) / d1;
  const double theta2 = (0.5 * (q.z_low + q.z_high) - 0.5 * (q.mid_low + q.mid_high)) / d2;
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unif;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int i = 0; i < paths; ++i) {
    double x = q.x0;
    double log_w = 0.0;
    bool alive = true;
    for (int seg = 0; seg < 2 && alive; ++seg) {
      const auto& line = seg == 0 ? q.first : q.second;
      const double theta = seg == 0 ? theta1 : theta2;
      const double dt = line.duration / steps;
      for (int k = 0; k < steps; ++k) {
        const double dw = std::sqrt(dt) * normal(gen) + theta * dt;
        log_w += -theta * dw + 0.5 * theta * theta * dt;
        const double a = x - (line.intercept + line.slope * k * dt);
        x += dw;
        const double b = x - (line.intercept + line.slope * (k + 1) * dt);
        if (a <= 0 || b <= 0 || unif(gen) < std::exp(-2 * a * b / dt)) {
          alive = false;
          break;
        }
      }
      if (alive && seg == 0 && (x < q.mid_low || x > q.mid_high)) alive = false;
    }
    if (alive && x >= q.z_low && x <= q.z_high) {
      const double w = std::exp(log_w);
      sum += w;
      sum_sq += w * w;
    }
  }
  const double mean = sum / paths;
  const double var = sum_sq / paths - mean * mean;
  return {mean, std::sqrt(var / paths)};
}

}  // namespace

TEST_CASE("density vanishes at the line when starting on it") {
  LineCrossingQuery q{0.0, -0.5, 0.3, 1.0, 0.0, 1.0};
  CHECK(stay_above_line_density(q, -0.2 + 1e-15) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("density approaches the free gaussian as the line drops") {
  LineCrossingQuery q{0.5, -60.0, 0.0, 1.3, -1.0, 1.0};
  for (double z : {-1.0, 0.0, 0.7, 2.0}) {
    CHECK(stay_above_line_density(q, z) == doctest::Approx(gaussian_density(1.3, z - 0.5)));
  }
}

TEST_CASE("density is zero below the line") {
  LineCrossingQuery q{1.0, 0.0, 0.5, 2.0, 0.0, 3.0};
  CHECK(stay_above_line_density(q, 0.9) == 0.0);
  CHECK(stay_above_line_density(q, 1.1) > 0.0);
}

TEST_CASE("window integral matches quadrature of the density") {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    LineCrossingQuery q;
    q.y = -1 + 2 * u(gen);
    q.x = q.y + 0.05 + 2 * u(gen);
    q.mu = -1 + 2 * u(gen);
    q.t = 0.2 + 3 * u(gen);
    q.z_low = q.y + q.mu * q.t + u(gen);
    q.z_high = q.z_low + 0.1 + 3 * u(gen);
    const auto quad = adaptive_simpson([&](double z) { return stay_above_line_density(q, z); },
                                       q.z_low, q.z_high);
    CHECK(stay_above_line_window(q) == doctest::Approx(quad.value).epsilon(1e-9));
  }
}

TEST_CASE("window integral reduces to the reflection formula") {
  std::mt19937_64 gen(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double y = -2 + 4 * u(gen);
    const double x = y + 0.01 + 3 * u(gen);
    const double t = 0.1 + 4 * u(gen);
    const double a = y + 2 * u(gen);
    const double b = a + 0.05 + 3 * u(gen);
    const double ref = oracle::reflection_window(x, y, t, a, b);
    const double got = stay_above_line_window({x, y, 0.0, t, a, b});
    if (ref > 1e-200) CHECK(std::fabs(got / ref - 1) <= 1e-10);
  }
}

TEST_CASE("total mass is at most one and grows as the line drops") {
  double prev = 0.0;
  for (double y : {-0.1, -1.0, -3.0, -10.0, -40.0}) {
    const double m = stay_above_line_window({0.0, y, 0.2, 1.5, -kInf, kInf});
    CHECK(m <= 1.0);
    CHECK(m >= prev);
    prev = m;
  }
  CHECK(prev == doctest::Approx(1.0));
}

TEST_CASE("query validation") {
  CHECK_THROWS_AS(stay_above_line_window({0.0, 0.0, 0.0, 1.0, 0.0, 1.0}), DomainError);
  CHECK_THROWS_AS(stay_above_line_window({1.0, 0.0, 0.0, 0.0, 0.0, 1.0}), DomainError);
}

TEST_CASE("adaptive simpson") {
  const auto r = adaptive_simpson([](double x) { return std::exp(-x * x); }, -6, 6);
  CHECK(r.value == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-12));
  CHECK_THROWS_AS(
      adaptive_simpson([](double x) { return x < 0.3183 ? 0.0 : 1.0; }, -1, 1, {1e-14, 12}),
      ConvergenceError);
  CHECK_THROWS_AS(adaptive_simpson([](double x) { return 1.0 / std::sqrt(std::fabs(x)); }, -1, 1),
                  DomainError);
}

TEST_CASE("curve constructors") {
  const auto p = graph::CriticalParams::make(1000000, 4.0, 0.0);
  const auto c = make_curves(p);
  const double n13 = 100.0;
  for (double s : {0.0, 100.0, 5000.0, c.T}) {
    CHECK(c.phi(s) - c.gamma(s) == doctest::Approx(n13 / 32.0));
    CHECK(c.g(s) < c.gamma(s));
  }
  CHECK(c.psi_T - c.gamma(c.T) == doctest::Approx(n13 / 16.0));
  for (int i = 0; i <= 100; ++i) {
    const double s = c.T / 2 * i / 100.0;
    CHECK(c.ell1(s) >= c.phi(s) - 1e-9);
    CHECK(c.ell2(s) >= c.phi(c.T / 2 + s) - 1e-9);
  }
}

TEST_CASE("interval lies above the curve on the swept grid") {
  for (double A : {5.0, 6.0, 8.0}) {
    CHECK(make_curves(graph::CriticalParams::make(1000000000, A, 0.0)).interval_above_curve());
  }
}

TEST_CASE("polyline with a zero second segment") {
  PolylineQuery q;
  q.x0 = 1.0;
  q.first = {0.0, 0.2, 1.0};
  q.second = {0.2, 0.0, 0.0};
  q.z_low = 0.5;
  q.z_high = 2.0;
  CHECK(stay_above_polyline(q) ==
        doctest::Approx(stay_above_line_window({1.0, 0.0, 0.2, 1.0, 0.5, 2.0})));
}

TEST_CASE("polyline far above both lines factorises") {
  PolylineQuery q;
  q.x0 = 0.0;
  q.first = {-80.0, 0.0, 1.0};
  q.second = {-80.0, 0.0, 2.0};
  q.mid_low = -0.5;
  q.mid_high = 1.0;
  q.z_low = -1.0;
  q.z_high = 0.5;
  const double direct = oracle::normal_cdf(1.0) - oracle::normal_cdf(-0.5);
  // P(B_1 in mid, B_3 in z) by quadrature of the free kernel
  const auto ref = adaptive_simpson(
      [](double w) {
        return gaussian_density(1.0, w) *
               (oracle::normal_cdf((0.5 - w) / std::sqrt(2.0)) -
                oracle::normal_cdf((-1.0 - w) / std::sqrt(2.0)));
      },
      -0.5, 1.0);
  CHECK(stay_above_polyline(q) == doctest::Approx(ref.value).epsilon(1e-9));
  CHECK(ref.value < direct);
}

TEST_CASE("construction-shaped polyline agrees with tilted monte carlo") {
  const auto p = graph::CriticalParams::make(1000000, 4.0, 0.0);
  const auto c = make_curves(p);
  PolylineQuery q;
  q.first = {c.ell1.c0, c.ell1.c1, c.T / 2};
  q.second = {c.ell2.c0, c.ell2.c1, c.T / 2};
  q.mid_low = c.interval_low;
  q.mid_high = c.interval_high;
  q.z_low = c.phi(c.T);
  q.z_high = c.psi_T;
  const double value = stay_above_polyline(q);
  const auto [mc, se] = tilted_polyline_mc(q, 200, 100000, 17);
  CHECK(value > 0.0);
  CHECK(se > 0.0);
  // the discretised window checks are exact here, so any gap is sampling noise
  CHECK(std::fabs(mc - value) <= 3 * se);
}

TEST_CASE("lower bound is positive and its exponent matches") {
  for (double A : {4.0, 6.0, 8.0}) {
    const auto r = pn_lower_bound(graph::CriticalParams::make(1000000000, A, 0.0), 0.0, 0.0);
    CHECK(r.value > 0.0);
    CHECK(r.exponent_check <= 6.0);
  }
  CHECK_THROWS_AS(pn_lower_bound(graph::CriticalParams::make(1000000000, 8.0, 0.0), 0.0, 1.0),
                  DomainError);
}

TEST_CASE("scaled lower bound stays in a band for A in [3, 6]") {
  double lo = 1e300;
  double hi = 0.0;
  for (double A = 3.0; A <= 6.0; A += 0.5) {
    const auto r = pn_lower_bound(graph::CriticalParams::make(1000000000, A, 0.0), 0.0, 0.0);
    lo = std::min(lo, r.scaled_value);
    hi = std::max(hi, r.scaled_value);
  }
  CHECK(lo > 0.0);
  CHECK(hi / lo < 20.0);
}

TEST_CASE("monte carlo oracle from x = 1 above a flat line") {
  McSpec s = McSpec::for_line({1.0, 0.0, 0.0, 1.0, 0.0, kInf});
  s.paths = 100000;
  s.seed = 5;
  const auto r = mc_stay_above(s);
  const double ref = 1 - 2 * oracle::normal_cdf(-1.0);
  CHECK(ref == doctest::Approx(0.6827).epsilon(1e-4));
  CHECK(std::fabs(r.fine.estimate - ref) <= 3 * r.fine.standard_error_at(ref));
}

TEST_CASE("monte carlo oracle with a very low barrier") {
  McSpec s = McSpec::for_curve(CurveSpec{-1e6, 0.0, 0.0}, 0.0, 1.0);
  s.paths = 2000;
  CHECK(mc_stay_above(s).fine.estimate == 1.0);
  s.steps = 50;
  CHECK_THROWS_AS(mc_stay_above(s), DomainError);
}

TEST_CASE("monte carlo oracle is independent of the worker count") {
  McSpec s = McSpec::for_line({0.5, 0.0, 0.3, 1.0, 0.5, 1.5});
  s.paths = 5000;
  s.seed = 8;
  const auto a = mc_stay_above(s);
  s.workers = 3;
  const auto b = mc_stay_above(s);
  CHECK(a.fine.successes == b.fine.successes);
  CHECK(a.coarse.successes == b.coarse.successes);
}
