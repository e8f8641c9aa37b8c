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

#include "critgraph/random.hpp"

#include <array>
#include <cmath>
#include <limits>

namespace critgraph {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t counter) {
  return mix64(mix64(master) ^ mix64(counter + 0x632be59bd9b4e019ULL));
}

Rng::Rng(std::uint64_t seed) : engine_(mix64(seed)) {}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::uniform_open() {
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

bool Rng::bernoulli(double p) { return uniform() < p; }

std::int64_t Rng::binomial(std::int64_t n, double p) {
  if (n <= 0 || p <= 0.0) return 0;
  if (p >= 1.0) return n;
  if (p > 0.5) return n - binomial(n, 1.0 - p);
  if (static_cast<double>(n) * p < 10.0) return binomial_inversion(n, p);
  return binomial_btrs(n, p);
}

std::int64_t Rng::binomial_inversion(std::int64_t n, double p) {
  const double q = 1.0 - p;
  const double s = p / q;
  const double a = static_cast<double>(n + 1) * s;
  const double r0 = std::exp(static_cast<double>(n) * std::log1p(-p));
  for (;;) {
    double u = uniform();
    double r = r0;
    std::int64_t x = 0;
    while (u > r) {
      u -= r;
      ++x;
      if (x > n) break;
      r *= a / static_cast<double>(x) - s;
    }
    // Rounding residue can push the search past n; redraw in that case.
    if (x <= n) return x;
  }
}

namespace {

// Stirling series correction log(k!) - [(k + 1/2) log(k + 1) - (k + 1) + log(2 pi)/2].
double stirling_tail(std::int64_t k) {
  static constexpr std::array<double, 10> kTable = {
      0.08106146679532726, 0.04134069595540929, 0.02767792568499834,
      0.02079067210376509, 0.01664469118982119, 0.01387612882307075,
      0.01189670994589177, 0.01041126526197209, 0.009255462182712733,
      0.008330563433362871};
  if (k < 10) return kTable[static_cast<std::size_t>(k)];
  const double kp1 = static_cast<double>(k + 1);
  const double kp1sq = kp1 * kp1;
  return (1.0 / 12.0 - (1.0 / 360.0 - 1.0 / 1260.0 / kp1sq) / kp1sq) / kp1;
}

}  // namespace

// Hormann (1993), "The generation of binomial random variates", algorithm
// BTRS. Requires p <= 1/2 and n * p >= 10.
std::int64_t Rng::binomial_btrs(std::int64_t n, double p) {
  const double nd = static_cast<double>(n);
  const double q = 1.0 - p;
  const double spq = std::sqrt(nd * p * q);
  const double b = 1.15 + 2.53 * spq;
  const double a = -0.0873 + 0.0248 * b + 0.01 * p;
  const double c = nd * p + 0.5;
  const double vr = 0.92 - 4.2 / b;
  const double alpha = (2.83 + 5.1 / b) * spq;
  const double lpq = std::log(p / q);
  const auto m = static_cast<std::int64_t>(std::floor((nd + 1.0) * p));
  const double h = stirling_tail(m) + stirling_tail(n - m);

  for (;;) {
    double u = uniform() - 0.5;
    double v = uniform();
    double us = 0.5 - std::fabs(u);
    auto k = static_cast<std::int64_t>(std::floor((2.0 * a / us + b) * u + c));
    if (k < 0 || k > n) continue;
    if (us >= 0.07 && v <= vr) return k;

    v = std::log(v * alpha / (a / (us * us) + b));
    const double kd = static_cast<double>(k);
    const double md = static_cast<double>(m);
    const double bound = (md + 0.5) * std::log((md + 1.0) / (nd - md + 1.0)) +
                         (nd + 1.0) * std::log((nd - md + 1.0) / (nd - kd + 1.0)) +
                         (kd + 0.5) * std::log((nd - kd + 1.0) / (kd + 1.0)) +
                         (kd - md) * lpq;
    if (v <= h + bound - stirling_tail(k) - stirling_tail(n - k)) return k;
  }
}

std::int64_t Rng::poisson_inversion(double mean) {
  const double p0 = std::exp(-mean);
  for (;;) {
    double u = uniform();
    double pk = p0;
    std::int64_t k = 0;
    while (u > pk && k < 1000) {
      u -= pk;
      ++k;
      pk *= mean / static_cast<double>(k);
    }
    if (k < 1000) return k;
  }
}

std::int64_t Rng::poisson(double mean) {
  if (mean <= 0.0) return 0;
  std::int64_t total = 0;
  while (mean > 10.0) {
    total += poisson_inversion(10.0);
    mean -= 10.0;
  }
  return total + poisson_inversion(mean);
}

double Rng::normal() {
  if (has_spare_normal_) {
    has_spare_normal_ = false;
    return spare_normal_;
  }
  double x, y, s;
  do {
    x = 2.0 * uniform() - 1.0;
    y = 2.0 * uniform() - 1.0;
    s = x * x + y * y;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_normal_ = y * f;
  has_spare_normal_ = true;
  return x * f;
}

std::int64_t Rng::geometric_skip(double log1m_p) {
  if (log1m_p == 0.0) return std::numeric_limits<std::int64_t>::max();
  const double g = std::floor(std::log(uniform_open()) / log1m_p);
  if (g >= 9.0e18) return std::numeric_limits<std::int64_t>::max();
  return static_cast<std::int64_t>(g);
}

}  // namespace critgraph
