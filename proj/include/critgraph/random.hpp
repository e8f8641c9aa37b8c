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

#ifndef CRITGRAPH_RANDOM_HPP_
#define CRITGRAPH_RANDOM_HPP_

#include <cstdint>
#include <random>

namespace critgraph {

// SplitMix64 finalizer. Used to derive independent stream seeds from a
// master seed and a counter so that results never depend on scheduling.
std::uint64_t mix64(std::uint64_t x);

// Seed for trial `counter` of a run seeded with `master`.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t counter);

// Random source with exact discrete samplers. All variates are built from
// the raw 64-bit engine output, so streams are reproducible across standard
// library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Uniform on (0, 1).
  double uniform_open();

  bool bernoulli(double p);

  // Exact Binomial(n, p). Inversion when min(p, 1-p) * n < 10, otherwise
  // transformed rejection with squeeze (BTRS).
  std::int64_t binomial(std::int64_t n, double p);

  // Exact Poisson(mean) by inversion; means above 10 are split into a sum of
  // independent Poisson pieces of mean at most 10.
  std::int64_t poisson(double mean);

  double normal();

  // Number of failures before the first success of Bernoulli(p) trials,
  // given log1m_p = log(1 - p). Returns INT64_MAX for p == 0.
  std::int64_t geometric_skip(double log1m_p);

 private:
  std::int64_t binomial_inversion(std::int64_t n, double p);
  std::int64_t binomial_btrs(std::int64_t n, double p);
  std::int64_t poisson_inversion(double mean);

  std::mt19937_64 engine_;
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

}  // namespace critgraph

#endif  // CRITGRAPH_RANDOM_HPP_
