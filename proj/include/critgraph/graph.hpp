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

#ifndef CRITGRAPH_GRAPH_HPP_
#define CRITGRAPH_GRAPH_HPP_

#include <cstdint>
#include <vector>

#include "critgraph/rational.hpp"
#include "critgraph/stats.hpp"
#include "json.hpp"

namespace critgraph {
class Rng;
}

namespace critgraph::graph {

// Critical-window parameters p = 1/n + lambda n^{-4/3} and the scales
// derived from them.
struct CriticalParams {
  std::int64_t n = 0;
  double A = 0.0;
  double lambda = 0.0;
  double p = 0.0;
  // ceil(A n^{2/3})
  std::int64_t T2 = 0;
  // 2 floor(n^{2/3} / A^2) - 1
  std::int64_t T1 = 0;
  // ceil(n^{1/3} / A): start level of the second-strategy walk
  std::int64_t H = 0;
  // floor(n^{2/5}): active-set cap of the exploration coupling
  std::int64_t K = 0;
  // ceil(T2^2 p / 2 - T2 / sqrt(n)): lower summation limit of the upper bound
  std::int64_t ballot_threshold = 0;

  // Throws DomainError unless n >= 1, A > 0 and p lies in [0, 1].
  static CriticalParams make(std::int64_t n, double A, double lambda);
  // Same scales, with lambda solved from an explicit edge probability.
  static CriticalParams with_p(std::int64_t n, double p, double A = 1.0);

  // K + T2 < n, required by the exploration coupling.
  bool coupling_feasible() const { return K + T2 < n; }

  nlohmann::json to_json() const;
};

// One run of the exploration process from a fixed vertex.
struct ExplorationTrace {
  std::vector<std::int64_t> eta;  // eta_1..eta_tau
  std::vector<std::int64_t> Y;    // Y_0..Y_tau, Y_0 = 1
  std::vector<std::int64_t> U;    // U_0..U_tau, U_t = n - Y_t - t
  std::int64_t component_size = 0;
  std::int64_t stopped_at = 0;
  // True when exploration was cut off at max_steps with Y > 0; then the
  // component has more than component_size (= max_steps) vertices.
  bool censored = false;
};

// Simulates the exploration of C(v) without materializing the graph:
// eta_t ~ Bin(U_{t-1}, p) given the past. Requires 0 <= max_steps <= n.
ExplorationTrace explore_component(std::int64_t n, double p, std::int64_t max_steps, Rng& rng);
ExplorationTrace explore_component(const CriticalParams& params, std::int64_t max_steps,
                                   Rng& rng);

// True iff the exploration survives k steps, i.e. |C(v)| > k.
bool component_exceeds(std::int64_t n, double p, std::int64_t k, Rng& rng);

// Exact law of |C(1)| on G(n, p) by enumerating every graph; entry s-1 is
// P(|C(1)| = s). Requires n <= 6.
std::vector<Rational> component_law_exact(int n, const Rational& p);

// Monte Carlo P(|C(v)| > k).
TailEstimate tail_component(const CriticalParams& params, std::int64_t k, std::uint64_t trials,
                            std::uint64_t seed, unsigned workers = 1);

// Largest component size of one G(n, p) sample: geometric skipping over the
// lexicographic edge order, merging endpoints in a disjoint-set forest.
std::int64_t sample_cmax(std::int64_t n, double p, Rng& rng);

// Monte Carlo P(|C_max| > k).
TailEstimate tail_cmax(const CriticalParams& params, std::int64_t k, std::uint64_t trials,
                       std::uint64_t seed, unsigned workers = 1);

// Several thresholds evaluated on the same graph samples; trial i of any
// call with the same seed sees the same graph.
std::vector<TailEstimate> tail_cmax_multi(const CriticalParams& params,
                                          const std::vector<std::int64_t>& ks,
                                          std::uint64_t trials, std::uint64_t seed,
                                          unsigned workers = 1);

// (n / k) * P(|C(v)| > k), the first-moment bound on P(|C_max| > k).
double markov_cmax_from_component(const TailEstimate& tail_v, std::int64_t n, std::int64_t k);

// |C(1)| on a graph whose edge {u, v} is present iff its uniform, a fixed
// function of (seed, edge index), is below p. Pathwise nondecreasing in p.
std::int64_t component_size_shared_uniforms(std::int64_t n, double p, std::uint64_t seed);

// Disjoint-set forest with union by size and path halving. A root stores
// minus its set size.
class DisjointSets {
 public:
  explicit DisjointSets(std::int64_t n);

  void reset();
  std::int32_t find(std::int32_t x);
  // Returns the size of the merged set.
  std::int32_t unite(std::int32_t a, std::int32_t b);
  std::int32_t size_of(std::int32_t x) { return -link_[static_cast<std::size_t>(find(x))]; }

 private:
  std::vector<std::int32_t> link_;
};

}  // namespace critgraph::graph

#endif  // CRITGRAPH_GRAPH_HPP_
