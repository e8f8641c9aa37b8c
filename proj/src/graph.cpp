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

#include "critgraph/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "critgraph/errors.hpp"
#include "critgraph/random.hpp"

namespace critgraph::graph {

namespace {

// Largest r with r^k <= x, for x small enough that r^k fits in 128 bits.
std::int64_t integer_root(unsigned __int128 x, int k) {
  auto pow_le = [&](std::int64_t r) {
    unsigned __int128 acc = 1;
    for (int i = 0; i < k; ++i) {
      acc *= static_cast<unsigned __int128>(r);
      if (acc > x) return false;
    }
    return true;
  };
  auto r = static_cast<std::int64_t>(std::pow(static_cast<long double>(x), 1.0L / k));
  while (r > 0 && !pow_le(r)) --r;
  while (pow_le(r + 1)) ++r;
  return r;
}

// n^{1/3} in long double, exact when n is a perfect cube.
long double cube_root(std::int64_t n) {
  const std::int64_t r = integer_root(static_cast<unsigned __int128>(n), 3);
  if (static_cast<__int128>(r) * r * r == n) return static_cast<long double>(r);
  return std::cbrt(static_cast<long double>(n));
}

void fill_scales(CriticalParams& c) {
  const long double n = static_cast<long double>(c.n);
  const long double cr = cube_root(c.n);
  const long double n23 = cr * cr;
  const long double A = c.A;
  c.T2 = static_cast<std::int64_t>(std::ceil(A * n23));
  c.T1 = 2 * static_cast<std::int64_t>(std::floor(n23 / (A * A))) - 1;
  c.H = static_cast<std::int64_t>(std::ceil(cr / A));
  // floor(n^{2/5}) = largest k with k^5 <= n^2
  c.K = integer_root(static_cast<unsigned __int128>(c.n) * static_cast<unsigned __int128>(c.n), 5);
  const long double t2 = static_cast<long double>(c.T2);
  c.ballot_threshold = static_cast<std::int64_t>(
      std::ceil(t2 * t2 / 2.0L * static_cast<long double>(c.p) - t2 / std::sqrt(n)));
}

void validate(std::int64_t n, double A, double p) {
  if (n < 1) throw DomainError("vertex count n must be positive");
  if (!(A > 0.0) || !std::isfinite(A)) throw DomainError("window scale A must be positive");
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError("edge probability p = " + std::to_string(p) + " outside [0, 1]");
  }
}

}  // namespace

CriticalParams CriticalParams::make(std::int64_t n, double A, double lambda) {
  if (n < 1) throw DomainError("vertex count n must be positive");
  const long double nl = static_cast<long double>(n);
  const long double p =
      1.0L / nl + static_cast<long double>(lambda) / (nl * cube_root(n));
  validate(n, A, static_cast<double>(p));
  CriticalParams c;
  c.n = n;
  c.A = A;
  c.lambda = lambda;
  c.p = static_cast<double>(p);
  fill_scales(c);
  return c;
}

CriticalParams CriticalParams::with_p(std::int64_t n, double p, double A) {
  validate(n, A, p);
  const long double nl = static_cast<long double>(n);
  CriticalParams c;
  c.n = n;
  c.A = A;
  c.p = p;
  c.lambda = static_cast<double>((static_cast<long double>(p) - 1.0L / nl) * nl * cube_root(n));
  fill_scales(c);
  return c;
}

nlohmann::json CriticalParams::to_json() const {
  return {{"n", n},   {"A", A},   {"lambda", lambda}, {"p", p},
          {"T1", T1}, {"T2", T2}, {"H", H},           {"K", K},
          {"ballot_threshold", ballot_threshold}};
}

// ---------------------------------------------------------------------------
// Exploration

ExplorationTrace explore_component(std::int64_t n, double p, std::int64_t max_steps, Rng& rng) {
  if (max_steps < 0 || max_steps > n) {
    throw DomainError("max_steps must lie in [0, n]");
  }
  ExplorationTrace tr;
  tr.Y.push_back(1);
  tr.U.push_back(n - 1);
  std::int64_t y = 1;
  std::int64_t u = n - 1;
  for (std::int64_t t = 1; t <= max_steps; ++t) {
    const std::int64_t eta = rng.binomial(u, p);
    y += eta - 1;
    u -= eta;
    tr.eta.push_back(eta);
    tr.Y.push_back(y);
    tr.U.push_back(u);
    if (y == 0) {
      tr.component_size = t;
      tr.stopped_at = t;
      return tr;
    }
  }
  tr.component_size = max_steps;
  tr.stopped_at = max_steps;
  tr.censored = true;
  return tr;
}

ExplorationTrace explore_component(const CriticalParams& params, std::int64_t max_steps,
                                   Rng& rng) {
  return explore_component(params.n, params.p, max_steps, rng);
}

bool component_exceeds(std::int64_t n, double p, std::int64_t k, Rng& rng) {
  std::int64_t y = 1;
  std::int64_t u = n - 1;
  for (std::int64_t t = 1; t <= k; ++t) {
    const std::int64_t eta = rng.binomial(u, p);
    y += eta - 1;
    u -= eta;
    if (y == 0) return false;
  }
  return true;
}

std::vector<Rational> component_law_exact(int n, const Rational& p) {
  if (n < 1) throw DomainError("vertex count n must be positive");
  if (n > 6) throw ResourceError("exact component law enumerates 2^(n(n-1)/2) graphs; n <= 6");
  if (p < 0 || p > 1) throw DomainError("edge probability outside [0, 1]");
  const int edges = n * (n - 1) / 2;
  std::vector<std::pair<int, int>> slots;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) slots.emplace_back(a, b);

  std::vector<Rational> present(edges + 1, 1);
  std::vector<Rational> absent(edges + 1, 1);
  for (int i = 1; i <= edges; ++i) {
    present[i] = present[i - 1] * p;
    absent[i] = absent[i - 1] * (1 - p);
  }
  std::vector<Rational> law(static_cast<std::size_t>(n), 0);
  for (std::uint32_t mask = 0; mask < (1u << edges); ++mask) {
    std::uint32_t reached = 1;
    bool grew = true;
    while (grew) {
      grew = false;
      for (int e = 0; e < edges; ++e) {
        if (!(mask >> e & 1u)) continue;
        const auto [a, b] = slots[static_cast<std::size_t>(e)];
        const bool ra = reached >> a & 1u;
        const bool rb = reached >> b & 1u;
        if (ra != rb) {
          reached |= (1u << a) | (1u << b);
          grew = true;
        }
      }
    }
    const int m = __builtin_popcount(mask);
    const int size = __builtin_popcount(reached);
    law[static_cast<std::size_t>(size - 1)] += present[m] * absent[edges - m];
  }
  return law;
}

TailEstimate tail_component(const CriticalParams& params, std::int64_t k, std::uint64_t trials,
                            std::uint64_t seed, unsigned workers) {
  if (k < 0 || k > params.n) throw DomainError("threshold k must lie in [0, n]");
  const auto hits = parallel_count(trials, workers, seed, [&](Rng& rng, std::uint64_t) {
    return component_exceeds(params.n, params.p, k, rng);
  });
  return make_tail_estimate(k, trials, hits, seed);
}

// ---------------------------------------------------------------------------
// Whole-graph sampling

DisjointSets::DisjointSets(std::int64_t n) : link_(static_cast<std::size_t>(n), -1) {}

void DisjointSets::reset() { std::fill(link_.begin(), link_.end(), -1); }

std::int32_t DisjointSets::find(std::int32_t x) {
  auto at = [this](std::int32_t i) -> std::int32_t& { return link_[static_cast<std::size_t>(i)]; };
  while (at(x) >= 0) {
    const std::int32_t parent = at(x);
    if (at(parent) >= 0) at(x) = at(parent);
    x = parent;
  }
  return x;
}

std::int32_t DisjointSets::unite(std::int32_t a, std::int32_t b) {
  a = find(a);
  b = find(b);
  auto& la = link_[static_cast<std::size_t>(a)];
  if (a == b) return -la;
  auto& lb = link_[static_cast<std::size_t>(b)];
  // roots hold -size
  if (la > lb) {
    lb += la;
    la = b;
    return -lb;
  }
  la += lb;
  lb = a;
  return -la;
}

namespace {

std::int64_t sample_cmax_into(std::int64_t n, double p, Rng& rng, DisjointSets& sets) {
  sets.reset();
  if (n <= 1 || p <= 0.0) return n >= 1 ? 1 : 0;
  const double log1m_p = std::log1p(-p);
  const std::int64_t slots = n * (n - 1) / 2;
  std::int64_t largest = 1;
  // Edge slot e is the pair (v, w), w < v, with e = v(v-1)/2 + w.
  std::int64_t e = -1;
  while (true) {
    const std::int64_t skip = rng.geometric_skip(log1m_p);
    if (skip >= slots - e - 1) break;
    e += 1 + skip;
    auto v = static_cast<std::int64_t>((1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(e))) / 2.0);
    while (v * (v - 1) / 2 > e) --v;
    while (v * (v + 1) / 2 <= e) ++v;
    const std::int64_t w = e - v * (v - 1) / 2;
    const std::int32_t s = sets.unite(static_cast<std::int32_t>(v), static_cast<std::int32_t>(w));
    largest = std::max<std::int64_t>(largest, s);
  }
  return largest;
}

}  // namespace

std::int64_t sample_cmax(std::int64_t n, double p, Rng& rng) {
  if (n < 1) throw DomainError("vertex count n must be positive");
  DisjointSets sets(n);
  return sample_cmax_into(n, p, rng, sets);
}

std::vector<TailEstimate> tail_cmax_multi(const CriticalParams& params,
                                          const std::vector<std::int64_t>& ks,
                                          std::uint64_t trials, std::uint64_t seed,
                                          unsigned workers) {
  for (auto k : ks) {
    if (k < 0 || k > params.n) throw DomainError("threshold k must lie in [0, n]");
  }
  if (params.n > std::numeric_limits<std::int32_t>::max()) {
    throw ResourceError("whole-graph sampling supports n < 2^31");
  }
  const auto hits = parallel_histogram(
      trials, workers, seed, ks.size(),
      [&](Rng& rng, std::uint64_t, std::vector<std::uint64_t>& counts) {
        thread_local DisjointSets sets(0);
        thread_local std::int64_t sets_n = 0;
        if (sets_n != params.n) {
          sets = DisjointSets(params.n);
          sets_n = params.n;
        }
        const std::int64_t cmax = sample_cmax_into(params.n, params.p, rng, sets);
        for (std::size_t i = 0; i < ks.size(); ++i) {
          if (cmax > ks[i]) ++counts[i];
        }
      });
  std::vector<TailEstimate> out;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    out.push_back(make_tail_estimate(ks[i], trials, hits[i], seed));
  }
  return out;
}

TailEstimate tail_cmax(const CriticalParams& params, std::int64_t k, std::uint64_t trials,
                       std::uint64_t seed, unsigned workers) {
  return tail_cmax_multi(params, {k}, trials, seed, workers).front();
}

double markov_cmax_from_component(const TailEstimate& tail_v, std::int64_t n, std::int64_t k) {
  if (k < 1) throw DomainError("Markov bound needs k >= 1");
  return static_cast<double>(n) / static_cast<double>(k) * tail_v.estimate;
}

std::int64_t component_size_shared_uniforms(std::int64_t n, double p, std::uint64_t seed) {
  if (n < 1) throw DomainError("vertex count n must be positive");
  auto edge_open = [&](std::int64_t a, std::int64_t b) {
    if (a > b) std::swap(a, b);
    const auto index = static_cast<std::uint64_t>(a * n + b);
    const double u = static_cast<double>(derive_seed(seed, index) >> 11) * 0x1.0p-53;
    return u < p;
  };
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<std::int64_t> queue{0};
  seen[0] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::int64_t u = queue[head];
    for (std::int64_t v = 0; v < n; ++v) {
      if (!seen[static_cast<std::size_t>(v)] && edge_open(u, v)) {
        seen[static_cast<std::size_t>(v)] = 1;
        queue.push_back(v);
      }
    }
  }
  return static_cast<std::int64_t>(queue.size());
}

}  // namespace critgraph::graph
