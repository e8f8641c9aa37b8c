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

#ifndef CRITGRAPH_COUPLING_HPP_
#define CRITGRAPH_COUPLING_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "critgraph/ballot.hpp"
#include "critgraph/graph.hpp"
#include "critgraph/stats.hpp"
#include "json.hpp"

namespace critgraph {
class Rng;
}

namespace critgraph::coupling {

// Two walks on one probability space with upper_t >= lower_t expected at
// every step.
struct CoupledWalkPair {
  ballot::WalkPath lower;
  ballot::WalkPath upper;
  std::string label;
  // dominated[t-1] is upper_t >= lower_t.
  std::vector<bool> dominated;

  bool all_dominated() const;
  nlohmann::json to_json() const;
};

// Lower walk: increments tau_i - 1 with tau_i ~ Bin(n - i, p). Upper walk:
// increments tau_i + B_i - 1 with B_i ~ Bin(i, p), so each upper increment is
// Bin(n, p) - 1. Requires 0 <= k <= n.
CoupledWalkPair pad_with_binomials(std::int64_t n, double p, std::int64_t k, Rng& rng);

struct ExplorationCoupling {
  graph::ExplorationTrace trace;
  std::vector<std::int64_t> delta;
  // Steps where the unseen set held at least n - K - t vertices, so delta_t
  // was built from a subset of the edges counted by eta_t.
  std::vector<bool> qualifying;
  bool domination_ok = true;

  nlohmann::json to_json() const;
};

// Explores G(n, p) from vertex 0 with explicit edge indicators and builds
// delta_t ~ Bin(n - K - t, p), independent over t. When the unseen set is
// large enough, the lowest-numbered unseen vertices are set aside and
// delta_t counts new neighbours among the rest; otherwise delta_t is eta_t
// plus an independent Bin(n - K - t - U_{t-1}, p). When the active set
// empties, the lowest unseen vertex is activated. Requires K + steps < n.
ExplorationCoupling couple_exploration_iid(std::int64_t n, double p, std::int64_t K,
                                           std::int64_t steps, Rng& rng);
ExplorationCoupling couple_exploration_iid(const graph::CriticalParams& params,
                                           std::int64_t steps, Rng& rng);

// Rows i = 1..L of entries I[i][1..N-1]; L odd with 1 <= L <= N.
template <typename T>
class TriangularArray {
 public:
  TriangularArray(int N, int L);

  int N() const { return N_; }
  int L() const { return L_; }
  // 1-based indices, i in [1, L], j in [1, N-1].
  T& at(int i, int j);
  const T& at(int i, int j) const;

 private:
  int N_;
  int L_;
  std::vector<T> values_;
};

template <typename T>
struct Rearrangement {
  std::vector<T> X;
  std::vector<T> tilde_X;

  // Prefix sums of tilde_X never exceed those of X and the totals agree.
  bool prefix_dominated() const;
};

// X_i = sum_{j <= N-i} I[i][j]. With l = (L+1)/2, tilde_X_i for i <= l sums
// row i over j <= N-l; for i > l it adds to row i over j <= N-i the entries
// of row L+1-i over N-l < j <= N-(L+1-i).
template <typename T>
Rearrangement<T> rearrange_bernoullis(const TriangularArray<T>& arr);

extern template class TriangularArray<std::int64_t>;
extern template class TriangularArray<double>;
extern template struct Rearrangement<std::int64_t>;
extern template struct Rearrangement<double>;
extern template Rearrangement<std::int64_t> rearrange_bernoullis(
    const TriangularArray<std::int64_t>&);
extern template Rearrangement<double> rearrange_bernoullis(const TriangularArray<double>&);

// Joint law of (Bernoulli(p), Poisson(p)) under the monotone coupling.
struct BinomialPoissonTable {
  double p = 0.0;
  double p00 = 0.0;  // 1 - p
  double p11 = 0.0;  // p e^{-p}
  double p10 = 0.0;  // e^{-p} - (1 - p)
  double e_minus_p = 1.0;
  // P(Bernoulli = 1 | Poisson = 0) = p10 / e^{-p}
  double flip_given_zero = 0.0;
  // P(1, k) = e^{-p} p^k / k! for k >= 2.
  double p1k(std::int64_t k) const;
  // p (1 - e^{-p})
  double disagreement() const;
};

BinomialPoissonTable binomial_poisson_table(double p);

struct BinomialPoissonPair {
  int bernoulli = 0;
  std::int64_t poisson = 0;
};

// Draws the Poisson(p) coordinate, then the Bernoulli given it. Requires
// 0 < p < 1.
BinomialPoissonPair binomial_poisson_pair(double p, Rng& rng);
BinomialPoissonPair binomial_poisson_pair(const BinomialPoissonTable& table, Rng& rng);

struct TiltedWalkSample {
  std::vector<std::int64_t> increments;
  double weight = 1.0;
  double mu = 1.0;
};

// mu^{-(S + t - 1)} e^{(mu - 1) t} with S = 1 + sum (W_i - 1), the walk
// started from one; equivalently mu^{-sum W_i} e^{(mu - 1) t}.
double tilt_weight(const std::vector<std::int64_t>& increments, double mu);

// t i.i.d. Poisson(mu) increments and their weight.
TiltedWalkSample sample_tilted_walk(double mu, std::int64_t t, Rng& rng);

struct TiltTables {
  double mu = 1.0;
  std::int64_t t_n = 0;
  std::int64_t truncation = 0;
  // Per-increment marginals on {0, ..., truncation}.
  std::vector<std::vector<double>> p_marginals;
  std::vector<std::vector<double>> q_marginals;
  double p_total_mass = 0.0;
  double q_total_mass = 0.0;
  // Mass of the product space outside {0..truncation}^t_n under P and Q.
  double p_omitted_mass = 0.0;
  double q_omitted_mass = 0.0;

  nlohmann::json to_json() const;
};

// Exact P- and Q-marginals over the truncated product space. The weight
// factorizes over increments, so each marginal is one coordinate's tilted
// pmf times the others' truncated totals. Throws ResourceError when either
// omitted mass reaches 1e-6.
TiltTables tilt_poisson_walk(double mu, std::int64_t t_n, std::int64_t truncation);

// t_n (n_eff p)^2 / n_eff: the union-bound price of replacing t_n Bernoulli
// batches of size n_eff by Poisson variables.
double poisson_approx_gap(std::int64_t n_eff, double p, std::int64_t t_n);


// Pathwise domination over every sample; GOF of upper increments at
// i in {1, ceil(k/2), k} against Bin(n, p).
AuditReport audit_padding(std::int64_t n, double p, std::int64_t k, std::uint64_t samples,
                          std::uint64_t seed, unsigned workers = 1);

// Domination at every qualifying step; GOF of delta_t against
// Bin(n - K - t, p) for each t in gof_steps.
AuditReport audit_exploration_coupling(std::int64_t n, double p, std::int64_t K,
                                       std::int64_t steps,
                                       const std::vector<std::int64_t>& gof_steps,
                                       std::uint64_t samples, std::uint64_t seed,
                                       unsigned workers = 1);

// Random arrays with N in [1, max_N], odd L <= N; half integer entries in
// [0, 9], half dyadic reals k/256 in [0, 4) so sums are exact.
AuditReport audit_rearrangement(std::uint64_t arrays, int max_N, std::uint64_t seed);

// Table agreement with closed forms and the empirical disagreement rate.
// Samples are drawn in blocks of kTableBlock pairs, one Rng per block.
inline constexpr std::uint64_t kTableBlock = 1 << 20;
AuditReport audit_table_coupling(double p, std::uint64_t samples, std::uint64_t seed,
                                 unsigned workers = 1);

}  // namespace critgraph::coupling

#endif  // CRITGRAPH_COUPLING_HPP_
