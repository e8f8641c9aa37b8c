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

#ifndef CRITGRAPH_BALLOT_HPP_
#define CRITGRAPH_BALLOT_HPP_

#include <cstdint>
#include <map>
#include <vector>

#include "critgraph/rational.hpp"
#include "critgraph/stats.hpp"
#include "json.hpp"

namespace critgraph::ballot {

// Integer-increment walk X_1..X_n with partial sums S_0 = 0, S_t = S_{t-1} + X_t.
class WalkPath {
 public:
  WalkPath() : sums_{0} {}
  explicit WalkPath(std::vector<std::int64_t> increments);

  const std::vector<std::int64_t>& increments() const { return increments_; }
  const std::vector<std::int64_t>& sums() const { return sums_; }
  std::size_t length() const { return increments_.size(); }
  std::int64_t final_sum() const { return sums_.back(); }

  bool operator==(const WalkPath&) const = default;

 private:
  std::vector<std::int64_t> increments_;
  std::vector<std::int64_t> sums_;
};

// Walk with increments (X_{r+1}, ..., X_n, X_1, ..., X_r). Requires 1 <= r <= n.
WalkPath rotate_walk(const WalkPath& path, std::size_t r);

// Number of r in [n] whose rotation has S^r_t >= 1 for every t in [n].
std::size_t count_favourable(const WalkPath& path);

// Finite-support integer step law with exact probabilities. The support is
// kept sorted and distinct; probabilities are nonnegative and sum to one.
class StepDistribution {
 public:
  StepDistribution(std::vector<std::int64_t> support, std::vector<Rational> probabilities);

  static StepDistribution from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  // Fair +-1 steps.
  static StepDistribution fair_sign();
  static StepDistribution uniform(std::vector<std::int64_t> support);

  const std::vector<std::int64_t>& support() const { return support_; }
  const std::vector<Rational>& probabilities() const { return probabilities_; }
  std::size_t size() const { return support_.size(); }
  std::int64_t min_value() const { return support_.front(); }
  std::int64_t max_value() const { return support_.back(); }

  Rational probability_of(std::int64_t value) const;
  Rational mean() const;
  Rational variance() const;

  // gcd of the nonzero support values in absolute value: the walk lives on
  // multiples of this span, i.e. the lattice period is its reciprocal.
  std::int64_t lattice_span() const;

 private:
  std::vector<std::int64_t> support_;
  std::vector<Rational> probabilities_;
};

// Exact law of S_n (n-fold convolution), keyed by value; zero-probability
// values are absent.
std::map<std::int64_t, Rational> endpoint_law(const StepDistribution& dist, int n);

// Exact measure of {start + S_t > 0 for all t in [n]} split by the final
// value start + S_n. Depth-first enumeration over increment sequences,
// pruning a branch as soon as positivity fails. Throws ResourceError if
// support^n exceeds kMaxEnumeration.
std::map<std::int64_t, Rational> positive_endpoint_law(const StepDistribution& dist, int n,
                                                       std::int64_t start = 0);

inline constexpr double kMaxEnumeration = 1e8;

// P(S_t > 0 for all t in [n], S_n = j).
Rational ballot_lhs_exact(const StepDistribution& dist, int n, std::int64_t j);

struct InequalityReport {
  Rational lhs;
  Rational rhs;
  bool holds = false;

  nlohmann::json to_json() const;
};

// lhs = P(S_t > 0 for t in [n], S_n = j), rhs = (j / n) P(S_n = j).
InequalityReport check_ballot_inequality(const StepDistribution& dist, int n, std::int64_t j);

// lhs = P(h + S_t > 0 for t in [n], h + S_n = j),
// rhs = P(X_1 = h)^{-1} (j / (n + 1)) P(S_{n+1} = j).
InequalityReport check_corollary_shifted(const StepDistribution& dist, int n, std::int64_t j,
                                         std::int64_t h);

struct RateRow {
  std::int64_t j = 0;
  TailEstimate estimate;
  double standard_error = 0.0;
  // estimate / ((j + 1) / n^{3/2})
  double ratio = 0.0;
};

// Monte Carlo estimates of P(S_t > 0 for t in [n], S_n = j) for
// j = 0..j_max against the (j + 1) / n^{3/2} rate for mean-zero steps.
std::vector<RateRow> kemperman_rate_check(const StepDistribution& dist, int n,
                                          std::int64_t j_max, std::uint64_t trials,
                                          std::uint64_t seed, unsigned workers = 1);

// Every step law on a subset of `pool` whose probabilities are positive
// multiples of 1/denominator.
std::vector<StepDistribution> grid_family(const std::vector<std::int64_t>& pool, int denominator);

// The ballot inequality for every law in `family`, every n in [1, max_n] and
// every reachable j >= 1, and the shifted form for every h >= 1 in the
// support. One violation per failing (law, n, j[, h]).
AuditReport audit_ballot_family(const std::vector<StepDistribution>& family, int max_n);

// count_favourable <= S_n for every increment sequence over `pool` of
// length n <= max_n with S_n >= 1.
AuditReport audit_favourable_counts(const std::vector<std::int64_t>& pool, int max_n);

// Fair +-1 steps, n in [2, max_n], j >= 1 of the parity of n: the
// positive-path probability equals (j/n) P(S_n = j) exactly.
AuditReport audit_cycle_equality(int max_n);

}  // namespace critgraph::ballot

#endif  // CRITGRAPH_BALLOT_HPP_
