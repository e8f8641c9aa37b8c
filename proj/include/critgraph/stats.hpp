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

#ifndef CRITGRAPH_STATS_HPP_
#define CRITGRAPH_STATS_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace critgraph {

class Rng;

// Monte Carlo estimate of a probability with a 95% Wilson interval.
struct TailEstimate {
  std::int64_t threshold = 0;
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  double estimate = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::uint64_t seed = 0;

  // Binomial standard error evaluated at `reference` (defaults to the
  // point estimate).
  double standard_error() const;
  double standard_error_at(double reference) const;
};

TailEstimate make_tail_estimate(std::int64_t threshold, std::uint64_t trials,
                                std::uint64_t successes, std::uint64_t seed);

struct WilsonInterval {
  double low;
  double high;
};

WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials,
                               double z = 1.959963984540054);

nlohmann::json to_json(const TailEstimate& estimate);

// log P(Bin(n, p) = k).
double binomial_log_pmf(std::int64_t n, double p, std::int64_t k);
double poisson_log_pmf(double mean, std::int64_t k);

struct GofResult {
  std::string label;
  std::uint64_t samples = 0;
  double statistic = 0.0;
  int degrees_of_freedom = 0;
  double p_value = 1.0;
};

// Pearson chi-square goodness of fit of observed counts (index = value)
// against a reference pmf. Adjacent cells are pooled until every expected
// count is at least 5; the reference mass beyond the observed range is
// folded into the last cell.
GofResult chi_square_gof(const std::vector<std::uint64_t>& counts,
                         const std::function<double(std::int64_t)>& reference_pmf,
                         std::string label);

nlohmann::json to_json(const GofResult& gof);

// Outcome of checking an exact invariant over many samples, with optional
// goodness-of-fit results for the marginals involved.
struct AuditReport {
  std::string lemma;
  std::uint64_t samples = 0;
  std::uint64_t violations = 0;
  std::vector<GofResult> gof;
  std::optional<nlohmann::json> offending;
  nlohmann::json extra = nlohmann::json::object();

  bool passed(double alpha = 1e-3) const;
  nlohmann::json to_json() const;
};

// Runs `trial(rng, index)` for index in [0, trials) on `workers` threads,
// each trial with its own Rng seeded by derive_seed(seed, index), and
// returns the number of trials that returned true. The result does not
// depend on the worker count.
std::uint64_t parallel_count(std::uint64_t trials, unsigned workers, std::uint64_t seed,
                             const std::function<bool(Rng&, std::uint64_t)>& trial);

// Like parallel_count, but each trial adds into a per-worker accumulator of
// `width` counters; accumulators are summed at the end.
std::vector<std::uint64_t> parallel_histogram(
    std::uint64_t trials, unsigned workers, std::uint64_t seed, std::size_t width,
    const std::function<void(Rng&, std::uint64_t, std::vector<std::uint64_t>&)>& trial);

}  // namespace critgraph

#endif  // CRITGRAPH_STATS_HPP_
