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

#include "critgraph/stats.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include <boost/math/distributions/chi_squared.hpp>

#include "critgraph/errors.hpp"
#include "critgraph/random.hpp"

namespace critgraph {

double TailEstimate::standard_error() const { return standard_error_at(estimate); }

double TailEstimate::standard_error_at(double reference) const {
  if (trials == 0) return 0.0;
  return std::sqrt(reference * (1.0 - reference) / static_cast<double>(trials));
}

WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (phat + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
  // Clamp so the interval always contains the point estimate despite rounding.
  return {std::min(phat, std::max(0.0, centre - half)),
          std::max(phat, std::min(1.0, centre + half))};
}

TailEstimate make_tail_estimate(std::int64_t threshold, std::uint64_t trials,
                                std::uint64_t successes, std::uint64_t seed) {
  if (successes > trials) throw DomainError("successes exceed trials");
  TailEstimate t;
  t.threshold = threshold;
  t.trials = trials;
  t.successes = successes;
  t.seed = seed;
  t.estimate = trials == 0 ? 0.0 : static_cast<double>(successes) / static_cast<double>(trials);
  const auto ci = wilson_interval(successes, trials);
  t.ci_low = ci.low;
  t.ci_high = ci.high;
  return t;
}

nlohmann::json to_json(const TailEstimate& e) {
  return {{"k", e.threshold},        {"trials", e.trials},   {"successes", e.successes},
          {"estimate", e.estimate},  {"ci_low", e.ci_low},   {"ci_high", e.ci_high},
          {"seed", e.seed}};
}

double binomial_log_pmf(std::int64_t n, double p, std::int64_t k) {
  if (k < 0 || k > n) return -INFINITY;
  if (p <= 0.0) return k == 0 ? 0.0 : -INFINITY;
  if (p >= 1.0) return k == n ? 0.0 : -INFINITY;
  const double nd = static_cast<double>(n);
  const double kd = static_cast<double>(k);
  return std::lgamma(nd + 1.0) - std::lgamma(kd + 1.0) - std::lgamma(nd - kd + 1.0) +
         kd * std::log(p) + (nd - kd) * std::log1p(-p);
}

double poisson_log_pmf(double mean, std::int64_t k) {
  if (k < 0) return -INFINITY;
  if (mean <= 0.0) return k == 0 ? 0.0 : -INFINITY;
  const double kd = static_cast<double>(k);
  return -mean + kd * std::log(mean) - std::lgamma(kd + 1.0);
}

GofResult chi_square_gof(const std::vector<std::uint64_t>& counts,
                         const std::function<double(std::int64_t)>& reference_pmf,
                         std::string label) {
  GofResult out;
  out.label = std::move(label);
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  out.samples = total;
  if (total == 0 || counts.empty()) return out;

  const double n = static_cast<double>(total);
  std::vector<double> expected(counts.size());
  double mass = 0.0;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    expected[k] = n * reference_pmf(static_cast<std::int64_t>(k));
    mass += expected[k] / n;
  }
  expected.back() += n * std::max(0.0, 1.0 - mass);

  std::vector<double> pooled_expected;
  std::vector<double> pooled_observed;
  double acc_e = 0.0;
  double acc_o = 0.0;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    acc_e += expected[k];
    acc_o += static_cast<double>(counts[k]);
    if (acc_e >= 5.0) {
      pooled_expected.push_back(acc_e);
      pooled_observed.push_back(acc_o);
      acc_e = 0.0;
      acc_o = 0.0;
    }
  }
  if (acc_e > 0.0 || acc_o > 0.0) {
    if (pooled_expected.empty()) {
      pooled_expected.push_back(acc_e);
      pooled_observed.push_back(acc_o);
    } else {
      pooled_expected.back() += acc_e;
      pooled_observed.back() += acc_o;
    }
  }
  if (pooled_expected.size() < 2) {
    out.degrees_of_freedom = 0;
    out.p_value = 1.0;
    return out;
  }
  double stat = 0.0;
  for (std::size_t i = 0; i < pooled_expected.size(); ++i) {
    const double d = pooled_observed[i] - pooled_expected[i];
    stat += d * d / pooled_expected[i];
  }
  out.statistic = stat;
  out.degrees_of_freedom = static_cast<int>(pooled_expected.size()) - 1;
  boost::math::chi_squared dist(out.degrees_of_freedom);
  out.p_value = boost::math::cdf(boost::math::complement(dist, stat));
  return out;
}

nlohmann::json to_json(const GofResult& g) {
  return {{"label", g.label},
          {"samples", g.samples},
          {"statistic", g.statistic},
          {"df", g.degrees_of_freedom},
          {"p_value", g.p_value}};
}

std::vector<std::uint64_t> parallel_histogram(
    std::uint64_t trials, unsigned workers, std::uint64_t seed, std::size_t width,
    const std::function<void(Rng&, std::uint64_t, std::vector<std::uint64_t>&)>& trial) {
  workers = std::max(1u, workers);
  if (trials < workers) workers = static_cast<unsigned>(std::max<std::uint64_t>(1, trials));
  std::vector<std::vector<std::uint64_t>> partial(workers, std::vector<std::uint64_t>(width, 0));
  auto run = [&](unsigned w) {
    const std::uint64_t begin = trials * w / workers;
    const std::uint64_t end = trials * (w + 1) / workers;
    for (std::uint64_t i = begin; i < end; ++i) {
      Rng rng(derive_seed(seed, i));
      trial(rng, i, partial[w]);
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& t : pool) t.join();
  }
  std::vector<std::uint64_t> total(width, 0);
  for (const auto& part : partial) {
    for (std::size_t i = 0; i < width; ++i) total[i] += part[i];
  }
  return total;
}

std::uint64_t parallel_count(std::uint64_t trials, unsigned workers, std::uint64_t seed,
                             const std::function<bool(Rng&, std::uint64_t)>& trial) {
  return parallel_histogram(trials, workers, seed, 1,
                            [&](Rng& rng, std::uint64_t i, std::vector<std::uint64_t>& acc) {
                              if (trial(rng, i)) ++acc[0];
                            })[0];
}

bool AuditReport::passed(double alpha) const {
  if (violations != 0) return false;
  return std::all_of(gof.begin(), gof.end(), [&](const GofResult& g) { return g.p_value > alpha; });
}

nlohmann::json AuditReport::to_json() const {
  nlohmann::json j{{"lemma", lemma}, {"samples", samples}, {"violations", violations}};
  j["gof"] = nlohmann::json::array();
  for (const auto& g : gof) j["gof"].push_back(critgraph::to_json(g));
  j["offending_sample"] = offending ? *offending : nlohmann::json(nullptr);
  j["extra"] = extra;
  return j;
}

}  // namespace critgraph
