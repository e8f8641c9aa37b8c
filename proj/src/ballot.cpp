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

#include "critgraph/ballot.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "critgraph/errors.hpp"
#include "critgraph/random.hpp"

namespace critgraph::ballot {

WalkPath::WalkPath(std::vector<std::int64_t> increments) : increments_(std::move(increments)) {
  sums_.reserve(increments_.size() + 1);
  sums_.push_back(0);
  for (auto x : increments_) sums_.push_back(sums_.back() + x);
}

WalkPath rotate_walk(const WalkPath& path, std::size_t r) {
  const std::size_t n = path.length();
  if (r < 1 || r > n) {
    throw DomainError("rotation index " + std::to_string(r) + " outside [1, " +
                      std::to_string(n) + "]");
  }
  const auto& x = path.increments();
  std::vector<std::int64_t> rotated;
  rotated.reserve(n);
  rotated.insert(rotated.end(), x.begin() + static_cast<std::ptrdiff_t>(r), x.end());
  rotated.insert(rotated.end(), x.begin(), x.begin() + static_cast<std::ptrdiff_t>(r));
  return WalkPath(std::move(rotated));
}

std::size_t count_favourable(const WalkPath& path) {
  const std::size_t n = path.length();
  const auto& s = path.sums();
  std::size_t count = 0;
  // S^r_t = S_{t+r} - S_r for t <= n - r and S_n + S_{t+r-n} - S_r after the wrap.
  for (std::size_t r = 1; r <= n; ++r) {
    bool favourable = true;
    for (std::size_t t = 1; t <= n && favourable; ++t) {
      const std::int64_t value =
          t + r <= n ? s[t + r] - s[r] : s[n] + s[t + r - n] - s[r];
      favourable = value >= 1;
    }
    if (favourable) ++count;
  }
  return count;
}

// ---------------------------------------------------------------------------
// StepDistribution

StepDistribution::StepDistribution(std::vector<std::int64_t> support,
                                   std::vector<Rational> probabilities) {
  if (support.empty() || support.size() != probabilities.size()) {
    throw DomainError("step distribution needs matching, nonempty support and probabilities");
  }
  std::vector<std::size_t> order(support.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return support[a] < support[b]; });
  Rational total = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto& p = probabilities[order[i]];
    if (p < 0) throw DomainError("negative probability " + critgraph::to_string(p));
    if (i > 0 && support[order[i]] == support[order[i - 1]]) {
      throw DomainError("duplicate support value " + std::to_string(support[order[i]]));
    }
    support_.push_back(support[order[i]]);
    probabilities_.push_back(p);
    total += p;
  }
  if (total != 1) {
    throw DomainError("probabilities sum to " + critgraph::to_string(total) + ", not 1");
  }
}

StepDistribution StepDistribution::from_json(const nlohmann::json& j) {
  if (!j.contains("support") || !j.contains("probabilities")) {
    throw DomainError("step distribution JSON needs 'support' and 'probabilities'");
  }
  std::vector<std::int64_t> support = j.at("support").get<std::vector<std::int64_t>>();
  std::vector<Rational> probs;
  for (const auto& p : j.at("probabilities")) {
    if (!p.is_string()) throw DomainError("probabilities must be \"p/q\" strings");
    probs.push_back(parse_rational(p.get<std::string>()));
  }
  return StepDistribution(std::move(support), std::move(probs));
}

nlohmann::json StepDistribution::to_json() const {
  nlohmann::json probs = nlohmann::json::array();
  for (const auto& p : probabilities_) probs.push_back(critgraph::to_string(p));
  return {{"support", support_}, {"probabilities", probs}};
}

StepDistribution StepDistribution::fair_sign() {
  return StepDistribution({-1, 1}, {Rational(1, 2), Rational(1, 2)});
}

StepDistribution StepDistribution::uniform(std::vector<std::int64_t> support) {
  const auto k = static_cast<std::int64_t>(support.size());
  std::vector<Rational> probs(support.size(), Rational(1, std::max<std::int64_t>(k, 1)));
  return StepDistribution(std::move(support), std::move(probs));
}

Rational StepDistribution::probability_of(std::int64_t value) const {
  auto it = std::lower_bound(support_.begin(), support_.end(), value);
  if (it == support_.end() || *it != value) return 0;
  return probabilities_[static_cast<std::size_t>(it - support_.begin())];
}

Rational StepDistribution::mean() const {
  Rational m = 0;
  for (std::size_t i = 0; i < support_.size(); ++i) m += probabilities_[i] * support_[i];
  return m;
}

Rational StepDistribution::variance() const {
  const Rational m = mean();
  Rational v = 0;
  for (std::size_t i = 0; i < support_.size(); ++i) {
    const Rational d = Rational(support_[i]) - m;
    v += probabilities_[i] * d * d;
  }
  return v;
}

std::int64_t StepDistribution::lattice_span() const {
  std::int64_t g = 0;
  for (std::size_t i = 0; i < support_.size(); ++i) {
    if (probabilities_[i] > 0 && support_[i] != 0) g = std::gcd(g, std::abs(support_[i]));
  }
  return g;
}

// ---------------------------------------------------------------------------
// Exact enumeration

namespace {

using u128 = unsigned __int128;

// Probabilities written as integer weights over a common denominator D, so a
// sequence of n steps has weight prod(w) / D^n.
struct IntegerWeights {
  BigInt denominator;
  std::vector<BigInt> weights;
};

IntegerWeights integer_weights(const StepDistribution& dist) {
  BigInt d = 1;
  for (const auto& p : dist.probabilities()) {
    d = boost::multiprecision::lcm(d, boost::multiprecision::denominator(p));
  }
  IntegerWeights out{d, {}};
  for (const auto& p : dist.probabilities()) {
    out.weights.push_back(boost::multiprecision::numerator(p) *
                          (d / boost::multiprecision::denominator(p)));
  }
  return out;
}

BigInt pow_big(const BigInt& base, int e) {
  BigInt r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

void check_enumeration_size(const StepDistribution& dist, int n) {
  const double terms = std::pow(static_cast<double>(dist.size()), n);
  if (terms > kMaxEnumeration) {
    throw ResourceError("enumeration of " + std::to_string(dist.size()) + "^" +
                        std::to_string(n) + " sequences exceeds the bound of 1e8 terms");
  }
}

BigInt to_big(u128 v) {
  BigInt r = static_cast<std::uint64_t>(v >> 64);
  r <<= 64;
  r += static_cast<std::uint64_t>(v);
  return r;
}
BigInt to_big(const BigInt& v) { return v; }

template <class Acc>
struct PositiveEnumerator {
  const std::vector<std::int64_t>& values;
  const std::vector<Acc>& weights;
  int n;
  std::int64_t lowest_final;
  std::vector<Acc> out;

  void run(int depth, std::int64_t position, const Acc& weight) {
    if (depth == n) {
      out[static_cast<std::size_t>(position - lowest_final)] += weight;
      return;
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
      const std::int64_t next = position + values[i];
      if (next <= 0 || weights[i] == 0) continue;
      run(depth + 1, next, weight * weights[i]);
    }
  }
};

template <class Acc>
std::vector<BigInt> enumerate_positive(const StepDistribution& dist, const IntegerWeights& iw,
                                       int n, std::int64_t start) {
  std::vector<Acc> w;
  for (const auto& b : iw.weights) {
    if constexpr (std::is_same_v<Acc, u128>) {
      w.push_back(static_cast<u128>(b.convert_to<std::uint64_t>()));
    } else {
      w.push_back(b);
    }
  }
  const std::int64_t lowest = start + n * dist.min_value();
  const std::int64_t highest = start + n * dist.max_value();
  PositiveEnumerator<Acc> e{dist.support(), w, n, lowest,
                            std::vector<Acc>(static_cast<std::size_t>(highest - lowest + 1))};
  e.run(0, start, Acc(1));
  std::vector<BigInt> out;
  out.reserve(e.out.size());
  for (const auto& v : e.out) out.push_back(to_big(v));
  return out;
}

}  // namespace

std::map<std::int64_t, Rational> endpoint_law(const StepDistribution& dist, int n) {
  if (n < 0) throw DomainError("walk length must be nonnegative");
  const IntegerWeights iw = integer_weights(dist);
  const std::int64_t lo = dist.min_value();
  const std::int64_t hi = dist.max_value();
  std::vector<BigInt> law{1};  // values offset by t * lo
  for (int t = 0; t < n; ++t) {
    std::vector<BigInt> next(law.size() + static_cast<std::size_t>(hi - lo), 0);
    for (std::size_t a = 0; a < law.size(); ++a) {
      if (law[a] == 0) continue;
      for (std::size_t i = 0; i < dist.size(); ++i) {
        next[a + static_cast<std::size_t>(dist.support()[i] - lo)] += law[a] * iw.weights[i];
      }
    }
    law = std::move(next);
  }
  const BigInt denom = pow_big(iw.denominator, n);
  std::map<std::int64_t, Rational> out;
  for (std::size_t a = 0; a < law.size(); ++a) {
    if (law[a] != 0) out[static_cast<std::int64_t>(a) + n * lo] = Rational(law[a], denom);
  }
  return out;
}

std::map<std::int64_t, Rational> positive_endpoint_law(const StepDistribution& dist, int n,
                                                       std::int64_t start) {
  if (n < 1) throw DomainError("walk length must be at least 1");
  check_enumeration_size(dist, n);
  const IntegerWeights iw = integer_weights(dist);
  const BigInt denom = pow_big(iw.denominator, n);
  // Every partial sum of sequence weights is bounded by D^n.
  const bool fits = boost::multiprecision::msb(denom) < 126;
  const std::vector<BigInt> raw = fits ? enumerate_positive<u128>(dist, iw, n, start)
                                       : enumerate_positive<BigInt>(dist, iw, n, start);
  const std::int64_t lowest = start + n * dist.min_value();
  std::map<std::int64_t, Rational> out;
  for (std::size_t a = 0; a < raw.size(); ++a) {
    if (raw[a] != 0) out[static_cast<std::int64_t>(a) + lowest] = Rational(raw[a], denom);
  }
  return out;
}

namespace {
Rational lookup(const std::map<std::int64_t, Rational>& law, std::int64_t key) {
  auto it = law.find(key);
  return it == law.end() ? Rational(0) : it->second;
}
}  // namespace

Rational ballot_lhs_exact(const StepDistribution& dist, int n, std::int64_t j) {
  return lookup(positive_endpoint_law(dist, n, 0), j);
}

nlohmann::json InequalityReport::to_json() const {
  return {{"lhs", critgraph::to_string(lhs)},
          {"rhs", critgraph::to_string(rhs)},
          {"lhs_approx", critgraph::to_double(lhs)},
          {"rhs_approx", critgraph::to_double(rhs)},
          {"holds", holds}};
}

InequalityReport check_ballot_inequality(const StepDistribution& dist, int n, std::int64_t j) {
  if (j < 1) throw DomainError("ballot level j must be at least 1");
  InequalityReport r;
  r.lhs = ballot_lhs_exact(dist, n, j);
  r.rhs = Rational(j, n) * lookup(endpoint_law(dist, n), j);
  r.holds = r.lhs <= r.rhs;
  return r;
}

InequalityReport check_corollary_shifted(const StepDistribution& dist, int n, std::int64_t j,
                                         std::int64_t h) {
  if (j < 1) throw DomainError("ballot level j must be at least 1");
  if (h < 1) throw DomainError("start level h must be a positive integer");
  const Rational ph = dist.probability_of(h);
  if (ph == 0) throw DomainError("P(X_1 = " + std::to_string(h) + ") = 0");
  InequalityReport r;
  r.lhs = lookup(positive_endpoint_law(dist, n, h), j);
  r.rhs = Rational(j, n + 1) * lookup(endpoint_law(dist, n + 1), j) / ph;
  r.holds = r.lhs <= r.rhs;
  return r;
}

std::vector<RateRow> kemperman_rate_check(const StepDistribution& dist, int n,
                                          std::int64_t j_max, std::uint64_t trials,
                                          std::uint64_t seed, unsigned workers) {
  if (dist.mean() != 0) {
    throw DomainError("rate check requires mean-zero steps, got mean " +
                      critgraph::to_string(dist.mean()));
  }
  if (dist.variance() <= 0) throw DomainError("rate check requires positive variance");
  if (n < 1) throw DomainError("walk length must be at least 1");
  if (j_max < 0 || static_cast<double>(j_max) > 4.0 * std::sqrt(static_cast<double>(n))) {
    throw DomainError("j_max must lie in [0, 4 sqrt(n)]");
  }

  std::vector<double> cdf;
  double acc = 0.0;
  for (const auto& p : dist.probabilities()) {
    acc += to_double(p);
    cdf.push_back(acc);
  }
  cdf.back() = 1.0;
  const auto& values = dist.support();
  const auto width = static_cast<std::size_t>(j_max + 1);

  const auto hits = parallel_histogram(
      trials, workers, seed, width,
      [&](Rng& rng, std::uint64_t, std::vector<std::uint64_t>& counts) {
        std::int64_t s = 0;
        for (int t = 0; t < n; ++t) {
          const double u = rng.uniform();
          const auto idx = static_cast<std::size_t>(
              std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
          s += values[std::min(idx, values.size() - 1)];
          if (s <= 0) return;
        }
        if (s <= j_max) ++counts[static_cast<std::size_t>(s)];
      });

  std::vector<RateRow> rows;
  const double scale = std::pow(static_cast<double>(n), 1.5);
  for (std::int64_t j = 0; j <= j_max; ++j) {
    RateRow row;
    row.j = j;
    row.estimate = make_tail_estimate(j, trials, hits[static_cast<std::size_t>(j)], seed);
    row.standard_error = row.estimate.standard_error();
    row.ratio = row.estimate.estimate / (static_cast<double>(j + 1) / scale);
    rows.push_back(row);
  }
  return rows;
}

std::vector<StepDistribution> grid_family(const std::vector<std::int64_t>& pool,
                                          int denominator) {
  if (denominator < 1) throw DomainError("denominator must be positive");
  std::vector<std::int64_t> values = pool;
  std::sort(values.begin(), values.end());
  if (std::adjacent_find(values.begin(), values.end()) != values.end()) {
    throw DomainError("pool values must be distinct");
  }
  std::vector<StepDistribution> family;
  std::vector<int> parts(values.size(), 0);
  // Compositions of `denominator` into values.size() nonnegative parts.
  auto recurse = [&](auto&& self, std::size_t idx, int left) -> void {
    if (idx + 1 == values.size()) {
      parts[idx] = left;
      std::vector<std::int64_t> support;
      std::vector<Rational> probs;
      for (std::size_t i = 0; i < values.size(); ++i) {
        if (parts[i] == 0) continue;
        support.push_back(values[i]);
        probs.emplace_back(parts[i], denominator);
      }
      family.emplace_back(std::move(support), std::move(probs));
      return;
    }
    for (int k = 0; k <= left; ++k) {
      parts[idx] = k;
      self(self, idx + 1, left - k);
    }
  };
  if (!values.empty()) recurse(recurse, 0, denominator);
  return family;
}

AuditReport audit_ballot_family(const std::vector<StepDistribution>& family, int max_n) {
  AuditReport r;
  r.lemma = "ballot_inequality";
  std::uint64_t ballot_checks = 0;
  std::uint64_t shifted_checks = 0;
  auto fail = [&](const StepDistribution& d, int n, std::int64_t j, std::int64_t h,
                  const InequalityReport& rep) {
    ++r.violations;
    if (!r.offending) {
      nlohmann::json o = rep.to_json();
      o["distribution"] = d.to_json();
      o["n"] = n;
      o["j"] = j;
      if (h > 0) o["h"] = h;
      r.offending = o;
    }
  };
  for (const auto& d : family) {
    std::vector<std::map<std::int64_t, Rational>> laws;
    for (int n = 0; n <= max_n + 1; ++n) laws.push_back(endpoint_law(d, n));
    for (int n = 1; n <= max_n; ++n) {
      const auto positive = positive_endpoint_law(d, n, 0);
      for (const auto& [j, pj] : laws[static_cast<std::size_t>(n)]) {
        if (j < 1) continue;
        InequalityReport rep;
        rep.lhs = lookup(positive, j);
        rep.rhs = Rational(j, n) * pj;
        rep.holds = rep.lhs <= rep.rhs;
        ++ballot_checks;
        if (!rep.holds) fail(d, n, j, 0, rep);
      }
      for (std::size_t i = 0; i < d.size(); ++i) {
        const std::int64_t h = d.support()[i];
        const Rational& ph = d.probabilities()[i];
        if (h < 1 || ph == 0) continue;
        const auto shifted = positive_endpoint_law(d, n, h);
        for (const auto& [j, pj] : laws[static_cast<std::size_t>(n) + 1]) {
          if (j < 1) continue;
          InequalityReport rep;
          rep.lhs = lookup(shifted, j);
          rep.rhs = Rational(j, n + 1) * pj / ph;
          rep.holds = rep.lhs <= rep.rhs;
          ++shifted_checks;
          if (!rep.holds) fail(d, n, j, h, rep);
        }
      }
    }
  }
  r.samples = ballot_checks + shifted_checks;
  r.extra = {{"distributions", family.size()},
             {"max_n", max_n},
             {"ballot_checks", ballot_checks},
             {"shifted_checks", shifted_checks}};
  return r;
}

AuditReport audit_favourable_counts(const std::vector<std::int64_t>& pool, int max_n) {
  if (pool.empty()) throw DomainError("pool must be nonempty");
  AuditReport r;
  r.lemma = "favourable_rotations";
  std::uint64_t checked = 0;
  const auto base = static_cast<std::uint64_t>(pool.size());
  for (int n = 1; n <= max_n; ++n) {
    std::uint64_t total = 1;
    for (int i = 0; i < n; ++i) total *= base;
    std::vector<std::int64_t> inc(static_cast<std::size_t>(n));
    for (std::uint64_t code = 0; code < total; ++code) {
      std::uint64_t c = code;
      std::int64_t sum = 0;
      for (auto& x : inc) {
        x = pool[c % base];
        c /= base;
        sum += x;
      }
      if (sum < 1) continue;
      ++r.samples;
      const WalkPath path(inc);
      const auto favourable = count_favourable(path);
      ++checked;
      if (static_cast<std::int64_t>(favourable) > sum) {
        ++r.violations;
        if (!r.offending) {
          r.offending = nlohmann::json{{"increments", inc}, {"favourable", favourable}};
        }
      }
    }
  }
  r.extra = {{"pool", pool}, {"max_n", max_n}, {"sequences_checked", checked}};
  return r;
}

AuditReport audit_cycle_equality(int max_n) {
  AuditReport r;
  r.lemma = "cycle_equality";
  const auto fair = StepDistribution::fair_sign();
  for (int n = 2; n <= max_n; ++n) {
    const auto law = endpoint_law(fair, n);
    const auto positive = positive_endpoint_law(fair, n, 0);
    for (std::int64_t j = 2 - n % 2; j <= n; j += 2) {
      ++r.samples;
      const Rational lhs = lookup(positive, j);
      const Rational rhs = Rational(j, n) * lookup(law, j);
      if (lhs != rhs) {
        ++r.violations;
        if (!r.offending) {
          r.offending = nlohmann::json{{"n", n}, {"j", j}, {"lhs", to_string(lhs)},
                                       {"rhs", to_string(rhs)}};
        }
      }
    }
  }
  r.extra = {{"max_n", max_n}};
  return r;
}

}  // namespace critgraph::ballot
