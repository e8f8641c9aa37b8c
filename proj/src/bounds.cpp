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

#include "critgraph/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "critgraph/errors.hpp"

namespace critgraph::bounds {

namespace {

constexpr double kLogUnderflow = -690.7755278982137;  // log(1e-300)
constexpr std::int64_t kMaxTailN = 10'000'000;

void require_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError("probability " + std::to_string(p) + " outside [0, 1]");
  }
}

long double log_pmf(std::int64_t N, long double p, std::int64_t j) {
  const long double n = static_cast<long double>(N);
  const long double k = static_cast<long double>(j);
  return std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1) + k * std::log(p) +
         (n - k) * std::log1p(-p);
}

// log sum_{j=from}^{N} pmf(j), assuming the terms decrease from `from` on.
long double log_sum_up(std::int64_t N, long double p, std::int64_t from) {
  const long double odds = p / (1 - p);
  long double term = 1;
  long double sum = 1;
  for (std::int64_t j = from; j < N; ++j) {
    term *= static_cast<long double>(N - j) / static_cast<long double>(j + 1) * odds;
    sum += term;
    if (term < 1e-24L * sum) break;
  }
  return log_pmf(N, p, from) + std::log(sum);
}

// log sum_{j=0}^{from} pmf(j), assuming the terms decrease from `from` down.
long double log_sum_down(std::int64_t N, long double p, std::int64_t from) {
  const long double odds = (1 - p) / p;
  long double term = 1;
  long double sum = 1;
  for (std::int64_t j = from; j > 0; --j) {
    term *= static_cast<long double>(j) / static_cast<long double>(N - j + 1) * odds;
    sum += term;
    if (term < 1e-24L * sum) break;
  }
  return log_pmf(N, p, from) + std::log(sum);
}

TailValue from_log(long double log_value) {
  TailValue out;
  out.log_value = static_cast<double>(log_value);
  out.value = static_cast<double>(std::exp(log_value));
  out.underflow = log_value < kLogUnderflow;
  return out;
}

TailValue certain() { return {1.0, 0.0, false}; }
TailValue impossible() { return {0.0, -std::numeric_limits<double>::infinity(), true}; }

std::int64_t mode_of(std::int64_t N, long double p) {
  const auto m = static_cast<std::int64_t>(std::floor((static_cast<long double>(N) + 1) * p));
  return std::clamp<std::int64_t>(m, 0, N);
}

}  // namespace

double phi(double x) {
  if (x < -1.0 || std::isnan(x)) throw DomainError("phi requires x >= -1");
  if (x == -1.0) return 1.0;
  return (1.0 + x) * std::log1p(x) - x;
}

ChernoffUpper chernoff_upper(std::int64_t N, double p, double t) {
  require_probability(p);
  const double mean = static_cast<double>(N) * p;
  if (!(mean > 0.0)) throw DomainError("Chernoff bound requires Np > 0");
  if (t < 0.0) throw DomainError("deviation t must be nonnegative");
  return {std::exp(-mean * phi(t / mean)), std::exp(-t * t / (2.0 * (mean + t / 3.0)))};
}

double chernoff_lower(std::int64_t N, double p, double t) {
  require_probability(p);
  const double mean = static_cast<double>(N) * p;
  if (!(mean > 0.0)) throw DomainError("Chernoff bound requires Np > 0");
  if (t < 0.0) throw DomainError("deviation t must be nonnegative");
  return std::exp(-t * t / (2.0 * mean));
}

TailValue binomial_tail_exact(std::int64_t N, double p, std::int64_t k) {
  require_probability(p);
  if (N < 0 || N > kMaxTailN) throw DomainError("binomial tail requires 0 <= N <= 1e7");
  if (k <= 0) return certain();
  if (k > N || p == 0.0) return impossible();
  if (p == 1.0) return certain();
  const long double lp = p;
  if (k > mode_of(N, lp)) return from_log(log_sum_up(N, lp, k));
  const long double below = std::exp(log_sum_down(N, lp, k - 1));
  return from_log(std::log1p(-below));
}

TailValue binomial_lower_tail_exact(std::int64_t N, double p, std::int64_t k) {
  require_probability(p);
  if (N < 0 || N > kMaxTailN) throw DomainError("binomial tail requires 0 <= N <= 1e7");
  if (k >= N) return certain();
  if (k < 0 || p == 1.0) return impossible();
  if (p == 0.0) return certain();
  const long double lp = p;
  if (k < mode_of(N, lp)) return from_log(log_sum_down(N, lp, k));
  const long double above = std::exp(log_sum_up(N, lp, k + 1));
  return from_log(std::log1p(-above));
}

NormalTailConstant normal_tail_constant(std::int64_t N, double p, double x) {
  require_probability(p);
  NormalTailConstant out;
  const double var = static_cast<double>(N) * p * (1.0 - p);
  out.sigma = std::sqrt(var);
  if (var < 1e3) out.warnings.push_back("variance Np(1-p) below 1e3");
  if (x > std::cbrt(out.sigma)) out.warnings.push_back("x exceeds (Np(1-p))^{1/6}");
  out.threshold = static_cast<std::int64_t>(std::ceil(static_cast<double>(N) * p + x * out.sigma));
  const auto tail = binomial_tail_exact(N, p, out.threshold);
  out.value = x * std::exp(x * x / 2.0 + tail.log_value);
  if (x == 0.0) out.value = 0.0;
  return out;
}

double gaussian_style_binomial_bound(std::int64_t N, double p, double x, double C) {
  require_probability(p);
  const double mean = static_cast<double>(N) * p;
  if (!(C > 0.0)) throw DomainError("constant C must be positive");
  if (!(mean > 0.0)) throw DomainError("bound requires Np > 0");
  if (!(x > 0.0) || x > C * std::pow(mean, 2.0 / 3.0)) {
    throw DomainError("x must lie in (0, C (Np)^{2/3}]");
  }
  return std::exp(C * C * C / 2.0 - x * x / (2.0 * mean));
}

PartialExpectation partial_expectation_check(const std::map<std::int64_t, Rational>& law,
                                             std::int64_t N, std::int64_t h) {
  if (h < 1) throw DomainError("level h must be at least 1");
  if (!law.empty() && law.rbegin()->first > N) {
    throw DomainError("law has support above N");
  }
  if (N - h > kMaxTailN) throw ResourceError("N - h too large for the explicit sum");
  auto tail_at = [&](std::int64_t i) {
    Rational s = 0;
    for (auto it = law.lower_bound(i); it != law.end(); ++it) s += it->second;
    return s;
  };
  PartialExpectation out;
  out.lhs = 0;
  for (auto it = law.lower_bound(h); it != law.end(); ++it) out.lhs += Rational(it->first) * it->second;
  out.rhs = Rational(h) * tail_at(h);
  for (std::int64_t i = h + 1; i <= N; ++i) out.rhs += tail_at(i);
  out.equal = out.lhs == out.rhs;
  return out;
}

std::string EnvelopeValue::hypothesis_flags() const {
  std::string flags;
  if (!A_within_range) flags += "A_above_n^(1/30)";
  if (!lambda_within_range) {
    if (!flags.empty()) flags += '|';
    flags += "lambda_above_A/3";
  }
  return flags.empty() ? "ok" : flags;
}

nlohmann::json EnvelopeValue::to_json() const {
  return {{"n", n},
          {"A", A},
          {"lambda", lambda},
          {"exponent", exponent},
          {"prefactor_a", prefactor_a},
          {"prefactor_b", prefactor_b},
          {"value_a", value_a},
          {"value_b", value_b},
          {"hypothesis_flags", hypothesis_flags()}};
}

EnvelopeValue envelope(const graph::CriticalParams& params) {
  const double A = params.A;
  const double l = params.lambda;
  const double n = static_cast<double>(params.n);
  EnvelopeValue e;
  e.n = params.n;
  e.A = A;
  e.lambda = l;
  e.exponent = -A * A * A / 8.0 + l * A * A / 2.0 - l * l * A / 2.0;
  e.prefactor_a = 1.0 / (std::sqrt(A) * std::cbrt(n));
  e.prefactor_b = std::pow(A, -1.5);
  e.value_a = e.prefactor_a * std::exp(e.exponent);
  e.value_b = e.prefactor_b * std::exp(e.exponent);
  e.A_within_range = A <= std::pow(n, 1.0 / 30.0);
  e.lambda_within_range = std::fabs(l) <= A / 3.0;
  return e;
}

GaussianArgument gaussian_argument_x(const graph::CriticalParams& params) {
  GaussianArgument g;
  g.K = params.T2 + 1;
  g.H = params.ballot_threshold;
  const long double n = static_cast<long double>(params.n);
  const long double K = static_cast<long double>(g.K);
  const long double p = params.p;
  const long double num = static_cast<long double>(g.H) - K * params.lambda / std::cbrt(n);
  g.x_exact = static_cast<double>(num / std::sqrt(n * K * p * (1 - p)));
  g.x_approx = std::pow(params.A, 1.5) / 2.0 - params.lambda * std::sqrt(params.A);
  g.gap = std::fabs(g.x_exact - g.x_approx);
  return g;
}

double second_moment_lower_bound(double p_mid, double p_tail, std::int64_t n, std::int64_t T2) {
  if (!(p_mid >= 0.0 && p_mid <= 1.0) || !(p_tail >= 0.0 && p_tail <= 1.0)) {
    throw DomainError("probabilities must lie in [0, 1]");
  }
  if (n < 1 || T2 < 1) throw DomainError("n and T2 must be positive");
  if (p_mid == 0.0) return 0.0;
  const double nn = static_cast<double>(n);
  const double denom = nn * nn * p_mid * p_tail + 3.0 * static_cast<double>(T2) * nn * p_mid;
  return nn * nn * p_mid * p_mid / denom;
}

}  // namespace critgraph::bounds
