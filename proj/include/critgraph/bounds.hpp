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

#ifndef CRITGRAPH_BOUNDS_HPP_
#define CRITGRAPH_BOUNDS_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "critgraph/graph.hpp"
#include "critgraph/rational.hpp"
#include "json.hpp"

namespace critgraph::bounds {

// (1 + x) log(1 + x) - x for x >= -1, with phi(-1) = 1.
double phi(double x);

struct ChernoffUpper {
  double phi_bound = 1.0;
  double quad_bound = 1.0;
};

// Bounds on P(S >= Np + t) for S ~ Bin(N, p): exp(-Np phi(t / Np)) and
// exp(-t^2 / (2 (Np + t/3))). Requires Np > 0 and t >= 0.
ChernoffUpper chernoff_upper(std::int64_t N, double p, double t);

// exp(-t^2 / (2 Np)), a bound on P(S <= Np - t).
double chernoff_lower(std::int64_t N, double p, double t);

struct TailValue {
  double value = 0.0;
  // Natural log of the tail; -inf for an impossible event.
  double log_value = 0.0;
  // The tail is below 1e-300 and `value` may have lost precision or be 0.
  bool underflow = false;
};

// P(S >= k) for S ~ Bin(N, p), summed in log space outward from the term
// nearest the mode. Requires 0 <= N <= 1e7.
TailValue binomial_tail_exact(std::int64_t N, double p, std::int64_t k);

// P(S <= k).
TailValue binomial_lower_tail_exact(std::int64_t N, double p, std::int64_t k);

struct NormalTailConstant {
  double value = 0.0;
  double sigma = 0.0;
  std::int64_t threshold = 0;
  std::vector<std::string> warnings;
};

// x e^{x^2/2} P(S >= Np + x sigma), sigma^2 = Np(1-p); tends to (2 pi)^{-1/2}
// when sigma grows and x stays small against sigma^{1/3}. Warns when
// sigma^2 < 1e3 or x > sigma^{1/3}.
NormalTailConstant normal_tail_constant(std::int64_t N, double p, double x);

// e^{C^3/2} e^{-x^2/(2Np)}, a bound on P(S >= Np + x) for
// 0 < x <= C (Np)^{2/3}.
double gaussian_style_binomial_bound(std::int64_t N, double p, double x, double C);

struct PartialExpectation {
  Rational lhs;
  Rational rhs;
  bool equal = false;
};

// lhs = E[X 1{X >= h}], rhs = h P(X >= h) + sum_{i=h+1}^{N} P(X >= i) for a
// finite law with support bounded by N. Requires h >= 1.
PartialExpectation partial_expectation_check(const std::map<std::int64_t, Rational>& law,
                                             std::int64_t N, std::int64_t h);

struct EnvelopeValue {
  std::int64_t n = 0;
  double A = 0.0;
  double lambda = 0.0;
  // -A^3/8 + lambda A^2/2 - lambda^2 A/2
  double exponent = 0.0;
  double prefactor_a = 0.0;  // A^{-1/2} n^{-1/3}
  double prefactor_b = 0.0;  // A^{-3/2}
  double value_a = 0.0;
  double value_b = 0.0;
  bool A_within_range = true;       // A <= n^{1/30}
  bool lambda_within_range = true;  // |lambda| <= A/3

  // "ok", or the failed hypotheses joined by '|'.
  std::string hypothesis_flags() const;
  nlohmann::json to_json() const;
};

EnvelopeValue envelope(const graph::CriticalParams& params);

struct GaussianArgument {
  double x_exact = 0.0;
  double x_approx = 0.0;
  double gap = 0.0;
  std::int64_t K = 0;
  std::int64_t H = 0;
};

// x = (H - K lambda / n^{1/3}) / sqrt(n K p (1-p)) with K = ceil(A n^{2/3}) + 1
// and H the ballot threshold, against A^{3/2}/2 - lambda A^{1/2}.
GaussianArgument gaussian_argument_x(const graph::CriticalParams& params);

// n^2 p_mid^2 / (n^2 p_mid p_tail + 3 T2 n p_mid), the second-moment lower
// bound on P(|C_max| >= T2) with X counting vertices in components of size
// in [T2, 2 T2]. Returns 0 when p_mid = 0.
double second_moment_lower_bound(double p_mid, double p_tail, std::int64_t n, std::int64_t T2);

}  // namespace critgraph::bounds

#endif  // CRITGRAPH_BOUNDS_HPP_
