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

// Reference computations used by the tests. Each one takes a route that
// shares no code with the library implementation it checks.
#ifndef CRITGRAPH_TESTS_ORACLES_HPP_
#define CRITGRAPH_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

using Rational = boost::multiprecision::cpp_rational;

// Laws of |C(0)| and |C_max| on G(n, p), by listing every graph. Index = size.
struct GraphLaws {
  std::vector<double> component;
  std::vector<double> cmax;
};

inline GraphLaws enumerate_graph_laws(int n, double p) {
  std::vector<std::pair<int, int>> slots;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) slots.emplace_back(a, b);
  const int m = static_cast<int>(slots.size());
  GraphLaws laws{std::vector<double>(n + 1, 0.0), std::vector<double>(n + 1, 0.0)};
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    const int edges = __builtin_popcount(mask);
    const double w = std::pow(p, edges) * std::pow(1.0 - p, m - edges);
    // label propagation until stable
    std::vector<int> label(n);
    std::iota(label.begin(), label.end(), 0);
    for (bool changed = true; changed;) {
      changed = false;
      for (int e = 0; e < m; ++e) {
        if (!(mask >> e & 1u)) continue;
        const int lo = std::min(label[slots[e].first], label[slots[e].second]);
        for (int v : {slots[e].first, slots[e].second}) {
          if (label[v] != lo) {
            label[v] = lo;
            changed = true;
          }
        }
      }
    }
    std::vector<int> count(n, 0);
    for (int v = 0; v < n; ++v) ++count[label[v]];
    laws.component[count[label[0]]] += w;
    laws.cmax[*std::max_element(count.begin(), count.end())] += w;
  }
  return laws;
}

// P(Bin(N, p) >= k) through the regularized incomplete beta function.
inline double binomial_upper_tail(std::int64_t N, double p, std::int64_t k) {
  if (k <= 0) return 1.0;
  if (k > N) return 0.0;
  if (p <= 0.0) return 0.0;
  if (p >= 1.0) return 1.0;
  return boost::math::ibeta(static_cast<double>(k), static_cast<double>(N - k + 1), p);
}

inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

// P_x(B_s > y for s <= t, B_t in [a, b]) for a >= y, from the reflection
// principle with a flat barrier. Evaluated with 50 decimal digits because
// the two Gaussian windows nearly cancel when x is close to y.
inline double reflection_window(double x, double y, double t, double a, double b) {
  using Big = boost::multiprecision::cpp_bin_float_50;
  const Big s = boost::multiprecision::sqrt(Big(t));
  auto upper = [&](const Big& z) {  // P(N > z)
    return boost::math::erfc(z / boost::multiprecision::sqrt(Big(2))) / 2;
  };
  const Big X(x), Y(y), lo(a), hi(b);
  const Big direct = upper((lo - X) / s) - upper((hi - X) / s);
  const Big mirror = upper((lo + X - 2 * Y) / s) - upper((hi + X - 2 * Y) / s);
  return static_cast<double>(direct - mirror);
}

// Visits every increment sequence over `support` of length n.
inline void for_each_sequence(const std::vector<std::int64_t>& support, int n,
                              const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> idx(n, 0);
  while (true) {
    visit(idx);
    int pos = n - 1;
    while (pos >= 0 && ++idx[pos] == static_cast<int>(support.size())) idx[pos--] = 0;
    if (pos < 0) return;
  }
}

// P(h + S_t > 0 for t in [n], h + S_n = j) and P(S_n = j), by brute force.
inline std::pair<Rational, Rational> positive_and_endpoint(
    const std::vector<std::int64_t>& support, const std::vector<Rational>& probs, int n,
    std::int64_t j, std::int64_t h = 0) {
  Rational positive = 0;
  Rational endpoint = 0;
  for_each_sequence(support, n, [&](const std::vector<int>& idx) {
    Rational w = 1;
    std::int64_t s = 0;
    bool stays = true;
    for (int i : idx) {
      w *= probs[static_cast<std::size_t>(i)];
      s += support[static_cast<std::size_t>(i)];
      if (h + s <= 0) stays = false;
    }
    if (s == j) endpoint += w;
    if (stays && h + s == j) positive += w;
  });
  return {positive, endpoint};
}

}  // namespace oracle

#endif  // CRITGRAPH_TESTS_ORACLES_HPP_
