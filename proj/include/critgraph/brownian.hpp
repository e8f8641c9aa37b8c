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

#ifndef CRITGRAPH_BROWNIAN_HPP_
#define CRITGRAPH_BROWNIAN_HPP_

#include <cstdint>
#include <functional>
#include <limits>

#include "critgraph/graph.hpp"
#include "critgraph/stats.hpp"
#include "json.hpp"

namespace critgraph::brownian {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// s -> c0 + c1 s + c2 s^2
struct CurveSpec {
  double c0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;

  double operator()(double s) const { return c0 + s * (c1 + s * c2); }

  // -n^{1/3}/(2A) + 9s/(A^2 n^{1/3}) + p s^2/2
  static CurveSpec g_curve(const graph::CriticalParams& params);
  // -n^{1/3}/(4A) + 9s/(A^2 n^{1/3}) + p s^2/2
  static CurveSpec gamma_curve(const graph::CriticalParams& params);
  // gamma + n^{1/3}/(8A)
  static CurveSpec phi_curve(const graph::CriticalParams& params);
  // The line through (s0, f(s0)) and (s1, f(s1)), with s measured from s0.
  static CurveSpec chord(const CurveSpec& f, double s0, double s1);

  nlohmann::json to_json() const;
};

// The curves of the two-line lower-bound construction on [0, T],
// T = T2 - T1.
struct ConstructionCurves {
  double T = 0.0;
  CurveSpec g;
  CurveSpec gamma;
  CurveSpec phi;
  CurveSpec ell1;  // chord of phi over [0, T/2]
  CurveSpec ell2;  // chord of phi over [T/2, T], s measured from T/2
  double psi_T = 0.0;  // gamma(T) + n^{1/3}/(4A)
  double interval_low = 0.0;   // psi_T/2 - A^{1/2} n^{1/3}
  double interval_high = 0.0;  // psi_T/2

  // interval_low > phi(T/2): every w in the interval lies above the curve.
  bool interval_above_curve() const { return interval_low > phi(T / 2.0); }
  nlohmann::json to_json() const;
};

// Requires T2 > T1.
ConstructionCurves make_curves(const graph::CriticalParams& params);

// Brownian motion from x, killed on touching s -> y + mu s before t, with
// terminal value in [z_low, z_high]. Requires x > y and t > 0.
struct LineCrossingQuery {
  double x = 0.0;
  double y = 0.0;
  double mu = 0.0;
  double t = 1.0;
  double z_low = 0.0;
  double z_high = 0.0;

  void validate() const;
  nlohmann::json to_json() const;
};

// P_x(B_s > y + mu s for s <= t, B_t in dz) / dz
//   = (2 pi t)^{-1/2} e^{-(z-x)^2/(2t)} (1 - e^{-2(x-y)(z-y-mu t)/t}),
// zero for z <= y + mu t.
double stay_above_line_density(const LineCrossingQuery& q, double z);

// Integral of the density over [z_low, z_high] in closed form:
// a Gaussian window around x minus e^{2(x-y)mu} times the window around the
// reflected start 2y - x, combined in log space.
double stay_above_line_window(const LineCrossingQuery& q);

struct QuadratureOptions {
  // Absolute tolerance is rel_tol times the largest sampled |integrand| times
  // the interval length.
  double rel_tol = 1e-12;
  int max_depth = 48;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::int64_t evaluations = 0;
};

// Adaptive Simpson with Kahan-summed leaves. Throws ConvergenceError when a
// panel hits max_depth before meeting its share of the tolerance.
QuadratureResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                  const QuadratureOptions& opts = {});

struct LineSegment {
  double intercept = 0.0;
  double slope = 0.0;
  double duration = 0.0;
};

// Start x0, stay above `first` on [0, d1] with B_{d1} in [mid_low, mid_high],
// then above `second` (time measured from d1) for d2, ending in
// [z_low, z_high].
struct PolylineQuery {
  double x0 = 0.0;
  LineSegment first;
  LineSegment second;
  double mid_low = -kInf;
  double mid_high = kInf;
  double z_low = -kInf;
  double z_high = kInf;

  // Barrier height at time s in [0, d1 + d2].
  double barrier(double s) const;
  nlohmann::json to_json() const;
};

// Integral over the mid window of the first segment's density times the
// second segment's window probability.
double stay_above_polyline(const PolylineQuery& q, const QuadratureOptions& opts = {});

struct PnLowerBound {
  double value = 0.0;
  // |psi_T^2 / (2T) - A^3/8|
  double exponent_check = 0.0;
  // value A^{3/2} e^{A^3/8}
  double scaled_value = 0.0;
  double T = 0.0;
  double psi_T = 0.0;
  double interval_low = 0.0;
  double interval_high = 0.0;
  bool interval_above_curve = false;

  nlohmann::json to_json() const;
};

// Two-line lower bound on the probability that Brownian motion stays above
// gamma + M log T + x_n on [0, T] and ends below the matching window top.
// Requires T = T2 - T1 > 0 and M log T + x_n <= n^{1/3}/(8A).
PnLowerBound pn_lower_bound(const graph::CriticalParams& params, double x_n, double M = 1.0);

// Brownian paths on a grid of `steps` intervals. Within each interval the
// barrier is replaced by its chord and the path is killed with the exact
// bridge crossing probability exp(-2ab/dt), where a and b are the distances
// above the chord at the interval ends.
struct McSpec {
  std::function<double(double)> barrier;
  double x0 = 0.0;
  double horizon = 1.0;
  double z_low = -kInf;
  double z_high = kInf;
  // Optional window at an intermediate time (rounded to the nearest step).
  double mid_time = -1.0;
  double mid_low = -kInf;
  double mid_high = kInf;
  std::int64_t steps = 100;
  std::uint64_t paths = 100000;
  std::uint64_t seed = 0;
  unsigned workers = 1;

  static McSpec for_polyline(const PolylineQuery& q);
  static McSpec for_line(const LineCrossingQuery& q);
  static McSpec for_curve(const CurveSpec& curve, double x0, double horizon);
};

struct McResult {
  TailEstimate fine;    // `steps` intervals
  TailEstimate coarse;  // steps / 2 intervals, same seed
  // 2 fine - coarse
  double richardson = 0.0;

  nlohmann::json to_json() const;
};

// Requires steps >= 100.
McResult mc_stay_above(const McSpec& spec);

}  // namespace critgraph::brownian

#endif  // CRITGRAPH_BROWNIAN_HPP_
