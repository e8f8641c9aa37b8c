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

#include "critgraph/brownian.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "critgraph/errors.hpp"
#include "critgraph/random.hpp"

namespace critgraph::brownian {

namespace {

constexpr double kLog2 = 0.6931471805599453;
constexpr double kLogSqrtPi = 0.5723649429247001;
constexpr double kInvSqrt2 = 0.7071067811865476;

// log erfc(x), using the asymptotic series where erfc underflows.
double log_erfc(double x) {
  if (x < 25.0) return std::log(std::erfc(x));
  const double r = 1.0 / (2.0 * x * x);
  const double series = 1.0 - r * (1.0 - 3.0 * r * (1.0 - 5.0 * r * (1.0 - 7.0 * r)));
  return -x * x - std::log(x) - kLogSqrtPi + std::log(series);
}

// log P(Z > u) for standard normal Z.
double log_upper(double u) {
  if (u == kInf) return -kInf;
  if (u == -kInf) return 0.0;
  return log_erfc(u * kInvSqrt2) - kLog2;
}

// log(1 - e^x) for x <= 0.
double log1m_exp(double x) {
  if (x == -kInf) return 0.0;
  return x > -kLog2 ? std::log(-std::expm1(x)) : std::log1p(-std::exp(x));
}

// log P(a <= Z <= b), a < b.
double log_gauss_window(double a, double b) {
  if (!(a < b)) return -kInf;
  if (a >= 0.0) {
    const double la = log_upper(a);
    return la + log1m_exp(log_upper(b) - la);
  }
  if (b <= 0.0) return log_gauss_window(-b, -a);
  const double outside = std::exp(log_upper(b)) + std::exp(log_upper(-a));
  return std::log1p(-outside);
}

// Window probability without the x > y validation; zero when the start is
// on or below the line.
double window_raw(double x, double y, double mu, double t, double z_low, double z_high) {
  if (!(x > y)) return 0.0;
  if (t == 0.0) return (x >= z_low && x <= z_high) ? 1.0 : 0.0;
  const double lo = std::max(z_low, y + mu * t);
  if (!(z_high > lo)) return 0.0;
  const double s = std::sqrt(t);
  const double lg1 = log_gauss_window((lo - x) / s, (z_high - x) / s);
  if (lg1 == -kInf) return 0.0;
  if (y == -kInf) return std::exp(lg1);
  const double mirror = 2.0 * y - x;
  const double lg2 =
      2.0 * (x - y) * mu + log_gauss_window((lo - mirror) / s, (z_high - mirror) / s);
  if (!(lg2 < lg1)) return 0.0;
  return std::exp(lg1 + log1m_exp(lg2 - lg1));
}

double density_raw(double x, double y, double mu, double t, double z) {
  if (!(x > y) || !(z > y + mu * t)) return 0.0;
  const double d = z - x;
  const double gauss = std::exp(-d * d / (2.0 * t)) / std::sqrt(2.0 * M_PI * t);
  if (y == -kInf) return gauss;
  return gauss * -std::expm1(-2.0 * (x - y) * (z - y - mu * t) / t);
}

struct Simpson {
  const std::function<double(double)>& f;
  int max_depth;
  std::int64_t evaluations = 0;
  double error = 0.0;
  // Kahan accumulator
  double sum = 0.0;
  double carry = 0.0;
  bool failed = false;

  double eval(double x) {
    ++evaluations;
    return f(x);
  }

  void add(double v) {
    const double y = v - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }

  void run(double a, double b, double fa, double fm, double fb, double whole, double tol,
           int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = eval(lm);
    const double frm = eval(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double diff = left + right - whole;
    if (std::fabs(diff) <= 15.0 * tol) {
      add(left + right + diff / 15.0);
      error += std::fabs(diff) / 15.0;
      return;
    }
    if (depth >= max_depth) {
      failed = true;
      add(left + right + diff / 15.0);
      error += std::fabs(diff) / 15.0;
      return;
    }
    run(a, m, fa, flm, fm, left, tol / 2.0, depth + 1);
    run(m, b, fm, frm, fb, right, tol / 2.0, depth + 1);
  }
};

}  // namespace

// ---------------------------------------------------------------------------
// Curves

CurveSpec CurveSpec::g_curve(const graph::CriticalParams& params) {
  const double n13 = std::cbrt(static_cast<double>(params.n));
  const double A = params.A;
  return {-n13 / (2.0 * A), 9.0 / (A * A * n13), params.p / 2.0};
}

CurveSpec CurveSpec::gamma_curve(const graph::CriticalParams& params) {
  auto c = g_curve(params);
  c.c0 = -std::cbrt(static_cast<double>(params.n)) / (4.0 * params.A);
  return c;
}

CurveSpec CurveSpec::phi_curve(const graph::CriticalParams& params) {
  auto c = gamma_curve(params);
  c.c0 += std::cbrt(static_cast<double>(params.n)) / (8.0 * params.A);
  return c;
}

CurveSpec CurveSpec::chord(const CurveSpec& f, double s0, double s1) {
  if (!(s1 > s0)) throw DomainError("chord needs s1 > s0");
  return {f(s0), (f(s1) - f(s0)) / (s1 - s0), 0.0};
}

nlohmann::json CurveSpec::to_json() const { return {{"c0", c0}, {"c1", c1}, {"c2", c2}}; }

nlohmann::json ConstructionCurves::to_json() const {
  return {{"T", T},
          {"g", g.to_json()},
          {"gamma", gamma.to_json()},
          {"phi", phi.to_json()},
          {"ell1", ell1.to_json()},
          {"ell2", ell2.to_json()},
          {"psi_T", psi_T},
          {"interval", {interval_low, interval_high}},
          {"interval_above_curve", interval_above_curve()}};
}

ConstructionCurves make_curves(const graph::CriticalParams& params) {
  if (params.T2 <= params.T1) throw DomainError("construction needs T = T2 - T1 > 0");
  const double n13 = std::cbrt(static_cast<double>(params.n));
  ConstructionCurves c;
  c.T = static_cast<double>(params.T2 - params.T1);
  c.g = CurveSpec::g_curve(params);
  c.gamma = CurveSpec::gamma_curve(params);
  c.phi = CurveSpec::phi_curve(params);
  c.ell1 = CurveSpec::chord(c.phi, 0.0, c.T / 2.0);
  c.ell2 = CurveSpec::chord(c.phi, c.T / 2.0, c.T);
  c.psi_T = c.gamma(c.T) + n13 / (4.0 * params.A);
  c.interval_high = c.psi_T / 2.0;
  c.interval_low = c.psi_T / 2.0 - std::sqrt(params.A) * n13;
  return c;
}

// ---------------------------------------------------------------------------
// Single line

void LineCrossingQuery::validate() const {
  if (!(t > 0.0)) throw DomainError("horizon t must be positive");
  if (!(x > y)) throw DomainError("start x must lie above the intercept y");
  if (std::isnan(mu) || std::isnan(z_low) || std::isnan(z_high)) {
    throw DomainError("query has NaN fields");
  }
}

nlohmann::json LineCrossingQuery::to_json() const {
  return {{"x", x}, {"y", y}, {"mu", mu}, {"t", t}, {"z_low", z_low}, {"z_high", z_high}};
}

double stay_above_line_density(const LineCrossingQuery& q, double z) {
  q.validate();
  return density_raw(q.x, q.y, q.mu, q.t, z);
}

double stay_above_line_window(const LineCrossingQuery& q) {
  q.validate();
  return window_raw(q.x, q.y, q.mu, q.t, q.z_low, q.z_high);
}

// ---------------------------------------------------------------------------
// Quadrature

QuadratureResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                  const QuadratureOptions& opts) {
  QuadratureResult out;
  if (!(b > a)) return out;
  // Scale from a coarse sample; the integrands are smooth and unimodal.
  constexpr int kPanels = 16;
  std::vector<double> xs(2 * kPanels + 1);
  std::vector<double> fs(xs.size());
  double fmax = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    xs[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(xs.size() - 1);
    fs[i] = f(xs[i]);
    if (!std::isfinite(fs[i])) {
      throw DomainError("integrand is not finite at " + std::to_string(xs[i]));
    }
    fmax = std::max(fmax, std::fabs(fs[i]));
  }
  out.evaluations = static_cast<std::int64_t>(xs.size());
  if (fmax == 0.0) return out;
  const double tol = opts.rel_tol * fmax * (b - a);
  Simpson s{f, opts.max_depth};
  for (int k = 0; k < kPanels; ++k) {
    const auto i = static_cast<std::size_t>(2 * k);
    const double whole = (xs[i + 2] - xs[i]) / 6.0 * (fs[i] + 4.0 * fs[i + 1] + fs[i + 2]);
    s.run(xs[i], xs[i + 2], fs[i], fs[i + 1], fs[i + 2], whole, tol / kPanels, 0);
  }
  out.value = s.sum;
  out.error_estimate = s.error;
  out.evaluations += s.evaluations;
  if (!std::isfinite(out.value)) throw ConvergenceError("integral is not finite", out.value);
  if (s.failed && s.error > tol) {
    throw ConvergenceError("adaptive Simpson reached depth " + std::to_string(opts.max_depth) +
                               " with error estimate " + std::to_string(s.error),
                           s.error);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Two-segment polyline

double PolylineQuery::barrier(double s) const {
  if (s <= first.duration) return first.intercept + first.slope * s;
  return second.intercept + second.slope * (s - first.duration);
}

nlohmann::json PolylineQuery::to_json() const {
  auto seg = [](const LineSegment& l) {
    return nlohmann::json{{"intercept", l.intercept}, {"slope", l.slope}, {"duration", l.duration}};
  };
  auto num = [](double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); };
  return {{"x0", x0},           {"first", seg(first)},      {"second", seg(second)},
          {"mid_low", num(mid_low)}, {"mid_high", num(mid_high)}, {"z_low", num(z_low)},
          {"z_high", num(z_high)}};
}

double stay_above_polyline(const PolylineQuery& q, const QuadratureOptions& opts) {
  const auto& s1 = q.first;
  const auto& s2 = q.second;
  if (!(s1.duration > 0.0) || s2.duration < 0.0) {
    throw DomainError("first segment needs positive duration, second nonnegative");
  }
  if (!(q.x0 > s1.intercept)) throw DomainError("start must lie above the first line");

  if (s2.duration == 0.0) {
    const double lo = std::max({q.mid_low, q.z_low, s2.intercept});
    const double hi = std::min(q.mid_high, q.z_high);
    return window_raw(q.x0, s1.intercept, s1.slope, s1.duration, lo, hi);
  }
  // Clip infinite mid windows where the Gaussian factor is negligible.
  const double centre = q.x0;
  const double spread = 40.0 * std::sqrt(s1.duration);
  double lo = std::max(q.mid_low, s1.intercept + s1.slope * s1.duration);
  lo = std::max(lo, centre - spread);
  lo = std::max(lo, s2.intercept);
  const double hi = std::min(q.mid_high, centre + spread + std::fabs(s1.slope) * s1.duration);
  if (!(hi > lo)) return 0.0;
  auto integrand = [&](double w) {
    return density_raw(q.x0, s1.intercept, s1.slope, s1.duration, w) *
           window_raw(w, s2.intercept, s2.slope, s2.duration, q.z_low, q.z_high);
  };
  return adaptive_simpson(integrand, lo, hi, opts).value;
}

// ---------------------------------------------------------------------------
// Lower bound for the construction

nlohmann::json PnLowerBound::to_json() const {
  return {{"value", value},
          {"exponent_check", exponent_check},
          {"scaled_value", scaled_value},
          {"T", T},
          {"psi_T", psi_T},
          {"interval", {interval_low, interval_high}},
          {"interval_above_curve", interval_above_curve}};
}

PnLowerBound pn_lower_bound(const graph::CriticalParams& params, double x_n, double M) {
  if (x_n < 0.0 || M < 0.0) throw DomainError("x_n and M must be nonnegative");
  const auto c = make_curves(params);
  const double n13 = std::cbrt(static_cast<double>(params.n));
  if (M * std::log(c.T) + x_n > n13 / (8.0 * params.A)) {
    throw DomainError("requires M log T + x_n <= n^{1/3}/(8A)");
  }
  PolylineQuery q;
  q.x0 = 0.0;
  q.first = {c.ell1.c0, c.ell1.c1, c.T / 2.0};
  q.second = {c.ell2.c0, c.ell2.c1, c.T / 2.0};
  q.mid_low = c.interval_low;
  q.mid_high = c.interval_high;
  q.z_low = c.phi(c.T);
  q.z_high = c.psi_T;

  PnLowerBound out;
  out.value = stay_above_polyline(q);
  out.T = c.T;
  out.psi_T = c.psi_T;
  const double A = params.A;
  out.exponent_check = std::fabs(c.psi_T * c.psi_T / (2.0 * c.T) - A * A * A / 8.0);
  out.scaled_value = out.value * std::pow(A, 1.5) * std::exp(A * A * A / 8.0);
  out.interval_low = c.interval_low;
  out.interval_high = c.interval_high;
  out.interval_above_curve = c.interval_above_curve();
  return out;
}

// ---------------------------------------------------------------------------
// Monte Carlo oracle

McSpec McSpec::for_polyline(const PolylineQuery& q) {
  McSpec spec;
  spec.barrier = [q](double s) { return q.barrier(s); };
  spec.x0 = q.x0;
  spec.horizon = q.first.duration + q.second.duration;
  spec.z_low = q.z_low;
  spec.z_high = q.z_high;
  spec.mid_time = q.first.duration;
  spec.mid_low = q.mid_low;
  spec.mid_high = q.mid_high;
  return spec;
}

McSpec McSpec::for_line(const LineCrossingQuery& q) {
  q.validate();
  McSpec spec;
  spec.barrier = [y = q.y, mu = q.mu](double s) { return y + mu * s; };
  spec.x0 = q.x;
  spec.horizon = q.t;
  spec.z_low = q.z_low;
  spec.z_high = q.z_high;
  return spec;
}

McSpec McSpec::for_curve(const CurveSpec& curve, double x0, double horizon) {
  McSpec spec;
  spec.barrier = [curve](double s) { return curve(s); };
  spec.x0 = x0;
  spec.horizon = horizon;
  return spec;
}

nlohmann::json McResult::to_json() const {
  return {{"fine", critgraph::to_json(fine)},
          {"coarse", critgraph::to_json(coarse)},
          {"richardson", richardson}};
}

namespace {

TailEstimate run_paths(const McSpec& spec, std::int64_t steps) {
  const double dt = spec.horizon / static_cast<double>(steps);
  const double sd = std::sqrt(dt);
  std::vector<double> grid(static_cast<std::size_t>(steps) + 1);
  for (std::int64_t i = 0; i <= steps; ++i) {
    grid[static_cast<std::size_t>(i)] = spec.barrier(dt * static_cast<double>(i));
  }
  const std::int64_t mid =
      spec.mid_time >= 0.0 ? std::llround(spec.mid_time / dt) : -1;
  const auto hits = parallel_count(spec.paths, spec.workers, spec.seed, [&](Rng& rng, std::uint64_t) {
    double x = spec.x0;
    if (!(x > grid[0])) return false;
    for (std::int64_t i = 0; i < steps; ++i) {
      const double next = x + sd * rng.normal();
      const double a = x - grid[static_cast<std::size_t>(i)];
      const double b = next - grid[static_cast<std::size_t>(i) + 1];
      if (!(b > 0.0)) return false;
      if (rng.uniform() < std::exp(-2.0 * a * b / dt)) return false;
      x = next;
      if (i + 1 == mid && (x < spec.mid_low || x > spec.mid_high)) return false;
    }
    return x >= spec.z_low && x <= spec.z_high;
  });
  return make_tail_estimate(steps, spec.paths, hits, spec.seed);
}

}  // namespace

McResult mc_stay_above(const McSpec& spec) {
  if (spec.steps < 100) throw DomainError("Monte Carlo oracle needs at least 100 steps");
  if (!(spec.horizon > 0.0)) throw DomainError("horizon must be positive");
  if (!spec.barrier) throw DomainError("barrier function missing");
  McResult r;
  r.fine = run_paths(spec, spec.steps);
  r.coarse = run_paths(spec, spec.steps / 2);
  r.richardson = 2.0 * r.fine.estimate - r.coarse.estimate;
  return r;
}

}  // namespace critgraph::brownian
