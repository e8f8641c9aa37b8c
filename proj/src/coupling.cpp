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

#include "critgraph/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "critgraph/errors.hpp"
#include "critgraph/random.hpp"

namespace critgraph::coupling {

namespace {

void require_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError("probability " + std::to_string(p) + " outside [0, 1]");
  }
}

std::vector<std::int64_t> to_vector(const std::vector<bool>& bits) {
  return {bits.begin(), bits.end()};
}

// Fenwick tree over vertex indicators, used to address the unseen set by
// rank in vertex order.
class RankSet {
 public:
  explicit RankSet(std::int64_t n) : tree_(static_cast<std::size_t>(n) + 1, 0) {
    for (std::int64_t i = 1; i <= n; ++i) {
      tree_[static_cast<std::size_t>(i)] += 1;
      const std::int64_t parent = i + (i & -i);
      if (parent <= n) tree_[static_cast<std::size_t>(parent)] += tree_[static_cast<std::size_t>(i)];
    }
    top_ = 1;
    while (top_ * 2 <= n) top_ *= 2;
  }

  void erase(std::int64_t v) {
    const auto n = static_cast<std::int64_t>(tree_.size()) - 1;
    for (std::int64_t i = v + 1; i <= n; i += i & -i) tree_[static_cast<std::size_t>(i)] -= 1;
  }

  // Vertex of 0-based rank r among the members.
  std::int64_t select(std::int64_t r) const {
    const auto n = static_cast<std::int64_t>(tree_.size()) - 1;
    std::int64_t pos = 0;
    for (std::int64_t step = top_; step > 0; step /= 2) {
      const std::int64_t next = pos + step;
      if (next <= n && tree_[static_cast<std::size_t>(next)] <= r) {
        pos = next;
        r -= tree_[static_cast<std::size_t>(next)];
      }
    }
    return pos;
  }

 private:
  std::vector<std::int64_t> tree_;
  std::int64_t top_ = 1;
};

}  // namespace

// ---------------------------------------------------------------------------
// Padding with binomials

bool CoupledWalkPair::all_dominated() const {
  return std::all_of(dominated.begin(), dominated.end(), [](bool b) { return b; });
}

nlohmann::json CoupledWalkPair::to_json() const {
  return {{"label", label},
          {"lower", lower.increments()},
          {"upper", upper.increments()},
          {"dominated", to_vector(dominated)}};
}

CoupledWalkPair pad_with_binomials(std::int64_t n, double p, std::int64_t k, Rng& rng) {
  require_probability(p);
  if (k < 0 || k > n) throw DomainError("padding length k must lie in [0, n]");
  std::vector<std::int64_t> low(static_cast<std::size_t>(k));
  std::vector<std::int64_t> high(static_cast<std::size_t>(k));
  for (std::int64_t i = 1; i <= k; ++i) {
    const std::int64_t tau = rng.binomial(n - i, p);
    const std::int64_t b = rng.binomial(i, p);
    low[static_cast<std::size_t>(i - 1)] = tau - 1;
    high[static_cast<std::size_t>(i - 1)] = tau + b - 1;
  }
  CoupledWalkPair pair;
  pair.lower = ballot::WalkPath(std::move(low));
  pair.upper = ballot::WalkPath(std::move(high));
  pair.label = "binomial_padding";
  for (std::int64_t t = 1; t <= k; ++t) {
    const auto i = static_cast<std::size_t>(t);
    pair.dominated.push_back(pair.upper.sums()[i] >= pair.lower.sums()[i]);
  }
  return pair;
}

// ---------------------------------------------------------------------------
// Exploration coupling

nlohmann::json ExplorationCoupling::to_json() const {
  return {{"eta", trace.eta},
          {"delta", delta},
          {"Y", trace.Y},
          {"U", trace.U},
          {"qualifying", to_vector(qualifying)},
          {"domination_ok", domination_ok}};
}

ExplorationCoupling couple_exploration_iid(std::int64_t n, double p, std::int64_t K,
                                           std::int64_t steps, Rng& rng) {
  require_probability(p);
  if (n < 1 || K < 0 || steps < 0) throw DomainError("n, K and steps must be nonnegative");
  if (K + steps >= n) throw DomainError("exploration coupling requires K + steps < n");

  ExplorationCoupling out;
  auto& tr = out.trace;
  RankSet unseen(n);
  unseen.erase(0);
  std::int64_t y = 1;
  std::int64_t u = n - 1;
  tr.Y.push_back(y);
  tr.U.push_back(u);
  const double log1m_p = std::log1p(-p);
  std::vector<std::int64_t> hits;

  for (std::int64_t t = 1; t <= steps; ++t) {
    if (y == 0) {
      unseen.erase(unseen.select(0));
      --u;
      y = 1;
    }
    const std::int64_t target = n - K - t;
    const std::int64_t pad = u - target;
    const bool qualifying = pad >= 0;

    // Edge indicators from the explored vertex to the unseen set, addressed
    // by rank; ranks below `pad` are the set-aside padding vertices.
    hits.clear();
    std::int64_t eta = 0;
    std::int64_t delta = 0;
    std::int64_t pos = -1;
    while (true) {
      const std::int64_t skip = rng.geometric_skip(log1m_p);
      if (skip >= u - pos - 1) break;
      pos += 1 + skip;
      hits.push_back(unseen.select(pos));
      ++eta;
      if (pos >= pad) ++delta;
    }
    for (auto v : hits) unseen.erase(v);
    if (!qualifying) delta = eta + rng.binomial(target - u, p);

    y += eta - 1;
    u -= eta;
    tr.eta.push_back(eta);
    tr.Y.push_back(y);
    tr.U.push_back(u);
    out.delta.push_back(delta);
    out.qualifying.push_back(qualifying);
    if (qualifying && eta < delta) out.domination_ok = false;
    if (y == 0 && tr.stopped_at == 0) {
      tr.stopped_at = t;
      tr.component_size = t;
    }
  }
  if (tr.stopped_at == 0) {
    tr.stopped_at = steps;
    tr.component_size = steps;
    tr.censored = true;
  }
  return out;
}

ExplorationCoupling couple_exploration_iid(const graph::CriticalParams& params,
                                           std::int64_t steps, Rng& rng) {
  return couple_exploration_iid(params.n, params.p, params.K, steps, rng);
}

// ---------------------------------------------------------------------------
// Rearrangement of a triangular array

template <typename T>
TriangularArray<T>::TriangularArray(int N, int L) : N_(N), L_(L) {
  if (L < 1 || L % 2 == 0) throw DomainError("row count L must be odd and positive");
  if (L > N) throw DomainError("row count L must not exceed N");
  values_.assign(static_cast<std::size_t>(L) * static_cast<std::size_t>(std::max(N - 1, 0)), T{});
}

template <typename T>
T& TriangularArray<T>::at(int i, int j) {
  if (i < 1 || i > L_ || j < 1 || j > N_ - 1) throw DomainError("array index out of range");
  return values_[static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(N_ - 1) +
                 static_cast<std::size_t>(j - 1)];
}

template <typename T>
const T& TriangularArray<T>::at(int i, int j) const {
  return const_cast<TriangularArray*>(this)->at(i, j);
}

template <typename T>
bool Rearrangement<T>::prefix_dominated() const {
  T lhs{};
  T rhs{};
  for (std::size_t t = 0; t < X.size(); ++t) {
    lhs += tilde_X[t];
    rhs += X[t];
    if (lhs > rhs) return false;
  }
  return lhs == rhs;
}

template <typename T>
Rearrangement<T> rearrange_bernoullis(const TriangularArray<T>& arr) {
  const int N = arr.N();
  const int L = arr.L();
  const int l = (L + 1) / 2;
  Rearrangement<T> out;
  out.X.assign(static_cast<std::size_t>(L), T{});
  out.tilde_X.assign(static_cast<std::size_t>(L), T{});
  for (int i = 1; i <= L; ++i) {
    T x{};
    for (int j = 1; j <= N - i; ++j) x += arr.at(i, j);
    out.X[static_cast<std::size_t>(i - 1)] = x;

    T tx{};
    if (i <= l) {
      for (int j = 1; j <= N - l; ++j) tx += arr.at(i, j);
    } else {
      for (int j = 1; j <= N - i; ++j) tx += arr.at(i, j);
      const int mirror = L + 1 - i;
      for (int j = N - l + 1; j <= N - mirror; ++j) tx += arr.at(mirror, j);
    }
    out.tilde_X[static_cast<std::size_t>(i - 1)] = tx;
  }
  return out;
}

template class TriangularArray<std::int64_t>;
template class TriangularArray<double>;
template struct Rearrangement<std::int64_t>;
template struct Rearrangement<double>;
template Rearrangement<std::int64_t> rearrange_bernoullis(const TriangularArray<std::int64_t>&);
template Rearrangement<double> rearrange_bernoullis(const TriangularArray<double>&);

// ---------------------------------------------------------------------------
// Bernoulli / Poisson table coupling

double BinomialPoissonTable::p1k(std::int64_t k) const {
  if (k < 0) return 0.0;
  if (k == 0) return p10;
  if (k == 1) return p11;
  return std::exp(-p + static_cast<double>(k) * std::log(p) - std::lgamma(static_cast<double>(k) + 1.0));
}

double BinomialPoissonTable::disagreement() const { return -p * std::expm1(-p); }

BinomialPoissonTable binomial_poisson_table(double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("table coupling requires 0 < p < 1");
  BinomialPoissonTable t;
  t.p = p;
  t.p00 = 1.0 - p;
  t.p11 = p * std::exp(-p);
  // e^{-p} - (1 - p) without cancellation
  t.p10 = std::expm1(-p) + p;
  t.e_minus_p = std::exp(-p);
  t.flip_given_zero = t.p10 / t.e_minus_p;
  return t;
}

BinomialPoissonPair binomial_poisson_pair(const BinomialPoissonTable& table, Rng& rng) {
  BinomialPoissonPair out;
  // Poisson(p) by inversion. On {Poisson = 0} the uniform is uniform on
  // [0, e^{-p}], so it also decides the Bernoulli: one with probability
  // p10 / e^{-p}, i.e. when u < p10.
  double u = rng.uniform();
  if (u < table.e_minus_p) {
    out.bernoulli = u < table.p10 ? 1 : 0;
    return out;
  }
  double pk = table.e_minus_p;
  while (u > pk && out.poisson < 1000) {
    u -= pk;
    ++out.poisson;
    pk *= table.p / static_cast<double>(out.poisson);
  }
  out.poisson = std::max<std::int64_t>(out.poisson, 1);
  out.bernoulli = 1;
  return out;
}

BinomialPoissonPair binomial_poisson_pair(double p, Rng& rng) {
  return binomial_poisson_pair(binomial_poisson_table(p), rng);
}

// ---------------------------------------------------------------------------
// Change of measure

double tilt_weight(const std::vector<std::int64_t>& increments, double mu) {
  if (!(mu > 0.0)) throw DomainError("tilt parameter mu must be positive");
  long double total = 0;
  for (auto w : increments) total += static_cast<long double>(w);
  const long double t = static_cast<long double>(increments.size());
  return static_cast<double>(
      std::exp(-total * std::log(static_cast<long double>(mu)) + (mu - 1.0L) * t));
}

TiltedWalkSample sample_tilted_walk(double mu, std::int64_t t, Rng& rng) {
  if (!(mu > 0.0)) throw DomainError("tilt parameter mu must be positive");
  if (t < 0) throw DomainError("walk length must be nonnegative");
  TiltedWalkSample s;
  s.mu = mu;
  for (std::int64_t i = 0; i < t; ++i) s.increments.push_back(rng.poisson(mu));
  s.weight = tilt_weight(s.increments, mu);
  return s;
}

nlohmann::json TiltTables::to_json() const {
  return {{"mu", mu},
          {"t_n", t_n},
          {"truncation", truncation},
          {"p_marginal", p_marginals.empty() ? std::vector<double>{} : p_marginals.front()},
          {"q_marginal", q_marginals.empty() ? std::vector<double>{} : q_marginals.front()},
          {"p_total_mass", p_total_mass},
          {"q_total_mass", q_total_mass},
          {"p_omitted_mass", p_omitted_mass},
          {"q_omitted_mass", q_omitted_mass}};
}

TiltTables tilt_poisson_walk(double mu, std::int64_t t_n, std::int64_t truncation) {
  if (!(mu > 0.0) || !std::isfinite(mu)) throw DomainError("tilt parameter mu must be positive");
  if (t_n < 0 || truncation < 0) throw DomainError("t_n and truncation must be nonnegative");
  const long double m = mu;
  const long double log_mu = std::log(m);
  auto log_p = [&](std::int64_t k) {
    return -m + static_cast<long double>(k) * log_mu - std::lgamma(static_cast<long double>(k) + 1);
  };
  // per-increment factor of the weight: mu^{-k} e^{mu - 1}
  auto log_w = [&](std::int64_t k) { return -static_cast<long double>(k) * log_mu + (m - 1); };

  std::vector<long double> f(static_cast<std::size_t>(truncation) + 1);
  std::vector<long double> g(f.size());
  long double f_mass = 0;
  long double g_mass = 0;
  for (std::int64_t k = 0; k <= truncation; ++k) {
    f[static_cast<std::size_t>(k)] = std::exp(log_p(k));
    g[static_cast<std::size_t>(k)] = std::exp(log_p(k) + log_w(k));
    f_mass += f[static_cast<std::size_t>(k)];
    g_mass += g[static_cast<std::size_t>(k)];
  }
  // Tails beyond the truncation, summed until the terms are negligible.
  long double f_tail = 0;
  long double g_tail = 0;
  for (std::int64_t k = truncation + 1;; ++k) {
    const long double a = std::exp(log_p(k));
    const long double b = std::exp(log_p(k) + log_w(k));
    f_tail += a;
    g_tail += b;
    if (static_cast<long double>(k) > 2 * m + 2 && a <= 1e-30L * (f_tail + 1e-300L) &&
        b <= 1e-30L * (g_tail + 1e-300L)) {
      break;
    }
    if (k > truncation + 100000) break;
  }

  const long double t = static_cast<long double>(t_n);
  TiltTables out;
  out.mu = mu;
  out.t_n = t_n;
  out.truncation = truncation;
  out.p_total_mass = static_cast<double>(std::pow(f_mass, t));
  out.q_total_mass = static_cast<double>(std::pow(g_mass, t));
  out.p_omitted_mass = static_cast<double>(-std::expm1(t * std::log1p(-f_tail)));
  out.q_omitted_mass = static_cast<double>(
      std::pow(g_mass + g_tail, t) - std::pow(g_mass, t));
  if (out.p_omitted_mass >= 1e-6 || out.q_omitted_mass >= 1e-6) {
    throw ResourceError("truncation " + std::to_string(truncation) + " omits mass " +
                        std::to_string(std::max(out.p_omitted_mass, out.q_omitted_mass)) +
                        " >= 1e-6");
  }
  const long double f_rest = t_n > 0 ? std::pow(f_mass, t - 1) : 1;
  const long double g_rest = t_n > 0 ? std::pow(g_mass, t - 1) : 1;
  std::vector<double> pm(f.size());
  std::vector<double> qm(g.size());
  for (std::size_t k = 0; k < f.size(); ++k) {
    pm[k] = static_cast<double>(f[k] * f_rest);
    qm[k] = static_cast<double>(g[k] * g_rest);
  }
  out.p_marginals.assign(static_cast<std::size_t>(t_n), pm);
  out.q_marginals.assign(static_cast<std::size_t>(t_n), qm);
  return out;
}

double poisson_approx_gap(std::int64_t n_eff, double p, std::int64_t t_n) {
  if (n_eff <= 0) throw DomainError("n_eff must be positive");
  require_probability(p);
  if (t_n < 0) throw DomainError("t_n must be nonnegative");
  const double np = static_cast<double>(n_eff) * p;
  return static_cast<double>(t_n) * np * np / static_cast<double>(n_eff);
}

// ---------------------------------------------------------------------------
// Audits

namespace {

std::vector<std::uint64_t> slice(const std::vector<std::uint64_t>& v, std::size_t from,
                                 std::size_t count) {
  return {v.begin() + static_cast<std::ptrdiff_t>(from),
          v.begin() + static_cast<std::ptrdiff_t>(from + count)};
}

}  // namespace

AuditReport audit_padding(std::int64_t n, double p, std::int64_t k, std::uint64_t samples,
                          std::uint64_t seed, unsigned workers) {
  require_probability(p);
  if (k < 1 || k > n) throw DomainError("padding audit needs 1 <= k <= n");
  const std::vector<std::int64_t> idx{1, (k + 1) / 2, k};
  const std::size_t width = static_cast<std::size_t>(n) + 1;
  const auto counts = parallel_histogram(
      samples, workers, seed, idx.size() * width + 1,
      [&](Rng& rng, std::uint64_t, std::vector<std::uint64_t>& acc) {
        const auto pair = pad_with_binomials(n, p, k, rng);
        for (std::size_t s = 0; s < idx.size(); ++s) {
          const auto inc = pair.upper.increments()[static_cast<std::size_t>(idx[s] - 1)] + 1;
          ++acc[s * width + static_cast<std::size_t>(inc)];
        }
        if (!pair.all_dominated()) ++acc.back();
      });
  AuditReport r;
  r.lemma = "binomial_padding";
  r.samples = samples;
  r.violations = counts.back();
  for (std::size_t s = 0; s < idx.size(); ++s) {
    r.gof.push_back(chi_square_gof(
        slice(counts, s * width, width),
        [&](std::int64_t v) { return std::exp(binomial_log_pmf(n, p, v)); },
        "upper_increment_" + std::to_string(idx[s])));
  }
  if (r.violations > 0) {
    for (std::uint64_t i = 0; i < samples; ++i) {
      Rng rng(derive_seed(seed, i));
      const auto pair = pad_with_binomials(n, p, k, rng);
      if (!pair.all_dominated()) {
        r.offending = pair.to_json();
        (*r.offending)["index"] = i;
        break;
      }
    }
  }
  r.extra = {{"n", n}, {"p", p}, {"k", k}, {"seed", seed}};
  return r;
}

AuditReport audit_exploration_coupling(std::int64_t n, double p, std::int64_t K,
                                       std::int64_t steps,
                                       const std::vector<std::int64_t>& gof_steps,
                                       std::uint64_t samples, std::uint64_t seed,
                                       unsigned workers) {
  for (auto t : gof_steps) {
    if (t < 1 || t > steps) throw DomainError("GOF step outside [1, steps]");
  }
  const std::size_t width = static_cast<std::size_t>(n) + 1;
  // trailing counters: violating runs, qualifying steps
  const auto counts = parallel_histogram(
      samples, workers, seed, gof_steps.size() * width + 2,
      [&](Rng& rng, std::uint64_t, std::vector<std::uint64_t>& acc) {
        const auto run = couple_exploration_iid(n, p, K, steps, rng);
        for (std::size_t s = 0; s < gof_steps.size(); ++s) {
          const auto d = run.delta[static_cast<std::size_t>(gof_steps[s] - 1)];
          ++acc[s * width + static_cast<std::size_t>(d)];
        }
        if (!run.domination_ok) ++acc[acc.size() - 2];
        acc.back() += static_cast<std::uint64_t>(
            std::count(run.qualifying.begin(), run.qualifying.end(), true));
      });
  AuditReport r;
  r.lemma = "exploration_coupling";
  r.samples = samples;
  r.violations = counts[counts.size() - 2];
  for (std::size_t s = 0; s < gof_steps.size(); ++s) {
    const std::int64_t trials = n - K - gof_steps[s];
    r.gof.push_back(chi_square_gof(
        slice(counts, s * width, width),
        [&](std::int64_t v) { return std::exp(binomial_log_pmf(trials, p, v)); },
        "delta_" + std::to_string(gof_steps[s])));
  }
  if (r.violations > 0) {
    for (std::uint64_t i = 0; i < samples; ++i) {
      Rng rng(derive_seed(seed, i));
      const auto run = couple_exploration_iid(n, p, K, steps, rng);
      if (!run.domination_ok) {
        r.offending = run.to_json();
        (*r.offending)["index"] = i;
        break;
      }
    }
  }
  r.extra = {{"n", n},
             {"p", p},
             {"K", K},
             {"steps", steps},
             {"seed", seed},
             {"qualifying_steps", counts.back()}};
  return r;
}

AuditReport audit_rearrangement(std::uint64_t arrays, int max_N, std::uint64_t seed) {
  if (max_N < 1) throw DomainError("max_N must be positive");
  AuditReport r;
  r.lemma = "triangular_rearrangement";
  r.samples = arrays;
  std::uint64_t integer_arrays = 0;
  std::uint64_t real_arrays = 0;
  for (std::uint64_t a = 0; a < arrays; ++a) {
    Rng rng(derive_seed(seed, a));
    const int N = 1 + static_cast<int>(rng.next() % static_cast<std::uint64_t>(max_N));
    const int L = 2 * static_cast<int>(rng.next() % static_cast<std::uint64_t>((N + 1) / 2)) + 1;
    bool ok = true;
    nlohmann::json sample;
    if (a % 2 == 0) {
      ++integer_arrays;
      TriangularArray<std::int64_t> arr(N, L);
      for (int i = 1; i <= L; ++i)
        for (int j = 1; j <= N - 1; ++j) arr.at(i, j) = static_cast<std::int64_t>(rng.next() % 10);
      const auto re = rearrange_bernoullis(arr);
      ok = re.prefix_dominated();
      if (!ok) sample = {{"X", re.X}, {"tilde_X", re.tilde_X}};
    } else {
      ++real_arrays;
      TriangularArray<double> arr(N, L);
      for (int i = 1; i <= L; ++i)
        for (int j = 1; j <= N - 1; ++j)
          arr.at(i, j) = static_cast<double>(rng.next() % 1024) / 256.0;
      const auto re = rearrange_bernoullis(arr);
      ok = re.prefix_dominated();
      if (!ok) sample = {{"X", re.X}, {"tilde_X", re.tilde_X}};
    }
    if (!ok) {
      ++r.violations;
      if (!r.offending) {
        sample["index"] = a;
        sample["N"] = N;
        sample["L"] = L;
        r.offending = sample;
      }
    }
  }
  r.extra = {{"integer_arrays", integer_arrays}, {"real_arrays", real_arrays},
             {"max_N", max_N}, {"seed", seed}};
  return r;
}

AuditReport audit_table_coupling(double p, std::uint64_t samples, std::uint64_t seed,
                                 unsigned workers) {
  const auto table = binomial_poisson_table(p);
  // Cell 0 is (0, 0); cell 1 + k is (1, k), with k capped at kCap.
  constexpr std::size_t kCap = 30;
  const std::uint64_t blocks = (samples + kTableBlock - 1) / kTableBlock;
  const auto counts = parallel_histogram(
      blocks, workers, seed, kCap + 3,
      [&](Rng& rng, std::uint64_t block, std::vector<std::uint64_t>& acc) {
        const std::uint64_t begin = block * kTableBlock;
        const std::uint64_t end = std::min(samples, begin + kTableBlock);
        for (std::uint64_t i = begin; i < end; ++i) {
          const auto pair = binomial_poisson_pair(table, rng);
          if (pair.bernoulli == 0) {
            if (pair.poisson == 0) ++acc[0];
            else ++acc.back();
          } else {
            ++acc[1 + std::min<std::size_t>(static_cast<std::size_t>(pair.poisson), kCap)];
          }
        }
      });
  AuditReport r;
  r.lemma = "bernoulli_poisson_table";
  r.samples = samples;
  r.violations = counts.back();

  std::vector<std::uint64_t> cells(counts.begin(), counts.end() - 1);
  r.gof.push_back(chi_square_gof(
      cells,
      [&](std::int64_t c) { return c == 0 ? table.p00 : table.p1k(c - 1); },
      "joint_table"));

  std::uint64_t disagree = 0;
  for (std::size_t c = 1; c < cells.size(); ++c) {
    if (c != 2) disagree += cells[c];
  }
  const auto est = make_tail_estimate(0, samples, disagree, seed);
  const double analytic = table.disagreement();
  const double se = est.standard_error_at(analytic);

  // Closed forms evaluated independently of the table code path.
  const long double lp = p;
  const long double ep = std::exp(-lp);
  long double normalization = table.p00;
  for (std::int64_t k = 0; k < 200; ++k) normalization += table.p1k(k);
  const double table_error = static_cast<double>(std::max(
      {std::fabs(static_cast<long double>(table.p00) - (1 - lp)),
       std::fabs(static_cast<long double>(table.p11) - lp * ep),
       std::fabs(static_cast<long double>(table.p10) - (ep - (1 - lp))),
       std::fabs(static_cast<long double>(table.p1k(2)) - ep * lp * lp / 2),
       std::fabs(static_cast<long double>(table.disagreement()) - lp * (1 - ep)),
       std::fabs(normalization - 1)}));

  r.extra = {{"p", p},
             {"seed", seed},
             {"table", {{"p00", table.p00}, {"p10", table.p10}, {"p11", table.p11},
                        {"p12", table.p1k(2)}}},
             {"table_max_abs_error", table_error},
             {"disagreement_estimate", est.estimate},
             {"disagreement_analytic", analytic},
             {"disagreement_se", se},
             {"p_squared", p * p}};
  return r;
}

}  // namespace critgraph::coupling
