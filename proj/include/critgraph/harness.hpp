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

#ifndef CRITGRAPH_HARNESS_HPP_
#define CRITGRAPH_HARNESS_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "critgraph/bounds.hpp"
#include "critgraph/graph.hpp"
#include "critgraph/stats.hpp"
#include "json.hpp"

namespace critgraph::harness {

enum class Mode {
  kComponentTail,
  kCmaxTail,
  kLemmaAudit,
  kBrownianSweep,
  kBallotAudit,
  kEnvelope,
};

std::string_view to_string(Mode mode);
// Accepts component_tail, cmax_tail, lemma_audit, brownian_sweep,
// ballot_audit, envelope.
Mode parse_mode(std::string_view name);

struct Cell {
  std::int64_t n = 0;
  double A = 0.0;
  double lambda = 0.0;
};

struct ExperimentConfig {
  Mode mode = Mode::kCmaxTail;
  std::vector<std::int64_t> n_values;
  std::vector<double> A_values;
  std::vector<double> lambda_values{0.0};
  std::uint64_t trials = 1000;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  std::string out_dir = "results";
  // brownian_sweep
  double x_n = 0.0;
  double M = 0.0;
  // ballot_audit
  int ballot_max_n = 8;
  int ballot_denominator = 9;

  // Cartesian product n x A x lambda in listed order.
  std::vector<Cell> cells() const;
  // Throws DomainError on trials < 1, workers < 1 or a bad ballot range.
  void validate() const;
  nlohmann::json to_json() const;
};

// Sets one flat key: mode, seed, trials, workers, out, n, A, lambda (the
// grid keys take comma-separated lists), x_n, M, max_n, denominator.
void set_config_key(ExperimentConfig& config, std::string_view key, std::string_view value);

// Reads an INI file (key = value lines under [experiment], [grid],
// [brownian] or [ballot]) on top of `base`.
ExperimentConfig load_config_file(const std::filesystem::path& path, ExperimentConfig base = {});

inline constexpr const char* kOutputEnv = "CRITGRAPH_OUT";

// Overrides out_dir from CRITGRAPH_OUT when set and nonempty.
void apply_environment(ExperimentConfig& config);

// Stable per-cell seed from (master, n, A, lambda, mode); independent of the
// cell's position in the grid.
std::uint64_t cell_seed(std::uint64_t master, const Cell& cell, Mode mode);

// floor(A n^{2/3}): the tail event is |C| > A n^{2/3}.
std::int64_t tail_threshold(const graph::CriticalParams& params);

struct ComparisonRow {
  Cell cell;
  std::int64_t k = 0;
  TailEstimate empirical;
  bounds::EnvelopeValue envelope;
  // empirical / envelope, defined when the envelope exceeds 1e-300
  std::optional<double> ratio_a;
  std::optional<double> ratio_b;

  nlohmann::json to_json() const;
};

ComparisonRow make_comparison_row(const graph::CriticalParams& params, const TailEstimate& tail);

struct FittedConstants {
  double c_hat_a = 0.0;
  double c_hat_b = 0.0;
  // Largest max/min ratio of ratio_b across n over the (A, lambda) groups
  // with at least two rows.
  double dispersion = 1.0;
  nlohmann::json groups = nlohmann::json::array();

  nlohmann::json to_json() const;
};

// Geometric means of the ratios over rows with a nonzero estimate. Throws
// DomainError with fewer than two such rows.
FittedConstants fit_constants(const std::vector<ComparisonRow>& rows);

// n,A,lambda,log_empirical,log_envelope_a,log_envelope_b with %.6g values;
// header only for no rows.
std::string plotdata_csv(const std::vector<ComparisonRow>& rows);
void emit_plotdata(const std::vector<ComparisonRow>& rows, const std::filesystem::path& path);

struct RunSummary {
  // 0 iff every exact invariant held
  int exit_code = 0;
  std::vector<std::string> files;
  std::vector<AuditReport> failures;
  nlohmann::json results = nlohmann::json::object();

  nlohmann::json to_json() const;
};

// Runs the selected mode over the grid and writes its CSV and JSON files,
// metadata.json (the only file carrying a timestamp) and failures.json into
// out_dir.
RunSummary run_experiment(const ExperimentConfig& config);

}  // namespace critgraph::harness

#endif  // CRITGRAPH_HARNESS_HPP_
