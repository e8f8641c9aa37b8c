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

#include "critgraph/harness.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <ctime>
#include <fstream>
#include <map>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "critgraph/ballot.hpp"
#include "critgraph/brownian.hpp"
#include "critgraph/coupling.hpp"
#include "critgraph/errors.hpp"
#include "critgraph/random.hpp"

namespace critgraph::harness {

namespace fs = std::filesystem;

namespace {

constexpr std::pair<Mode, std::string_view> kModeNames[] = {
    {Mode::kComponentTail, "component_tail"}, {Mode::kCmaxTail, "cmax_tail"},
    {Mode::kLemmaAudit, "lemma_audit"},       {Mode::kBrownianSweep, "brownian_sweep"},
    {Mode::kBallotAudit, "ballot_audit"},     {Mode::kEnvelope, "envelope"},
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

template <class T>
T parse_number(std::string_view key, std::string_view text) {
  text = trim(text);
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw DomainError("config key '" + std::string(key) + "': cannot parse '" + std::string(text) +
                      "'");
  }
  return value;
}

template <class T>
std::vector<T> parse_list(std::string_view key, std::string_view text) {
  std::vector<T> out;
  text = trim(text);
  if (text.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    out.push_back(parse_number<T>(key, text.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string num6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::uint64_t double_bits(double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, sizeof bits);
  return bits;
}

void write_file(const fs::path& path, const std::string& body, RunSummary& summary) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << body;
  out.flush();
  if (!out) throw IoError("write to " + path.string() + " failed");
  summary.files.push_back(path.string());
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

nlohmann::json cell_json(const Cell& c) { return {{"n", c.n}, {"A", c.A}, {"lambda", c.lambda}}; }

const char kTailHeader[] = "n,A,lambda,k,trials,successes,estimate,ci_low,ci_high,seed\n";

std::string tail_line(const Cell& c, const TailEstimate& t) {
  return std::to_string(c.n) + "," + num(c.A) + "," + num(c.lambda) + "," +
         std::to_string(t.threshold) + "," + std::to_string(t.trials) + "," +
         std::to_string(t.successes) + "," + num(t.estimate) + "," + num(t.ci_low) + "," +
         num(t.ci_high) + "," + std::to_string(t.seed) + "\n";
}

std::string optional_num(const std::optional<double>& v) { return v ? num(*v) : ""; }

void run_tails(const ExperimentConfig& config, const fs::path& out, RunSummary& summary) {
  std::string tails = kTailHeader;
  std::string comparison = "n,A,lambda,k,estimate,value_a,value_b,ratio_a,ratio_b,hypothesis_flags\n";
  std::vector<ComparisonRow> rows;
  nlohmann::json skipped = nlohmann::json::array();
  for (const auto& cell : config.cells()) {
    graph::CriticalParams params;
    try {
      params = graph::CriticalParams::make(cell.n, cell.A, cell.lambda);
    } catch (const DomainError& e) {
      skipped.push_back({{"cell", cell_json(cell)}, {"reason", e.what()}});
      continue;
    }
    const auto seed = cell_seed(config.seed, cell, config.mode);
    const auto k = tail_threshold(params);
    const auto tail = config.mode == Mode::kComponentTail
                          ? graph::tail_component(params, k, config.trials, seed, config.workers)
                          : graph::tail_cmax(params, k, config.trials, seed, config.workers);
    const auto row = make_comparison_row(params, tail);
    tails += tail_line(cell, tail);
    comparison += std::to_string(cell.n) + "," + num(cell.A) + "," + num(cell.lambda) + "," +
                  std::to_string(k) + "," + num(tail.estimate) + "," +
                  num(row.envelope.value_a) + "," + num(row.envelope.value_b) + "," +
                  optional_num(row.ratio_a) + "," + optional_num(row.ratio_b) + "," +
                  row.envelope.hypothesis_flags() + "\n";
    rows.push_back(row);
  }
  nlohmann::json rows_json = nlohmann::json::array();
  for (const auto& r : rows) rows_json.push_back(r.to_json());
  write_file(out / "tails.csv", tails, summary);
  write_file(out / "tails.json", dump({{"rows", rows_json}, {"skipped", skipped}}), summary);
  write_file(out / "comparison.csv", comparison, summary);
  write_file(out / "plotdata.csv", plotdata_csv(rows), summary);
  nlohmann::json fit;
  try {
    fit = fit_constants(rows).to_json();
  } catch (const DomainError& e) {
    fit = {{"error", e.what()}};
  }
  write_file(out / "fit.json", dump(fit), summary);
  summary.results = {{"rows", rows.size()}, {"skipped", skipped.size()}, {"fit", fit}};
}

void run_envelope(const ExperimentConfig& config, const fs::path& out, RunSummary& summary) {
  std::string csv = "n,A,lambda,exponent,value_a,value_b,hypothesis_flags\n";
  nlohmann::json rows = nlohmann::json::array();
  nlohmann::json skipped = nlohmann::json::array();
  for (const auto& cell : config.cells()) {
    graph::CriticalParams params;
    try {
      params = graph::CriticalParams::make(cell.n, cell.A, cell.lambda);
    } catch (const DomainError& e) {
      skipped.push_back({{"cell", cell_json(cell)}, {"reason", e.what()}});
      continue;
    }
    const auto e = bounds::envelope(params);
    const auto g = bounds::gaussian_argument_x(params);
    csv += std::to_string(cell.n) + "," + num(cell.A) + "," + num(cell.lambda) + "," +
           num(e.exponent) + "," + num(e.value_a) + "," + num(e.value_b) + "," +
           e.hypothesis_flags() + "\n";
    auto j = e.to_json();
    j["params"] = params.to_json();
    j["gaussian_argument"] = {{"x_exact", g.x_exact}, {"x_approx", g.x_approx}, {"gap", g.gap}};
    rows.push_back(j);
  }
  write_file(out / "envelope.csv", csv, summary);
  write_file(out / "envelope.json", dump({{"rows", rows}, {"skipped", skipped}}), summary);
  summary.results = {{"rows", rows.size()}, {"skipped", skipped.size()}};
}

void run_brownian(const ExperimentConfig& config, const fs::path& out, RunSummary& summary) {
  std::string csv = "A,n,lambda,value,exponent_check\n";
  nlohmann::json rows = nlohmann::json::array();
  nlohmann::json skipped = nlohmann::json::array();
  for (const auto& cell : config.cells()) {
    try {
      const auto params = graph::CriticalParams::make(cell.n, cell.A, cell.lambda);
      const auto r = brownian::pn_lower_bound(params, config.x_n, config.M);
      csv += num(cell.A) + "," + std::to_string(cell.n) + "," + num(cell.lambda) + "," +
             num(r.value) + "," + num(r.exponent_check) + "\n";
      auto j = r.to_json();
      j["cell"] = cell_json(cell);
      rows.push_back(j);
    } catch (const DomainError& e) {
      skipped.push_back({{"cell", cell_json(cell)}, {"reason", e.what()}});
    }
  }
  write_file(out / "brownian.csv", csv, summary);
  write_file(out / "brownian.json",
             dump({{"x_n", config.x_n}, {"M", config.M}, {"rows", rows}, {"skipped", skipped}}),
             summary);
  summary.results = {{"rows", rows.size()}, {"skipped", skipped.size()}};
}

AuditReport audit_tilting(double mu, std::int64_t t_n, std::int64_t truncation) {
  AuditReport r;
  r.lemma = "poisson_tilting";
  const auto tables = coupling::tilt_poisson_walk(mu, t_n, truncation);
  double worst = std::fabs(tables.q_total_mass - 1.0);
  for (const auto& marginal : tables.q_marginals) {
    for (std::size_t k = 0; k < marginal.size(); ++k) {
      const double target = std::exp(poisson_log_pmf(1.0, static_cast<std::int64_t>(k)));
      const double err = std::fabs(marginal[k] - target);
      worst = std::max(worst, err);
      ++r.samples;
      if (err > 1e-8) ++r.violations;
    }
  }
  r.extra = tables.to_json();
  r.extra["max_abs_error"] = worst;
  return r;
}

void run_lemma_audit(const ExperimentConfig& config, const fs::path& out, RunSummary& summary) {
  const auto s = config.trials;
  auto seed = [&](std::uint64_t i) { return derive_seed(config.seed, i); };
  std::vector<AuditReport> reports;
  reports.push_back(coupling::audit_padding(30, 0.1, 20, s, seed(1), config.workers));
  reports.push_back(coupling::audit_exploration_coupling(200, 1.0 / 200.0, 20, 50, {1, 25, 50}, s,
                                                         seed(2), config.workers));
  reports.push_back(coupling::audit_rearrangement(s, 20, seed(3)));
  reports.push_back(coupling::audit_table_coupling(0.01, s, seed(4), config.workers));
  reports.push_back(coupling::audit_table_coupling(0.1, s, seed(5), config.workers));
  reports.push_back(audit_tilting(0.9, 5, 30));
  reports.push_back(audit_tilting(1.1, 5, 30));
  nlohmann::json j = nlohmann::json::array();
  for (const auto& r : reports) {
    j.push_back(r.to_json());
    if (r.violations > 0) summary.failures.push_back(r);
  }
  write_file(out / "couplings.json", dump(j), summary);
  summary.results = {{"audits", reports.size()}};
}

void run_ballot_audit(const ExperimentConfig& config, const fs::path& out, RunSummary& summary) {
  const std::vector<std::int64_t> pool{-1, 0, 1, 2};
  std::vector<AuditReport> reports;
  reports.push_back(ballot::audit_ballot_family(
      ballot::grid_family(pool, config.ballot_denominator), config.ballot_max_n));
  reports.push_back(ballot::audit_favourable_counts(pool, config.ballot_max_n));
  reports.push_back(ballot::audit_cycle_equality(12));
  nlohmann::json j = nlohmann::json::array();
  for (const auto& r : reports) {
    j.push_back(r.to_json());
    if (r.violations > 0) summary.failures.push_back(r);
  }
  write_file(out / "ballot.json", dump(j), summary);
  summary.results = {{"audits", reports.size()}};
}

}  // namespace

std::string_view to_string(Mode mode) {
  for (const auto& [m, name] : kModeNames) {
    if (m == mode) return name;
  }
  return "unknown";
}

Mode parse_mode(std::string_view name) {
  name = trim(name);
  for (const auto& [m, text] : kModeNames) {
    if (text == name) return m;
  }
  throw DomainError("unknown mode '" + std::string(name) + "'");
}

std::vector<Cell> ExperimentConfig::cells() const {
  std::vector<Cell> out;
  for (auto n : n_values)
    for (auto A : A_values)
      for (auto l : lambda_values) out.push_back({n, A, l});
  return out;
}

void ExperimentConfig::validate() const {
  if (trials < 1) throw DomainError("trials must be at least 1");
  if (workers < 1) throw DomainError("workers must be at least 1");
  if (ballot_max_n < 1 || ballot_max_n > 12) throw DomainError("ballot max_n must lie in [1, 12]");
  if (ballot_denominator < 1) throw DomainError("ballot denominator must be positive");
  if (out_dir.empty()) throw DomainError("output directory must be set");
}

nlohmann::json ExperimentConfig::to_json() const {
  return {{"mode", std::string(to_string(mode))},
          {"n", n_values},
          {"A", A_values},
          {"lambda", lambda_values},
          {"trials", trials},
          {"seed", seed},
          {"workers", workers},
          {"out", out_dir},
          {"x_n", x_n},
          {"M", M},
          {"max_n", ballot_max_n},
          {"denominator", ballot_denominator}};
}

void set_config_key(ExperimentConfig& c, std::string_view key, std::string_view value) {
  key = trim(key);
  if (key == "mode") {
    c.mode = parse_mode(value);
  } else if (key == "seed") {
    c.seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "trials") {
    c.trials = parse_number<std::uint64_t>(key, value);
  } else if (key == "workers") {
    c.workers = parse_number<unsigned>(key, value);
  } else if (key == "out") {
    c.out_dir = std::string(trim(value));
  } else if (key == "n") {
    c.n_values = parse_list<std::int64_t>(key, value);
  } else if (key == "A") {
    c.A_values = parse_list<double>(key, value);
  } else if (key == "lambda") {
    c.lambda_values = parse_list<double>(key, value);
  } else if (key == "x_n") {
    c.x_n = parse_number<double>(key, value);
  } else if (key == "M") {
    c.M = parse_number<double>(key, value);
  } else if (key == "max_n") {
    c.ballot_max_n = parse_number<int>(key, value);
  } else if (key == "denominator") {
    c.ballot_denominator = parse_number<int>(key, value);
  } else {
    throw DomainError("unknown config key '" + std::string(key) + "'");
  }
}

ExperimentConfig load_config_file(const fs::path& path, ExperimentConfig base) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(path.string(), tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw IoError("config " + path.string() + ": " + e.message() + " (line " +
                  std::to_string(e.line()) + ")");
  }
  static const std::map<std::string, std::vector<std::string>> kSections{
      {"experiment", {"mode", "seed", "trials", "workers", "out"}},
      {"grid", {"n", "A", "lambda"}},
      {"brownian", {"x_n", "M"}},
      {"ballot", {"max_n", "denominator"}},
  };
  for (const auto& [section, entries] : tree) {
    const auto it = kSections.find(section);
    if (it == kSections.end() || entries.empty()) {
      throw DomainError("config " + path.string() + ": unknown section [" + section + "]");
    }
    for (const auto& [key, node] : entries) {
      if (std::find(it->second.begin(), it->second.end(), key) == it->second.end()) {
        throw DomainError("config " + path.string() + ": key '" + key + "' not allowed in [" +
                          section + "]");
      }
      set_config_key(base, key, node.get_value<std::string>());
    }
  }
  return base;
}

void apply_environment(ExperimentConfig& config) {
  const char* out = std::getenv(kOutputEnv);
  if (out != nullptr && *out != '\0') config.out_dir = out;
}

std::uint64_t cell_seed(std::uint64_t master, const Cell& cell, Mode mode) {
  std::uint64_t h = mix64(master);
  h = derive_seed(h, static_cast<std::uint64_t>(cell.n));
  h = derive_seed(h, double_bits(cell.A));
  h = derive_seed(h, double_bits(cell.lambda));
  return derive_seed(h, static_cast<std::uint64_t>(mode));
}

std::int64_t tail_threshold(const graph::CriticalParams& params) {
  const long double n = static_cast<long double>(params.n);
  const long double x = static_cast<long double>(params.A) * std::cbrt(n) * std::cbrt(n);
  return std::min<std::int64_t>(params.n, static_cast<std::int64_t>(std::floor(x)));
}

nlohmann::json ComparisonRow::to_json() const {
  auto opt = [](const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
  return {{"cell", cell_json(cell)},
          {"k", k},
          {"empirical", critgraph::to_json(empirical)},
          {"envelope", envelope.to_json()},
          {"ratio_a", opt(ratio_a)},
          {"ratio_b", opt(ratio_b)}};
}

ComparisonRow make_comparison_row(const graph::CriticalParams& params, const TailEstimate& tail) {
  ComparisonRow row;
  row.cell = {params.n, params.A, params.lambda};
  row.k = tail.threshold;
  row.empirical = tail;
  row.envelope = bounds::envelope(params);
  if (row.envelope.value_a > 1e-300) row.ratio_a = tail.estimate / row.envelope.value_a;
  if (row.envelope.value_b > 1e-300) row.ratio_b = tail.estimate / row.envelope.value_b;
  return row;
}

nlohmann::json FittedConstants::to_json() const {
  return {{"c_hat_a", c_hat_a}, {"c_hat_b", c_hat_b}, {"dispersion", dispersion},
          {"groups", groups}};
}

FittedConstants fit_constants(const std::vector<ComparisonRow>& rows) {
  std::vector<const ComparisonRow*> usable;
  for (const auto& r : rows) {
    if (r.empirical.estimate > 0.0 && r.ratio_a && r.ratio_b) usable.push_back(&r);
  }
  if (usable.size() < 2) {
    throw DomainError("fitting constants needs at least two rows with nonzero estimates");
  }
  FittedConstants f;
  double la = 0.0;
  double lb = 0.0;
  for (const auto* r : usable) {
    la += std::log(*r->ratio_a);
    lb += std::log(*r->ratio_b);
  }
  f.c_hat_a = std::exp(la / static_cast<double>(usable.size()));
  f.c_hat_b = std::exp(lb / static_cast<double>(usable.size()));

  std::map<std::pair<double, double>, std::vector<const ComparisonRow*>> groups;
  for (const auto* r : usable) groups[{r->cell.A, r->cell.lambda}].push_back(r);
  for (const auto& [key, members] : groups) {
    double lo = *members.front()->ratio_b;
    double hi = lo;
    for (const auto* r : members) {
      lo = std::min(lo, *r->ratio_b);
      hi = std::max(hi, *r->ratio_b);
    }
    const double d = hi / lo;
    if (members.size() >= 2) f.dispersion = std::max(f.dispersion, d);
    f.groups.push_back({{"A", key.first},
                        {"lambda", key.second},
                        {"rows", members.size()},
                        {"ratio_b_min", lo},
                        {"ratio_b_max", hi},
                        {"dispersion", d}});
  }
  return f;
}

std::string plotdata_csv(const std::vector<ComparisonRow>& rows) {
  std::string csv = "n,A,lambda,log_empirical,log_envelope_a,log_envelope_b\n";
  for (const auto& r : rows) {
    const double le = r.empirical.estimate > 0.0 ? std::log(r.empirical.estimate)
                                                 : -std::numeric_limits<double>::infinity();
    const double la = std::log(r.envelope.prefactor_a) + r.envelope.exponent;
    const double lb = std::log(r.envelope.prefactor_b) + r.envelope.exponent;
    csv += std::to_string(r.cell.n) + "," + num6(r.cell.A) + "," + num6(r.cell.lambda) + "," +
           num6(le) + "," + num6(la) + "," + num6(lb) + "\n";
  }
  return csv;
}

void emit_plotdata(const std::vector<ComparisonRow>& rows, const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << plotdata_csv(rows);
  if (!out) throw IoError("write to " + path.string() + " failed");
}

nlohmann::json RunSummary::to_json() const {
  nlohmann::json failed = nlohmann::json::array();
  for (const auto& f : failures) failed.push_back({{"lemma", f.lemma}, {"violations", f.violations}});
  return {{"exit_code", exit_code}, {"files", files}, {"failures", failed}, {"results", results}};
}

RunSummary run_experiment(const ExperimentConfig& config) {
  config.validate();
  const fs::path out(config.out_dir);
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) throw IoError("cannot create output directory " + out.string() + ": " + ec.message());

  RunSummary summary;
  switch (config.mode) {
    case Mode::kComponentTail:
    case Mode::kCmaxTail:
      run_tails(config, out, summary);
      break;
    case Mode::kEnvelope:
      run_envelope(config, out, summary);
      break;
    case Mode::kBrownianSweep:
      run_brownian(config, out, summary);
      break;
    case Mode::kLemmaAudit:
      run_lemma_audit(config, out, summary);
      break;
    case Mode::kBallotAudit:
      run_ballot_audit(config, out, summary);
      break;
  }
  nlohmann::json manifest = nlohmann::json::array();
  for (const auto& f : summary.failures) manifest.push_back(f.to_json());
  write_file(out / "failures.json", dump(manifest), summary);
  write_file(out / "metadata.json",
             dump({{"config", config.to_json()}, {"timestamp", utc_timestamp()}}), summary);
  summary.exit_code = summary.failures.empty() ? 0 : 1;
  return summary;
}

}  // namespace critgraph::harness
