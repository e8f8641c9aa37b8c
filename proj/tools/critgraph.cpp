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

// Command-line front end. Settings are applied in this order, later ones
// winning: built-in defaults, --config file, CRITGRAPH_OUT, command-line flags.
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "critgraph/critgraph.h"

namespace {

struct Options {
  std::string config;
  std::map<std::string, std::string> overrides;
};

int report_error(cg_status status) {
  std::fprintf(stderr, "critgraph: %s: %s\n", cg_status_name(status), cg_last_error());
  return 2;
}

void add_override(CLI::App* cmd, Options& opts, const std::string& flag, const std::string& key,
                  const std::string& help) {
  cmd->add_option_function<std::string>(
      flag, [&opts, key](const std::string& v) { opts.overrides[key] = v; }, help);
}

int run(const std::string& mode, const Options& opts) {
  cg_config* cfg = nullptr;
  if (auto s = cg_config_create(&cfg); s != CG_OK) return report_error(s);
  auto check = [&](cg_status s) {
    if (s != CG_OK) {
      const int code = report_error(s);
      cg_config_destroy(cfg);
      return code;
    }
    return 0;
  };
  if (int c = check(cg_config_set(cfg, "mode", mode.c_str()))) return c;
  if (!opts.config.empty()) {
    if (int c = check(cg_config_load_file(cfg, opts.config.c_str()))) return c;
    // the subcommand fixes the mode even if the file names another one
    if (int c = check(cg_config_set(cfg, "mode", mode.c_str()))) return c;
  }
  if (int c = check(cg_config_apply_env(cfg))) return c;
  for (const auto& [key, value] : opts.overrides) {
    if (int c = check(cg_config_set(cfg, key.c_str(), value.c_str()))) return c;
  }
  cg_summary* summary = nullptr;
  if (int c = check(cg_run_experiment(cfg, &summary))) return c;
  cg_config_destroy(cfg);
  size_t needed = 0;
  cg_summary_json(summary, nullptr, 0, &needed);
  std::vector<char> buf(needed);
  if (auto s = cg_summary_json(summary, buf.data(), buf.size(), &needed); s != CG_OK) {
    cg_summary_destroy(summary);
    return report_error(s);
  }
  std::printf("%s\n", buf.data());
  const int exit_code = cg_summary_exit_code(summary);
  cg_summary_destroy(summary);
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Critical random graph experiments and lemma audits"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(cg_version()));

  const std::vector<std::pair<std::string, std::string>> commands{
      {"audit-ballot", "ballot_audit"},  {"audit-couplings", "lemma_audit"},
      {"tail", "component_tail"},        {"cmax", "cmax_tail"},
      {"brownian", "brownian_sweep"},    {"report", "envelope"},
  };
  const std::map<std::string, std::string> help{
      {"audit-ballot", "Exhaustive exact checks of the ballot inequalities"},
      {"audit-couplings", "Coupling, padding, rearrangement and tilting audits"},
      {"tail", "Monte Carlo tail of the component of a fixed vertex"},
      {"cmax", "Monte Carlo tail of the largest component"},
      {"brownian", "Stay-above-curve lower bound sweep"},
      {"report", "Envelope table over the grid"},
  };

  std::map<std::string, Options> options;
  std::string selected;
  for (const auto& [name, mode] : commands) {
    auto& opts = options[name];
    auto* cmd = app.add_subcommand(name, help.at(name));
    cmd->add_option("--config", opts.config, "INI file with [experiment] [grid] [brownian] [ballot]")
        ->check(CLI::ExistingFile);
    add_override(cmd, opts, "--seed", "seed", "Master seed");
    add_override(cmd, opts, "--trials", "trials", "Trials or samples per cell");
    add_override(cmd, opts, "--workers", "workers", "Worker threads");
    add_override(cmd, opts, "--out", "out", "Output directory");
    add_override(cmd, opts, "--n", "n", "Comma-separated vertex counts");
    add_override(cmd, opts, "--A", "A", "Comma-separated A values");
    add_override(cmd, opts, "--lambda", "lambda", "Comma-separated lambda values");
    if (mode == "brownian_sweep") {
      add_override(cmd, opts, "--x-n", "x_n", "Barrier offset");
      add_override(cmd, opts, "--M", "M", "Coefficient of log T in the barrier");
    }
    if (mode == "ballot_audit") {
      add_override(cmd, opts, "--max-n", "max_n", "Largest walk length");
      add_override(cmd, opts, "--denominator", "denominator", "Probability grid denominator");
    }
    cmd->callback([&selected, name = name] { selected = name; });
  }

  CLI11_PARSE(app, argc, argv);
  for (const auto& [name, mode] : commands) {
    if (name == selected) return run(mode, options[name]);
  }
  return 2;
}
