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

#include "critgraph/critgraph.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "critgraph/ballot.hpp"
#include "critgraph/bounds.hpp"
#include "critgraph/brownian.hpp"
#include "critgraph/errors.hpp"
#include "critgraph/graph.hpp"
#include "critgraph/harness.hpp"
#include "critgraph/stats.hpp"

struct cg_params {
  critgraph::graph::CriticalParams value;
};

struct cg_step_dist {
  critgraph::ballot::StepDistribution value;
};

struct cg_config {
  critgraph::harness::ExperimentConfig value;
};

struct cg_summary {
  critgraph::harness::RunSummary value;
};

namespace {

thread_local std::string g_last_error;

cg_status fail(cg_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <class F>
cg_status guarded(F&& body) {
  try {
    return body();
  } catch (const critgraph::DomainError& e) {
    return fail(CG_ERR_DOMAIN, e.what());
  } catch (const critgraph::ResourceError& e) {
    return fail(CG_ERR_RESOURCE, e.what());
  } catch (const critgraph::IoError& e) {
    return fail(CG_ERR_IO, e.what());
  } catch (const critgraph::ConvergenceError& e) {
    return fail(CG_ERR_CONVERGENCE, e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(CG_ERR_DOMAIN, e.what());
  } catch (const std::bad_alloc&) {
    return fail(CG_ERR_RESOURCE, "out of memory");
  } catch (const std::exception& e) {
    return fail(CG_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(CG_ERR_INTERNAL, "unknown exception");
  }
}

cg_status emit(const std::string& text, char* buf, size_t capacity, size_t* needed) {
  if (needed == nullptr) return fail(CG_ERR_NULL, "needed must not be null");
  *needed = text.size() + 1;
  if (buf == nullptr || capacity < text.size() + 1) {
    return fail(CG_ERR_BUFFER, "buffer holds " + std::to_string(capacity) + " bytes, " +
                                   std::to_string(text.size() + 1) + " needed");
  }
  std::memcpy(buf, text.c_str(), text.size() + 1);
  return CG_OK;
}

cg_status null_arg(const char* name) {
  return fail(CG_ERR_NULL, std::string(name) + " must not be null");
}

}  // namespace

extern "C" {

const char* cg_version(void) { return "0.1.0"; }

const char* cg_status_name(cg_status status) {
  switch (status) {
    case CG_OK: return "ok";
    case CG_ERR_DOMAIN: return "domain_error";
    case CG_ERR_RESOURCE: return "resource_error";
    case CG_ERR_IO: return "io_error";
    case CG_ERR_CONVERGENCE: return "convergence_error";
    case CG_ERR_BUFFER: return "buffer_too_small";
    case CG_ERR_NULL: return "null_argument";
    case CG_ERR_INTERNAL: return "internal_error";
  }
  return "unknown";
}

const char* cg_last_error(void) { return g_last_error.c_str(); }

cg_status cg_params_create(int64_t n, double A, double lambda, cg_params** out) {
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    *out = new cg_params{critgraph::graph::CriticalParams::make(n, A, lambda)};
    return CG_OK;
  });
}

void cg_params_destroy(cg_params* params) { delete params; }

cg_status cg_params_p(const cg_params* params, double* p) {
  if (params == nullptr) return null_arg("params");
  if (p == nullptr) return null_arg("p");
  *p = params->value.p;
  return CG_OK;
}

cg_status cg_params_json(const cg_params* params, char* buf, size_t capacity, size_t* needed) {
  if (params == nullptr) return null_arg("params");
  return guarded([&] { return emit(params->value.to_json().dump(), buf, capacity, needed); });
}

cg_status cg_envelope(const cg_params* params, double* exponent, double* value_a,
                      double* value_b) {
  if (params == nullptr) return null_arg("params");
  return guarded([&] {
    const auto e = critgraph::bounds::envelope(params->value);
    if (exponent != nullptr) *exponent = e.exponent;
    if (value_a != nullptr) *value_a = e.value_a;
    if (value_b != nullptr) *value_b = e.value_b;
    return CG_OK;
  });
}

cg_status cg_envelope_json(const cg_params* params, char* buf, size_t capacity, size_t* needed) {
  if (params == nullptr) return null_arg("params");
  return guarded([&] {
    return emit(critgraph::bounds::envelope(params->value).to_json().dump(), buf, capacity,
                needed);
  });
}

cg_status cg_tail_component(const cg_params* params, int64_t k, uint64_t trials, uint64_t seed,
                            unsigned workers, char* buf, size_t capacity, size_t* needed) {
  if (params == nullptr) return null_arg("params");
  return guarded([&] {
    const auto t = critgraph::graph::tail_component(params->value, k, trials, seed, workers);
    return emit(critgraph::to_json(t).dump(), buf, capacity, needed);
  });
}

cg_status cg_tail_cmax(const cg_params* params, int64_t k, uint64_t trials, uint64_t seed,
                       unsigned workers, char* buf, size_t capacity, size_t* needed) {
  if (params == nullptr) return null_arg("params");
  return guarded([&] {
    const auto t = critgraph::graph::tail_cmax(params->value, k, trials, seed, workers);
    return emit(critgraph::to_json(t).dump(), buf, capacity, needed);
  });
}

cg_status cg_binomial_tail(int64_t N, double p, int64_t k, double* value, double* log_value) {
  return guarded([&] {
    const auto t = critgraph::bounds::binomial_tail_exact(N, p, k);
    if (value != nullptr) *value = t.value;
    if (log_value != nullptr) *log_value = t.log_value;
    return CG_OK;
  });
}

cg_status cg_pn_lower_bound(const cg_params* params, double x_n, double M, char* buf,
                            size_t capacity, size_t* needed) {
  if (params == nullptr) return null_arg("params");
  return guarded([&] {
    return emit(critgraph::brownian::pn_lower_bound(params->value, x_n, M).to_json().dump(), buf,
                capacity, needed);
  });
}

cg_status cg_step_dist_from_json(const char* json, cg_step_dist** out) {
  if (json == nullptr) return null_arg("json");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    const auto parsed = nlohmann::json::parse(json);
    *out = new cg_step_dist{critgraph::ballot::StepDistribution::from_json(parsed)};
    return CG_OK;
  });
}

void cg_step_dist_destroy(cg_step_dist* dist) { delete dist; }

cg_status cg_ballot_check(const cg_step_dist* dist, int n, int64_t j, int* holds, char* buf,
                          size_t capacity, size_t* needed) {
  if (dist == nullptr) return null_arg("dist");
  return guarded([&] {
    const auto r = critgraph::ballot::check_ballot_inequality(dist->value, n, j);
    if (holds != nullptr) *holds = r.holds ? 1 : 0;
    if (needed == nullptr && buf == nullptr) return CG_OK;
    return emit(r.to_json().dump(), buf, capacity, needed);
  });
}

cg_status cg_config_create(cg_config** out) {
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    *out = new cg_config{};
    return CG_OK;
  });
}

void cg_config_destroy(cg_config* config) { delete config; }

cg_status cg_config_load_file(cg_config* config, const char* path) {
  if (config == nullptr) return null_arg("config");
  if (path == nullptr) return null_arg("path");
  return guarded([&] {
    config->value = critgraph::harness::load_config_file(path, config->value);
    return CG_OK;
  });
}

cg_status cg_config_apply_env(cg_config* config) {
  if (config == nullptr) return null_arg("config");
  return guarded([&] {
    critgraph::harness::apply_environment(config->value);
    return CG_OK;
  });
}

cg_status cg_config_set(cg_config* config, const char* key, const char* value) {
  if (config == nullptr) return null_arg("config");
  if (key == nullptr) return null_arg("key");
  if (value == nullptr) return null_arg("value");
  return guarded([&] {
    critgraph::harness::set_config_key(config->value, key, value);
    return CG_OK;
  });
}

cg_status cg_config_json(const cg_config* config, char* buf, size_t capacity, size_t* needed) {
  if (config == nullptr) return null_arg("config");
  return guarded([&] { return emit(config->value.to_json().dump(), buf, capacity, needed); });
}

cg_status cg_run_experiment(const cg_config* config, cg_summary** out) {
  if (config == nullptr) return null_arg("config");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    *out = new cg_summary{critgraph::harness::run_experiment(config->value)};
    return CG_OK;
  });
}

void cg_summary_destroy(cg_summary* summary) { delete summary; }

int cg_summary_exit_code(const cg_summary* summary) {
  return summary == nullptr ? -1 : summary->value.exit_code;
}

cg_status cg_summary_json(const cg_summary* summary, char* buf, size_t capacity,
                          size_t* needed) {
  if (summary == nullptr) return null_arg("summary");
  return guarded([&] { return emit(summary->value.to_json().dump(2), buf, capacity, needed); });
}

}  // extern "C"
