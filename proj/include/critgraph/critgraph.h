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

/* C interface to the critgraph library.
 *
 * Functions return a cg_status; on failure the message is available from
 * cg_last_error() on the calling thread until the next failing call.
 *
 * JSON outputs are written into caller buffers. *needed always receives the
 * byte count including the terminating NUL; if capacity is smaller the
 * buffer is left untouched and CG_ERR_BUFFER is returned. */
#ifndef CRITGRAPH_CRITGRAPH_H_
#define CRITGRAPH_CRITGRAPH_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(CRITGRAPH_BUILDING)
#define CG_API __declspec(dllexport)
#else
#define CG_API __declspec(dllimport)
#endif
#else
#define CG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cg_status {
  CG_OK = 0,
  CG_ERR_DOMAIN = 1,
  CG_ERR_RESOURCE = 2,
  CG_ERR_IO = 3,
  CG_ERR_CONVERGENCE = 4,
  CG_ERR_BUFFER = 5,
  CG_ERR_NULL = 6,
  CG_ERR_INTERNAL = 7
} cg_status;

typedef struct cg_params cg_params;
typedef struct cg_step_dist cg_step_dist;
typedef struct cg_config cg_config;
typedef struct cg_summary cg_summary;

CG_API const char* cg_version(void);
CG_API const char* cg_status_name(cg_status status);
CG_API const char* cg_last_error(void);

/* Critical-window parameters p = 1/n + lambda n^{-4/3}. */
CG_API cg_status cg_params_create(int64_t n, double A, double lambda, cg_params** out);
CG_API void cg_params_destroy(cg_params* params);
CG_API cg_status cg_params_p(const cg_params* params, double* p);
CG_API cg_status cg_params_json(const cg_params* params, char* buf, size_t capacity,
                                size_t* needed);

CG_API cg_status cg_envelope(const cg_params* params, double* exponent, double* value_a,
                             double* value_b);
CG_API cg_status cg_envelope_json(const cg_params* params, char* buf, size_t capacity,
                                  size_t* needed);

/* Monte Carlo tails P(|C(v)| >= k) and P(|C_max| > k). */
CG_API cg_status cg_tail_component(const cg_params* params, int64_t k, uint64_t trials,
                                   uint64_t seed, unsigned workers, char* buf,
                                   size_t capacity, size_t* needed);
CG_API cg_status cg_tail_cmax(const cg_params* params, int64_t k, uint64_t trials,
                              uint64_t seed, unsigned workers, char* buf, size_t capacity,
                              size_t* needed);

/* P(Bin(N, p) >= k). */
CG_API cg_status cg_binomial_tail(int64_t N, double p, int64_t k, double* value,
                                  double* log_value);

CG_API cg_status cg_pn_lower_bound(const cg_params* params, double x_n, double M, char* buf,
                                   size_t capacity, size_t* needed);

/* Step law from JSON {"support": [...], "probabilities": ["1/3", ...]}. */
CG_API cg_status cg_step_dist_from_json(const char* json, cg_step_dist** out);
CG_API void cg_step_dist_destroy(cg_step_dist* dist);
CG_API cg_status cg_ballot_check(const cg_step_dist* dist, int n, int64_t j, int* holds,
                                 char* buf, size_t capacity, size_t* needed);

CG_API cg_status cg_config_create(cg_config** out);
CG_API void cg_config_destroy(cg_config* config);
CG_API cg_status cg_config_load_file(cg_config* config, const char* path);
CG_API cg_status cg_config_apply_env(cg_config* config);
CG_API cg_status cg_config_set(cg_config* config, const char* key, const char* value);
CG_API cg_status cg_config_json(const cg_config* config, char* buf, size_t capacity,
                                size_t* needed);

/* Runs the configured mode and hands back the run summary. */
CG_API cg_status cg_run_experiment(const cg_config* config, cg_summary** out);
CG_API void cg_summary_destroy(cg_summary* summary);
/* 0 iff every exact invariant held. */
CG_API int cg_summary_exit_code(const cg_summary* summary);
CG_API cg_status cg_summary_json(const cg_summary* summary, char* buf, size_t capacity,
                                 size_t* needed);

#ifdef __cplusplus
}
#endif

#endif /* CRITGRAPH_CRITGRAPH_H_ */
