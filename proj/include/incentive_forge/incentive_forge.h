// Copyright 2026 The incentive_forge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* C interface to the incentive_forge simulator and certificate toolkit.
 *
 * Objects are opaque and owned by the caller once returned. Every fallible
 * call returns an ifg_status; on failure ifg_last_error() describes the
 * problem for the calling thread until its next failing call. */

#ifndef INCENTIVE_FORGE_INCENTIVE_FORGE_H_
#define INCENTIVE_FORGE_INCENTIVE_FORGE_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(IFG_BUILDING_LIBRARY)
#define IFG_API __declspec(dllexport)
#else
#define IFG_API __declspec(dllimport)
#endif
#else
#define IFG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct ifg_experiment ifg_experiment;
typedef struct ifg_result ifg_result;

typedef enum ifg_status {
  IFG_OK = 0,
  IFG_ERR_CONFIG = 1,           /* parse, schema or invariant violation */
  IFG_ERR_NUMERIC = 2,          /* singular system, NaN/Inf, divergence */
  IFG_ERR_INVALID_ARGUMENT = 3, /* NULL handle, bad size, bad parameter */
  IFG_ERR_IO = 4,               /* output directory or file not writable */
  IFG_ERR_INTERNAL = 5
} ifg_status;

IFG_API const char* ifg_version(void);
IFG_API const char* ifg_status_string(ifg_status status);
IFG_API const char* ifg_last_error(void);

IFG_API ifg_status ifg_experiment_load_file(const char* path, ifg_experiment** out);
IFG_API ifg_status ifg_experiment_load_string(const char* json, ifg_experiment** out);
IFG_API void ifg_experiment_free(ifg_experiment* experiment);
IFG_API ifg_status ifg_experiment_set_seed(ifg_experiment* experiment, uint64_t seed);
/* Strategy and incentive dimensions of the configured game. */
IFG_API size_t ifg_experiment_strategy_dim(const ifg_experiment* experiment);
IFG_API size_t ifg_experiment_incentive_dim(const ifg_experiment* experiment);

/* Runs the coupled dynamics. Writes trajectory.csv and summary.json. */
IFG_API ifg_status ifg_simulate(const ifg_experiment* experiment, ifg_result** out);
/* Socially optimal fixed-point incentive. Writes fixed_point.json. */
IFG_API ifg_status ifg_fixed_point(const ifg_experiment* experiment, ifg_result** out);
/* Stability and uniqueness certificates. Writes certificate.json. */
IFG_API ifg_status ifg_certify(const ifg_experiment* experiment, ifg_result** out);
/* One simulation per value of a numeric config field. A NULL parameter uses
 * the document's sweep block; a NULL values pointer uses its value list
 * (pass any non-NULL pointer with count 0 for an empty sweep).
 * threads == 0 uses the hardware concurrency capped by
 * INCENTIVE_FORGE_THREADS. Writes sweep.csv. */
IFG_API ifg_status ifg_sweep(const ifg_experiment* experiment, const char* parameter,
                             const double* values, size_t count, unsigned threads,
                             ifg_result** out);

/* JSON summary; valid until the result is freed. */
IFG_API const char* ifg_result_summary(const ifg_result* result);
IFG_API size_t ifg_result_artifact_count(const ifg_result* result);
IFG_API const char* ifg_result_artifact_name(const ifg_result* result, size_t index);
IFG_API const char* ifg_result_artifact_content(const ifg_result* result, size_t index);
/* 1 if the run converged (simulate), the solver converged (fixed point),
 * convergence was certified (certify) or every run converged (sweep). */
IFG_API int ifg_result_converged(const ifg_result* result);
IFG_API size_t ifg_result_strategy_dim(const ifg_result* result);
IFG_API size_t ifg_result_incentive_dim(const ifg_result* result);
/* Copies the final strategy or incentive; len must equal its dimension. */
IFG_API ifg_status ifg_result_final_x(const ifg_result* result, double* out, size_t len);
IFG_API ifg_status ifg_result_final_p(const ifg_result* result, double* out, size_t len);
/* Writes every artifact into out_dir, creating it if needed. */
IFG_API ifg_status ifg_result_write(const ifg_result* result, const char* out_dir);
IFG_API void ifg_result_free(ifg_result* result);

#ifdef __cplusplus
}  /* extern "C" */
#endif

#endif  /* INCENTIVE_FORGE_INCENTIVE_FORGE_H_ */
