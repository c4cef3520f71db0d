/* Copyright 2026 The whframe Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *  http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface of libwhframe. Handles are opaque and owned by the caller;
 * release each with its _free function. Every call returns a whf_status;
 * on failure whf_last_error() describes the problem (per thread). */

#ifndef WHFRAME_WHFRAME_H_
#define WHFRAME_WHFRAME_H_

#include <stddef.h>

#if defined(_WIN32)
#  if defined(WHF_BUILDING_LIBRARY)
#    define WHF_API __declspec(dllexport)
#  else
#    define WHF_API __declspec(dllimport)
#  endif
#else
#  define WHF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum whf_status {
  WHF_OK = 0,
  WHF_ERR_INVALID_ARGUMENT = 1,
  WHF_ERR_GRID_MISMATCH = 2,
  WHF_ERR_NOT_GRID_MULTIPLE = 3,
  WHF_ERR_OUT_OF_RANGE = 4,
  WHF_ERR_CONFIG = 5,
  WHF_ERR_NOT_CONVERGED = 6,
  WHF_ERR_CERTIFICATE = 7,
  WHF_ERR_INTERNAL = 8
} whf_status;

typedef struct whf_grid whf_grid;
typedef struct whf_signal whf_signal;
typedef struct whf_system whf_system;
typedef struct whf_report whf_report;

WHF_API const char* whf_last_error(void);
WHF_API const char* whf_status_name(whf_status status);

/* Grid t_i = i * delta covering [t_min, t_max]. */
WHF_API whf_status whf_grid_create(double delta, double t_min, double t_max, whf_grid** out);
WHF_API whf_status whf_grid_size(const whf_grid* grid, size_t* out);
WHF_API void whf_grid_free(whf_grid* grid);

/* spec uses the window syntax, e.g. "gaussian:1" or "box:0,1*2". */
WHF_API whf_status whf_signal_from_spec(const whf_grid* grid, const char* spec,
                                        whf_signal** out);
/* im may be NULL for a real signal. n must equal the grid size. */
WHF_API whf_status whf_signal_from_samples(const whf_grid* grid, const double* re,
                                           const double* im, size_t n, whf_signal** out);
WHF_API whf_status whf_signal_samples(const whf_signal* f, double* re, double* im, size_t n);
WHF_API whf_status whf_signal_norm_sq(const whf_signal* f, double* out);
WHF_API whf_status whf_inner_product(const whf_signal* f, const whf_signal* h, double* re,
                                     double* im);
WHF_API void whf_signal_free(whf_signal* f);

/* a and b are rationals "p/q". The correlation table holds |k| <= k_max. */
WHF_API whf_status whf_system_create(const whf_signal* window, const char* a, const char* b,
                                     int k_max, whf_system** out);
WHF_API whf_status whf_coefficient_energy(const whf_system* sys, const whf_signal* f,
                                          double* out);
WHF_API whf_status whf_identity_rhs(const whf_system* sys, const whf_signal* f, double* f1,
                                    double* f2, double* total);
WHF_API whf_status whf_frame_operator_apply(const whf_system* sys, const whf_signal* f,
                                            whf_signal** out);
/* Fails with WHF_ERR_CERTIFICATE when the table cannot certify tol. */
WHF_API whf_status whf_walnut_apply(const whf_system* sys, const whf_signal* f, double tol,
                                    whf_signal** out);
/* has_epsilon is 0 when the CC margin is not certified. */
WHF_API whf_status whf_cc(const whf_system* sys, double* cc_sup, double* epsilon,
                          int* has_epsilon);
WHF_API void whf_system_free(whf_system* sys);

/* Runs verify, gk, diagnose, bounds, cc, or suite with a JSON config (NULL
 * or "" for defaults). Config problems return WHF_ERR_CONFIG. */
WHF_API whf_status whf_run_command(const char* command, const char* config_json,
                                   whf_report** out);
WHF_API int whf_report_exit_code(const whf_report* report);
WHF_API const char* whf_report_text(const whf_report* report);
WHF_API size_t whf_report_artifact_count(const whf_report* report);
WHF_API const char* whf_report_artifact_suffix(const whf_report* report, size_t i);
WHF_API const char* whf_report_artifact_text(const whf_report* report, size_t i);
WHF_API void whf_report_free(whf_report* report);

#ifdef __cplusplus
}
#endif

#endif /* WHFRAME_WHFRAME_H_ */
