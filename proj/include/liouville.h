/* Copyright 2026 The Liouville Lab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the liouville shared library.
 *
 * All entry points are exception-free.  Calls that fail return NULL (or a
 * negative code) and leave a message in liouville_last_error(), which is
 * thread-local and valid until the next failing call on the same thread.
 * A refusal to synthesize is not a failure: it produces a result whose
 * exit code is LIOUVILLE_EXIT_REFUSAL and whose message explains why.
 */

#ifndef LIOUVILLE_H_
#define LIOUVILLE_H_

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

enum {
  LIOUVILLE_EXIT_SATISFIES = 0,
  LIOUVILLE_EXIT_OK = 0,
  LIOUVILLE_EXIT_VERIFY_FAIL = 1,
  LIOUVILLE_EXIT_USAGE = 2,
  LIOUVILLE_EXIT_ARTIFACT_BAD = 3,
  LIOUVILLE_EXIT_FAILS = 10,
  LIOUVILLE_EXIT_REFUSAL = 11,
  LIOUVILLE_EXIT_INCONCLUSIVE = 20
};

typedef struct liouville_options {
  double tol;    /* verification tolerance, > 0 */
  uint64_t seed; /* deterministic seed for randomized checks */
  int grid;      /* export points per dimension, >= 2 */
  double rmax;   /* export box half-width, > 0 */
  int dim;       /* ambient dimension, 1..3 */
} liouville_options;

/* Opaque result of a classify / synthesize / verify run. */
typedef struct liouville_result liouville_result;

const char* liouville_version(void);
const char* liouville_last_error(void);

/* Fill opts with the library defaults. */
void liouville_options_init(liouville_options* opts);

/* Classify the growth function given as a JSON descriptor string.  The
 * result's JSON document carries the verdict, route, and certificates; the
 * exit code is LIOUVILLE_EXIT_SATISFIES, LIOUVILLE_EXIT_FAILS, or
 * LIOUVILLE_EXIT_INCONCLUSIVE. */
liouville_result* liouville_classify(const char* descriptor_json,
                                     const liouville_options* opts);

/* Classify, then (only if the property fails) build the counterexample
 * fields and write fields.csv, profile.csv, and manifest.json into out_dir.
 * The result's JSON document is the manifest. */
liouville_result* liouville_synthesize(const char* descriptor_json,
                                       const liouville_options* opts,
                                       const char* out_dir);

/* Re-check artifacts previously written to out_dir.  checks_csv selects a
 * comma-separated subset of {flux, weak_residual, energy, caccioppoli,
 * nonconstancy}; NULL or "" runs all of them.  The result's JSON document
 * is the verification report. */
liouville_result* liouville_verify(const char* out_dir,
                                   const liouville_options* opts,
                                   const char* checks_csv);

/* Accessors; each requires a non-NULL result from a successful call. */
int liouville_result_exit_code(const liouville_result* result);
const char* liouville_result_json(const liouville_result* result);
const char* liouville_result_message(const liouville_result* result);

void liouville_result_free(liouville_result* result);

#ifdef __cplusplus
}
#endif

#endif /* LIOUVILLE_H_ */
