// Copyright 2026 The Covernet Authors.
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

/* Public C interface of the covernet shared library.
 *
 * Objects are opaque handles released with their matching *_free function.
 * Every fallible call returns a covernet_status; on failure the message is
 * available from covernet_last_error() on the calling thread until the next
 * failing call. Strings returned through char** belong to the caller and are
 * released with covernet_string_free().
 */
#ifndef COVERNET_COVERNET_H_
#define COVERNET_COVERNET_H_

#include <stddef.h>
#include <stdint.h>

#if defined(COVERNET_BUILDING_LIBRARY)
#define COVERNET_API __attribute__((visibility("default")))
#else
#define COVERNET_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum covernet_status {
  COVERNET_OK = 0,
  COVERNET_ERR_INVALID_INPUT = 1,
  COVERNET_ERR_IO = 2,
  COVERNET_ERR_PARSE = 3,
  COVERNET_ERR_INSUFFICIENT_DATA = 4,
  COVERNET_ERR_INTERNAL = 5
} covernet_status;

typedef enum covernet_objective {
  COVERNET_OBJECTIVE_F = 0,
  COVERNET_OBJECTIVE_MAP = 1
} covernet_objective;

typedef enum covernet_prototype_method {
  COVERNET_PROTOTYPE_CLOSENESS = 0,
  COVERNET_PROTOTYPE_MST = 1
} covernet_prototype_method;

typedef struct covernet_settings covernet_settings;
typedef struct covernet_dataset covernet_dataset;
typedef struct covernet_partition covernet_partition;

typedef struct covernet_eval_result {
  double mean_precision;
  double mean_recall;
  double f;
  double map;           /* refined matrix */
  double original_map;  /* symmetrized input matrix */
  double delta;         /* percent */
} covernet_eval_result;

COVERNET_API const char* covernet_version(void);
COVERNET_API const char* covernet_last_error(void);
COVERNET_API void covernet_string_free(char* s);

/* Run settings: flat key=value pairs shared by all commands. */
COVERNET_API covernet_status covernet_settings_new(covernet_settings** out);
COVERNET_API void covernet_settings_free(covernet_settings* s);
COVERNET_API covernet_status covernet_settings_set(covernet_settings* s,
                                                   const char* key,
                                                   const char* value);
COVERNET_API covernet_status covernet_settings_load_config(covernet_settings* s,
                                                           const char* path);
/* Per-algorithm parameters from a grid-best CSV written by covernet_run_grid. */
COVERNET_API covernet_status covernet_settings_load_grid_best(
    covernet_settings* s, const char* path, covernet_objective objective);

/* Datasets: an asymmetric dissimilarity matrix with ground truth. */
COVERNET_API covernet_status covernet_dataset_create(
    size_t n, const double* weights, const double* durations,
    const int* group_of, const unsigned char* is_original,
    covernet_dataset** out);
COVERNET_API covernet_status covernet_dataset_from_qmax(
    size_t n, const double* qmax, const double* durations,
    covernet_dataset** out);
COVERNET_API covernet_status covernet_dataset_generate(
    const covernet_settings* s, int n_groups, uint64_t seed,
    covernet_dataset** out);
COVERNET_API covernet_status covernet_dataset_load(const char* matrix_path,
                                                   const char* durations_path,
                                                   const char* labels_path,
                                                   covernet_dataset** out);
COVERNET_API covernet_status covernet_dataset_save(const covernet_dataset* d,
                                                   const char* matrix_path,
                                                   const char* durations_path,
                                                   const char* labels_path);
COVERNET_API covernet_status covernet_dataset_sample(const covernet_dataset* d,
                                                     const char* setup,
                                                     uint64_t seed, int trial,
                                                     covernet_dataset** out);
COVERNET_API void covernet_dataset_free(covernet_dataset* d);
COVERNET_API size_t covernet_dataset_size(const covernet_dataset* d);
COVERNET_API covernet_status covernet_dataset_weight(const covernet_dataset* d,
                                                     size_t i, size_t j,
                                                     double* out);
COVERNET_API covernet_status covernet_dataset_truth(const covernet_dataset* d,
                                                    covernet_partition** out);

/* Community detection on the symmetrized matrix. */
COVERNET_API covernet_status covernet_detect(const covernet_dataset* d,
                                             const covernet_settings* s,
                                             const char* algorithm,
                                             covernet_partition** out);
COVERNET_API void covernet_partition_free(covernet_partition* p);
COVERNET_API size_t covernet_partition_size(const covernet_partition* p);
COVERNET_API size_t covernet_partition_group_count(const covernet_partition* p);
COVERNET_API covernet_status covernet_partition_assignment(
    const covernet_partition* p, int* out, size_t capacity);

COVERNET_API covernet_status covernet_evaluate(const covernet_dataset* d,
                                               const covernet_partition* p,
                                               double c,
                                               covernet_eval_result* out);

/* Prototype of the community formed by `members` (dataset item ids). */
COVERNET_API covernet_status covernet_prototype(const covernet_dataset* d,
                                                const int* members,
                                                size_t count,
                                                covernet_prototype_method method,
                                                int* out);

/* Whole commands. Input comes from the matrix/durations/labels settings when
 * set, otherwise from the generator. */
COVERNET_API covernet_status covernet_run_sweep(const covernet_settings* s,
                                                char** csv);
COVERNET_API covernet_status covernet_run_detect_eval(const covernet_settings* s,
                                                      char** csv,
                                                      char** timing);
COVERNET_API covernet_status covernet_run_grid(const covernet_settings* s,
                                               char** grid_csv,
                                               char** best_csv);
COVERNET_API covernet_status covernet_run_prototype(const covernet_settings* s,
                                                    char** csv);
/* Writes matrix.txt, durations.txt and labels.txt under out_dir. */
COVERNET_API covernet_status covernet_run_generate(const covernet_settings* s,
                                                   const char* out_dir);

#ifdef __cplusplus
}  /* extern "C" */
#endif

#endif  /* COVERNET_COVERNET_H_ */
