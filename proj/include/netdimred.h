/* Copyright 2026 the netdimred authors
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

/* C interface to the netdimred shared library: dataset loading, dimension
 * reduction (pca / ica / ega / uva / none), and the benchmark harness.
 * All functions are thread-safe; handles must not be shared across threads
 * without external synchronization. Strings returned through char** are
 * heap-allocated and released with ndr_string_free. */

#ifndef NETDIMRED_H
#define NETDIMRED_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#ifndef NDR_API
#if defined(_WIN32)
#define NDR_API __declspec(dllexport)
#else
#define NDR_API __attribute__((visibility("default")))
#endif
#endif

typedef enum ndr_status {
  NDR_OK = 0,
  NDR_ERROR_INVALID_ARGUMENT = 1,
  NDR_ERROR_IO = 2,
  NDR_ERROR_PARSE = 3,
  NDR_ERROR_NUMERIC = 4,
  NDR_ERROR_INTERNAL = 5
} ndr_status;

typedef struct ndr_dataset ndr_dataset;
typedef struct ndr_reduction ndr_reduction;

NDR_API const char* ndr_version(void);
NDR_API const char* ndr_status_name(ndr_status status);

/* Message from the most recent failing call on the calling thread; empty
 * string when no failure happened yet. The pointer stays valid until the
 * next failing call on the same thread. */
NDR_API const char* ndr_last_error(void);

/* Loads a CSV (header row, comma-delimited, "" / "NA" missing). Rows with
 * missing cells, non-numeric columns, and constant columns are dropped.
 * target_column may be NULL or empty when no target is wanted. */
NDR_API ndr_status ndr_dataset_load_csv(const char* path, const char* target_column,
                                        ndr_dataset** out);
NDR_API void ndr_dataset_free(ndr_dataset* dataset);
NDR_API int ndr_dataset_rows(const ndr_dataset* dataset);
NDR_API int ndr_dataset_cols(const ndr_dataset* dataset);
NDR_API const char* ndr_dataset_column_name(const ndr_dataset* dataset, int column);
NDR_API int ndr_dataset_has_target(const ndr_dataset* dataset);
NDR_API const char* ndr_dataset_target_value(const ndr_dataset* dataset, int row);

/* Fits a reduction on the dataset's feature matrix and materializes the
 * score matrix. options_json keys: method ("none"|"pca"|"ica"|"ega"|"uva"),
 * seed, gamma, algorithm ("walktrap"|"louvain"), threshold, combine
 * ("sum"|"mean"), k, k_rule ("cumulative_variance"|"acceleration"),
 * variance_threshold. Missing keys take library defaults. */
NDR_API ndr_status ndr_reduce(const ndr_dataset* dataset, const char* options_json,
                              ndr_reduction** out);
NDR_API int ndr_reduction_rows(const ndr_reduction* reduction);
NDR_API int ndr_reduction_cols(const ndr_reduction* reduction);
NDR_API const char* ndr_reduction_column_name(const ndr_reduction* reduction, int column);

/* Copies the score matrix row-major into buffer (length rows * cols). */
NDR_API ndr_status ndr_reduction_copy_scores(const ndr_reduction* reduction, double* buffer,
                                             size_t buffer_length);

/* Method-specific artifacts as a JSON document: community membership for
 * ega, the variable reduction map for uva, loadings for pca/ica. */
NDR_API ndr_status ndr_reduction_metadata_json(const ndr_reduction* reduction, char** out);
NDR_API void ndr_reduction_free(ndr_reduction* reduction);

/* Runs one benchmark pipeline described by config_json and returns the
 * report as JSON. See the README for the config schema. */
NDR_API ndr_status ndr_bench_run(const char* config_json, char** report_json);

/* Runs a method sweep over one dataset; config_json carries either a
 * "pipelines" array or a base config plus a "methods" array, and an
 * optional "jobs" worker count. Output is independent of jobs. */
NDR_API ndr_status ndr_compare_run(const char* config_json, char** report_json);

/* Renders the summary table of a report JSON as CSV. */
NDR_API ndr_status ndr_report_summary_csv(const char* report_json, char** csv);

NDR_API void ndr_string_free(char* text);

#ifdef __cplusplus
}
#endif

#endif /* NETDIMRED_H */
