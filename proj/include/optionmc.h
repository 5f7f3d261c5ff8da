/*
 * Copyright 2026 the optionmc authors
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

/*
 * optionmc C API: Monte Carlo option pricing engine and heterogeneous
 * platform analysis behind a plain C surface.
 *
 * Conventions:
 *   - every function returns an omc_status; OMC_OK means success
 *   - on failure a human-readable message is written into the caller's
 *     error buffer (always NUL-terminated, possibly truncated)
 *   - objects behind opaque handles are immutable after creation and safe
 *     to share across threads; strings returned through `char**` are owned
 *     by the caller and released with omc_string_free()
 */

#ifndef OPTIONMC_H
#define OPTIONMC_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum omc_status {
  OMC_OK = 0,
  OMC_E_INVALID = 1,    /* violated precondition or bad argument */
  OMC_E_CONFIG = 2,     /* unknown task, bad strategy/objective/format, ... */
  OMC_E_PARSE = 3,      /* malformed task/data/workload/trace file */
  OMC_E_INFEASIBLE = 4, /* workload cannot be served by any platform */
  OMC_E_INTERNAL = 5
} omc_status;

const char* omc_status_name(omc_status status);
const char* omc_version(void);

/* ---- task catalogue ---------------------------------------------------- */

typedef struct omc_catalogue omc_catalogue;

omc_status omc_catalogue_open(const char* task_file, omc_catalogue** out, char* err,
                              size_t err_cap);
void omc_catalogue_close(omc_catalogue* catalogue);

int omc_catalogue_count(const omc_catalogue* catalogue);
/* Borrowed pointer, valid for the catalogue's lifetime; NULL if out of range. */
const char* omc_catalogue_name(const omc_catalogue* catalogue, int index);

/* ---- pricing runs ------------------------------------------------------ */

typedef struct omc_run_spec {
  const char* task;     /* designation from the catalogue */
  const char* strategy; /* "baseline" | "tp:P" | "pp:U" | "combined:P,U" */
  uint64_t seed;
  uint64_t paths;         /* 0 keeps the catalogue value */
  int32_t steps;          /* < 0 keeps the catalogue value (0 is legal) */
  const char* cost_file;  /* optional FLOP cost table, NULL for defaults */
  const char* power_trace; /* optional power trace covering the run, NULL for none */
} omc_run_spec;

typedef struct omc_run_result {
  double price;
  double std_error;
  double latency_seconds;
  uint64_t flops;
  double energy_joules; /* < 0 when no power trace was attached */
  uint64_t paths;
  uint32_t steps;
} omc_run_result;

omc_status omc_price(const omc_catalogue* catalogue, const omc_run_spec* spec,
                     omc_run_result* result, char* err, size_t err_cap);

/* ---- measured platform data ------------------------------------------- */

typedef struct omc_dataset omc_dataset;

/* Loads platforms.csv, latency.csv, energy.csv, resources.csv,
 * complexity.csv and flop_costs.txt from the directory. */
omc_status omc_dataset_open(const char* data_dir, omc_dataset** out, char* err, size_t err_cap);
void omc_dataset_close(omc_dataset* dataset);

/* Platform comparison report; format is "text", "json" or "csv". */
omc_status omc_analyze(const omc_dataset* dataset, const char* format, char** out, char* err,
                       size_t err_cap);

/* Partition plan for a workload file; objective NULL/"" keeps the file's
 * choice. split_devices >= 1 spreads each task over the top-ranked
 * platforms proportionally to throughput. */
omc_status omc_partition(const omc_dataset* dataset, const omc_catalogue* catalogue,
                         const char* workload_file, const char* objective,
                         unsigned split_devices, const char* format, char** out, char* err,
                         size_t err_cap);

void omc_string_free(char* text);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* OPTIONMC_H */
