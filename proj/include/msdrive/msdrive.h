/*
 * Copyright 2026 The msdrive Authors
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

/* C interface to the msdrive scenario runner. All functions return an
 * msd_status; on failure msd_last_error() describes the problem for the
 * calling thread. Strings returned through out-parameters are owned by the
 * handle they came from and stay valid until that handle is freed. */

#ifndef MSDRIVE_MSDRIVE_H
#define MSDRIVE_MSDRIVE_H

#include <stddef.h>

#if defined(MSDRIVE_BUILDING_LIBRARY)
#define MSD_API __attribute__((visibility("default")))
#else
#define MSD_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum msd_status {
    MSD_OK = 0,
    MSD_ERR_INVALID_ARGUMENT = 1,
    MSD_ERR_CONFIG = 2,
    MSD_ERR_IO = 3,
    MSD_ERR_NUMERICS = 4, /* degenerate control, spectrum or step size */
    MSD_ERR_PROPAGATION = 5,
    MSD_ERR_INTERNAL = 99
} msd_status;

typedef struct msd_config msd_config;
typedef struct msd_result msd_result;

MSD_API const char* msd_version(void);
MSD_API const char* msd_last_error(void);
MSD_API const char* msd_status_name(msd_status status);

MSD_API size_t msd_scenario_count(void);
MSD_API msd_status msd_scenario_info(size_t index, const char** id, const char** description);

/* Config construction. Overrides ("a.b=value") are applied to the raw
 * document and validated on every call. */
MSD_API msd_status msd_config_from_scenario(const char* scenario_id, msd_config** out);
MSD_API msd_status msd_config_from_string(const char* json_text, msd_config** out);
MSD_API msd_status msd_config_from_file(const char* path, msd_config** out);
MSD_API msd_status msd_config_set(msd_config* cfg, const char* assignment);
MSD_API msd_status msd_config_json(const msd_config* cfg, const char** json_text);
MSD_API msd_status msd_config_has_sweep(const msd_config* cfg, int* has_sweep);
MSD_API void msd_config_free(msd_config* cfg);

/* Runs the scenario, or the sweep when the config has a sweep block. */
MSD_API msd_status msd_run(const msd_config* cfg, msd_result** out);

/* Trajectory table of a single run. For sweeps, `point` selects the sweep
 * value (ascending); single runs have exactly one point. */
MSD_API msd_status msd_result_point_count(const msd_result* res, size_t* count);
MSD_API msd_status msd_result_point_value(const msd_result* res, size_t point, double* value, double* fidelity);
MSD_API msd_status msd_result_rows(const msd_result* res, size_t point, size_t* rows);
MSD_API msd_status msd_result_columns(const msd_result* res, size_t point, size_t* columns);
MSD_API msd_status msd_result_column_name(const msd_result* res, size_t point, size_t column, const char** name);
MSD_API msd_status msd_result_value(const msd_result* res, size_t point, size_t row, size_t column, double* value);
MSD_API msd_status msd_result_summary_json(const msd_result* res, const char** json_text);

/* Writes all output files into `dir`. NULL or "" resolves to
 * $MSDRIVE_OUT_DIR, then the config's output.dir, then ".". */
MSD_API msd_status msd_result_write(const msd_result* res, const char* dir);
MSD_API void msd_result_free(msd_result* res);

#ifdef __cplusplus
}
#endif

#endif /* MSDRIVE_MSDRIVE_H */
