// Copyright 2026 The msdrive Authors
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

#include "msdrive/msdrive.h"

#include <fstream>
#include <sstream>
#include <string>
#include <variant>

#include "msdrive/error.hpp"
#include "msdrive/scenario.hpp"

struct msd_config {
    nlohmann::json doc;
    msd::ScenarioConfig resolved;
    std::string json_text;
};

struct msd_result {
    msd::ScenarioConfig cfg;
    std::variant<msd::RunResult, msd::SweepResult> data;
    std::string summary_text;
};

namespace {

thread_local std::string last_error;

msd_status status_for(msd::ErrorCode c) {
    switch (c) {
        case msd::ErrorCode::invalid_argument:
        case msd::ErrorCode::not_hermitian:
            return MSD_ERR_INVALID_ARGUMENT;
        case msd::ErrorCode::config:
            return MSD_ERR_CONFIG;
        case msd::ErrorCode::io:
            return MSD_ERR_IO;
        case msd::ErrorCode::degenerate_control:
        case msd::ErrorCode::degenerate_spectrum:
        case msd::ErrorCode::step_too_large:
            return MSD_ERR_NUMERICS;
        case msd::ErrorCode::propagation_failure:
            return MSD_ERR_PROPAGATION;
    }
    return MSD_ERR_INTERNAL;
}

msd_status fail(msd_status s, std::string message) {
    last_error = std::move(message);
    return s;
}

template <typename F>
msd_status guarded(F&& body) {
    try {
        last_error.clear();
        body();
        return MSD_OK;
    } catch (const msd::Error& e) {
        return fail(status_for(e.code()), e.what());
    } catch (const std::exception& e) {
        return fail(MSD_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(MSD_ERR_INTERNAL, "unknown error");
    }
}

msd_status make_config(nlohmann::json doc, msd_config** out) {
    msd::ScenarioConfig resolved = msd::load_config(doc);
    auto* c = new msd_config{std::move(doc), std::move(resolved), {}};
    c->json_text = msd::to_json(c->resolved).dump(2);
    *out = c;
    return MSD_OK;
}

const msd::TrajectoryTable* table_at(const msd_result* res, size_t point) {
    if (const auto* run = std::get_if<msd::RunResult>(&res->data)) {
        if (point != 0) throw msd::Error(msd::ErrorCode::invalid_argument, "point index out of range");
        return &run->table;
    }
    const auto& sweep = std::get<msd::SweepResult>(res->data);
    if (point >= sweep.points.size()) throw msd::Error(msd::ErrorCode::invalid_argument, "point index out of range");
    return &sweep.points[point].run.table;
}

#define MSD_REQUIRE(cond, what) \
    if (!(cond)) return fail(MSD_ERR_INVALID_ARGUMENT, what)

}  // namespace

extern "C" {

const char* msd_version(void) { return "0.1.0"; }

const char* msd_last_error(void) { return last_error.c_str(); }

const char* msd_status_name(msd_status status) {
    switch (status) {
        case MSD_OK: return "ok";
        case MSD_ERR_INVALID_ARGUMENT: return "invalid_argument";
        case MSD_ERR_CONFIG: return "config";
        case MSD_ERR_IO: return "io";
        case MSD_ERR_NUMERICS: return "numerics";
        case MSD_ERR_PROPAGATION: return "propagation";
        case MSD_ERR_INTERNAL: return "internal";
    }
    return "unknown";
}

size_t msd_scenario_count(void) { return msd::scenario_catalog().size(); }

msd_status msd_scenario_info(size_t index, const char** id, const char** description) {
    const auto& cat = msd::scenario_catalog();
    MSD_REQUIRE(index < cat.size(), "scenario index out of range");
    if (id) *id = cat[index].id.c_str();
    if (description) *description = cat[index].description.c_str();
    return MSD_OK;
}

msd_status msd_config_from_scenario(const char* scenario_id, msd_config** out) {
    MSD_REQUIRE(scenario_id && out, "null argument");
    return guarded([&] { make_config({{"scenario", scenario_id}}, out); });
}

msd_status msd_config_from_string(const char* json_text, msd_config** out) {
    MSD_REQUIRE(json_text && out, "null argument");
    return guarded([&] {
        nlohmann::json doc = nlohmann::json::parse(json_text, nullptr, false);
        if (doc.is_discarded()) throw msd::Error(msd::ErrorCode::config, "config is not valid JSON");
        make_config(std::move(doc), out);
    });
}

msd_status msd_config_from_file(const char* path, msd_config** out) {
    MSD_REQUIRE(path && out, "null argument");
    return guarded([&] {
        std::ifstream in(path);
        if (!in) throw msd::Error(msd::ErrorCode::io, std::string("cannot open config file ") + path);
        std::stringstream ss;
        ss << in.rdbuf();
        nlohmann::json doc = nlohmann::json::parse(ss.str(), nullptr, false);
        if (doc.is_discarded()) throw msd::Error(msd::ErrorCode::config, std::string(path) + " is not valid JSON");
        make_config(std::move(doc), out);
    });
}

msd_status msd_config_set(msd_config* cfg, const char* assignment) {
    MSD_REQUIRE(cfg && assignment, "null argument");
    return guarded([&] {
        nlohmann::json doc = cfg->doc;
        msd::apply_override(doc, assignment);
        msd::ScenarioConfig resolved = msd::load_config(doc);
        cfg->doc = std::move(doc);
        cfg->resolved = std::move(resolved);
        cfg->json_text = msd::to_json(cfg->resolved).dump(2);
    });
}

msd_status msd_config_json(const msd_config* cfg, const char** json_text) {
    MSD_REQUIRE(cfg && json_text, "null argument");
    *json_text = cfg->json_text.c_str();
    return MSD_OK;
}

msd_status msd_config_has_sweep(const msd_config* cfg, int* has_sweep) {
    MSD_REQUIRE(cfg && has_sweep, "null argument");
    *has_sweep = cfg->resolved.sweep.has_value() ? 1 : 0;
    return MSD_OK;
}

void msd_config_free(msd_config* cfg) { delete cfg; }

msd_status msd_run(const msd_config* cfg, msd_result** out) {
    MSD_REQUIRE(cfg && out, "null argument");
    return guarded([&] {
        auto* r = new msd_result{cfg->resolved, msd::RunResult{}, {}};
        try {
            if (cfg->resolved.sweep) {
                r->data = msd::run_sweep(cfg->resolved);
                r->summary_text = msd::summary_json(std::get<msd::SweepResult>(r->data), r->cfg).dump(2);
            } else {
                r->data = msd::run_scenario(cfg->resolved);
                r->summary_text = msd::summary_json(std::get<msd::RunResult>(r->data).summary).dump(2);
            }
        } catch (...) {
            delete r;
            throw;
        }
        *out = r;
    });
}

msd_status msd_result_point_count(const msd_result* res, size_t* count) {
    MSD_REQUIRE(res && count, "null argument");
    if (const auto* sweep = std::get_if<msd::SweepResult>(&res->data)) {
        *count = sweep->points.size();
    } else {
        *count = 1;
    }
    return MSD_OK;
}

msd_status msd_result_point_value(const msd_result* res, size_t point, double* value, double* fidelity) {
    MSD_REQUIRE(res, "null argument");
    return guarded([&] {
        double v = 0.0, f = 0.0;
        if (const auto* sweep = std::get_if<msd::SweepResult>(&res->data)) {
            if (point >= sweep->points.size()) throw msd::Error(msd::ErrorCode::invalid_argument, "point index out of range");
            v = sweep->points[point].value;
            f = sweep->points[point].final_fidelity;
        } else {
            if (point != 0) throw msd::Error(msd::ErrorCode::invalid_argument, "point index out of range");
            f = std::get<msd::RunResult>(res->data).summary.final_fidelity;
        }
        if (value) *value = v;
        if (fidelity) *fidelity = f;
    });
}

msd_status msd_result_rows(const msd_result* res, size_t point, size_t* rows) {
    MSD_REQUIRE(res && rows, "null argument");
    return guarded([&] { *rows = table_at(res, point)->rows.size(); });
}

msd_status msd_result_columns(const msd_result* res, size_t point, size_t* columns) {
    MSD_REQUIRE(res && columns, "null argument");
    return guarded([&] { *columns = table_at(res, point)->columns.size(); });
}

msd_status msd_result_column_name(const msd_result* res, size_t point, size_t column, const char** name) {
    MSD_REQUIRE(res && name, "null argument");
    return guarded([&] {
        const auto* t = table_at(res, point);
        if (column >= t->columns.size()) throw msd::Error(msd::ErrorCode::invalid_argument, "column index out of range");
        *name = t->columns[column].c_str();
    });
}

msd_status msd_result_value(const msd_result* res, size_t point, size_t row, size_t column, double* value) {
    MSD_REQUIRE(res && value, "null argument");
    return guarded([&] {
        const auto* t = table_at(res, point);
        if (row >= t->rows.size() || column >= t->columns.size()) {
            throw msd::Error(msd::ErrorCode::invalid_argument, "table index out of range");
        }
        *value = t->rows[row][column];
    });
}

msd_status msd_result_summary_json(const msd_result* res, const char** json_text) {
    MSD_REQUIRE(res && json_text, "null argument");
    *json_text = res->summary_text.c_str();
    return MSD_OK;
}

msd_status msd_result_write(const msd_result* res, const char* dir) {
    MSD_REQUIRE(res, "null argument");
    return guarded([&] {
        std::optional<std::filesystem::path> explicit_dir;
        if (dir && *dir) explicit_dir = dir;
        const auto target = msd::resolve_output_dir(res->cfg.output, explicit_dir);
        if (const auto* run = std::get_if<msd::RunResult>(&res->data)) {
            msd::write_outputs(*run, res->cfg, target);
        } else {
            msd::write_outputs(std::get<msd::SweepResult>(res->data), res->cfg, target);
        }
    });
}

void msd_result_free(msd_result* res) { delete res; }

}  // extern "C"
