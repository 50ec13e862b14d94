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

#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "msdrive/error.hpp"
#include "msdrive/scenario.hpp"

namespace msd {

using nlohmann::json;
namespace fs = std::filesystem;

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

TrajectoryTable make_table(const Trajectory& traj, SystemKind system) {
    TrajectoryTable t;
    t.columns = {"t", "P1", "P2", "P3"};
    std::size_t idx[3] = {three_level::kPhi1, three_level::kPhi2, three_level::kPhi3};
    if (system == SystemKind::nve_tlr) {
        idx[0] = hybrid::k0ge;
        idx[1] = hybrid::k0eg;
        idx[2] = hybrid::k1gg;
    }
    const bool has_f = !traj.fidelity.empty();
    const bool has_n = !traj.mean_photon.empty();
    const bool hybrid_pops = system == SystemKind::nve_tlr;
    if (has_f) t.columns.emplace_back("F");
    if (has_n) t.columns.emplace_back("nbar");
    if (hybrid_pops) {
        for (std::size_t k = 0; k < hybrid::kDim; ++k) t.columns.push_back("P_" + hybrid::label(k));
    }
    t.rows.reserve(traj.times.size());
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        std::vector<double> row{traj.times[i]};
        for (std::size_t k : idx) row.push_back(traj.populations[k][i]);
        if (has_f) row.push_back(traj.fidelity[i]);
        if (has_n) row.push_back(traj.mean_photon[i]);
        if (hybrid_pops) {
            for (std::size_t k = 0; k < hybrid::kDim; ++k) row.push_back(traj.populations[k][i]);
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

json summary_json(const RunSummary& s) {
    json pops = json::object();
    for (std::size_t k = 0; k < s.final_populations.size(); ++k) pops[s.population_labels[k]] = s.final_populations[k];
    json d;
    d["scenario"] = s.scenario;
    d["final_populations"] = pops;
    d["final_fidelity"] = s.final_fidelity;
    d["max_mean_photon"] = s.max_mean_photon ? json(*s.max_mean_photon) : json(nullptr);
    d["wall_time_s"] = s.wall_time_seconds;
    d["grid"] = {{"t_start", s.grid.t_start}, {"t_end", s.grid.t_end}, {"steps", s.grid.steps}, {"dt", s.grid.step()}};
    d["warnings"] = s.warnings;
    d["diagnostics"] = {{"max_norm_drift", s.diagnostics.max_norm_drift},
                        {"max_trace_drift", s.diagnostics.max_trace_drift},
                        {"max_hermiticity_error", s.diagnostics.max_hermiticity_error},
                        {"min_eigenvalue", s.diagnostics.min_eigenvalue}};
    d["config"] = s.config;
    return d;
}

json summary_json(const SweepResult& sweep, const ScenarioConfig& cfg) {
    json points = json::array();
    for (const auto& p : sweep.points) {
        json run = summary_json(p.run.summary);
        run.erase("config");
        points.push_back({{"value", p.value}, {"final_fidelity", p.final_fidelity}, {"run", run}});
    }
    return {{"scenario", cfg.scenario}, {"sweep_parameter", sweep.parameter}, {"points", points}, {"config", to_json(cfg)}};
}

namespace {

std::ofstream open_output(const fs::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::io, "cannot open output file " + path.string());
    return out;
}

void finish(std::ofstream& out, const fs::path& path) {
    out.flush();
    if (!out) throw Error(ErrorCode::io, "failed writing output file " + path.string());
}

}  // namespace

void emit_table(const TrajectoryTable& table, const fs::path& path) {
    std::ofstream out = open_output(path);
    for (std::size_t c = 0; c < table.columns.size(); ++c) out << (c ? "," : "") << table.columns[c];
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_value(row[c]);
        out << '\n';
    }
    finish(out, path);
}

void emit_table(const Trajectory& traj, SystemKind system, const fs::path& path) {
    emit_table(make_table(traj, system), path);
}

void emit_sweep_table(const SweepResult& sweep, const fs::path& path) {
    std::ofstream out = open_output(path);
    out << sweep_column_name(sweep.parameter) << ",fidelity\n";
    for (const auto& p : sweep.points) out << format_value(p.value) << ',' << format_value(p.final_fidelity) << '\n';
    finish(out, path);
}

void emit_json(const json& doc, const fs::path& path) {
    std::ofstream out = open_output(path);
    out << doc.dump(2) << '\n';
    finish(out, path);
}

fs::path resolve_output_dir(const OutputConfig& out, const std::optional<fs::path>& explicit_dir) {
    if (explicit_dir && !explicit_dir->empty()) return *explicit_dir;
    if (const char* env = std::getenv("MSDRIVE_OUT_DIR"); env && *env) return env;
    if (!out.dir.empty()) return out.dir;
    return ".";
}

namespace {

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error(ErrorCode::io, "cannot create output directory " + dir.string() + ": " + ec.message());
}

}  // namespace

std::vector<fs::path> write_outputs(const RunResult& run, const ScenarioConfig& cfg, const fs::path& dir) {
    ensure_dir(dir);
    const fs::path table = dir / cfg.output.table;
    const fs::path summary = dir / cfg.output.summary;
    emit_table(run.table, table);
    emit_json(summary_json(run.summary), summary);
    return {table, summary};
}

std::vector<fs::path> write_outputs(const SweepResult& sweep, const ScenarioConfig& cfg, const fs::path& dir) {
    ensure_dir(dir);
    std::vector<fs::path> written;
    const fs::path stem = fs::path(cfg.output.table).stem();
    const fs::path ext = fs::path(cfg.output.table).extension();
    const std::string column = sweep_column_name(sweep.parameter);
    for (const auto& p : sweep.points) {
        const fs::path path = dir / (stem.string() + "_" + column + "_" + format_value(p.value) + ext.string());
        emit_table(p.run.table, path);
        written.push_back(path);
    }
    const fs::path table = dir / cfg.output.sweep_table;
    emit_sweep_table(sweep, table);
    written.push_back(table);
    const fs::path summary = dir / cfg.output.summary;
    emit_json(summary_json(sweep, cfg), summary);
    written.push_back(summary);
    return written;
}

}  // namespace msd
