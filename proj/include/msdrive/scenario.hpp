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

// Declarative scenarios: JSON config -> resolved ScenarioConfig -> run ->
// trajectory table + summary. The config schema is documented in README.md.

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "msdrive/dynamics.hpp"

namespace msd {

enum class WaveformShape { transfer, superposition };
enum class SystemKind { three_level, nve_tlr };

struct WaveformConfig {
    WaveformShape shape = WaveformShape::transfer;
    double eta0_mhz = 1.6;  // eta0 / 2pi
    double width = 0.408;   // us
    double t1 = 0.75, t2 = 0.25;  // transfer delays
    double t3 = 1.15, t4 = 0.25;  // superposition delays
};

struct HybridConfig {
    double g_mhz = 20.0;
    double omega0_mhz = 16.0;
    double delta_mhz = 200.0;
};

struct DissipationConfig {
    double kappa = 1.0 / 50.0;         // 1/us
    double gamma = 1.0 / 6000.0;       // 1/us
    double gamma_phi = 1.0 / 600.0;    // 1/us
    double kappa_ratio = 1.0;          // kappa' / kappa

    DissipationSpec spec() const { return {kappa * kappa_ratio, gamma, gamma_phi}; }
};

struct SweepConfig {
    std::string parameter;       // dotted config path, e.g. "dissipation.kappa_ratio"
    std::vector<double> values;
    unsigned workers = 0;        // 0: hardware concurrency
};

struct OutputConfig {
    std::string dir;             // empty: current directory (or MSDRIVE_OUT_DIR)
    std::string table = "trajectory.csv";
    std::string summary = "summary.json";
    std::string sweep_table = "sweep.csv";
};

struct ScenarioConfig {
    std::string scenario = "custom";
    SystemKind system = SystemKind::three_level;
    DriveMode mode = DriveMode::msd;
    WaveformConfig waveform;
    HybridConfig hybrid;
    DissipationConfig dissipation;
    TimeGrid grid{0.0, 1.0, 1000};
    std::optional<SweepConfig> sweep;
    OutputConfig output;
};

inline constexpr double kMaxGridStep = 1e-3;  // us

struct ScenarioInfo {
    std::string id;
    std::string description;
};

/// Named scenarios with built-in defaults, plus "custom".
const std::vector<ScenarioInfo>& scenario_catalog();

/// Resolves defaults for `doc["scenario"]`, overlays the document, and
/// validates. Unknown keys, missing required keys, unknown scenario ids and
/// invalid values throw Error{config} with the offending dotted key in the
/// message.
ScenarioConfig load_config(const nlohmann::json& doc);
ScenarioConfig load_config_text(std::string_view text);
ScenarioConfig load_config_file(const std::filesystem::path& path);

/// Applies "a.b.c=value" to a config document. The value is parsed as JSON
/// when possible and taken as a plain string otherwise.
void apply_override(nlohmann::json& doc, std::string_view assignment);

/// Fully resolved config as a document; load_config(to_json(c)) == c.
nlohmann::json to_json(const ScenarioConfig& cfg);

bool operator==(const ScenarioConfig& a, const ScenarioConfig& b);

/// Trajectory as a named-column table.
struct TrajectoryTable {
    std::vector<std::string> columns;        // first column is "t"
    std::vector<std::vector<double>> rows;
};

struct RunSummary {
    std::string scenario;
    std::vector<std::string> population_labels;
    std::vector<double> final_populations;
    double final_fidelity = 0.0;
    std::optional<double> max_mean_photon;
    double wall_time_seconds = 0.0;
    TimeGrid grid{0.0, 1.0, 1};
    std::vector<std::string> warnings;
    Trajectory::Diagnostics diagnostics;
    nlohmann::json config;
};

struct RunResult {
    TrajectoryTable table;
    RunSummary summary;
    Trajectory trajectory;
};

struct SweepPoint {
    double value;
    double final_fidelity;
    RunResult run;
};

struct SweepResult {
    std::string parameter;
    std::vector<SweepPoint> points;  // ascending by value
};

/// Builds the waveform / Hamiltonian described by `cfg`.
ControlWaveform scenario_waveform(const ScenarioConfig& cfg);
HamiltonianSampler scenario_hamiltonian(const ScenarioConfig& cfg);

/// Three-level runs start from |phi2>; hybrid runs from |0eg><0eg|.
/// Fidelity target: |phi1> (|0ge>) for transfer, (|phi1> - |phi2>)/sqrt(2)
/// for superposition. Ignores any sweep block.
RunResult run_scenario(const ScenarioConfig& cfg);

/// One independent run per sweep value, executed on up to `workers` threads.
/// Throws Error{config} if the sweep block is missing or empty.
SweepResult run_sweep(const ScenarioConfig& cfg);

TrajectoryTable make_table(const Trajectory& traj, SystemKind system);
nlohmann::json summary_json(const RunSummary& s);
nlohmann::json summary_json(const SweepResult& sweep, const ScenarioConfig& cfg);

/// Number formatting used for every emitted value (17 significant digits).
std::string format_value(double v);

/// CSV with LF line endings. Throws Error{io} if the file cannot be written.
void emit_table(const TrajectoryTable& table, const std::filesystem::path& path);
void emit_table(const Trajectory& traj, SystemKind system, const std::filesystem::path& path);
void emit_sweep_table(const SweepResult& sweep, const std::filesystem::path& path);
void emit_json(const nlohmann::json& doc, const std::filesystem::path& path);

/// Output directory: `explicit_dir` if given, else $MSDRIVE_OUT_DIR, else
/// cfg.output.dir, else the current directory.
std::filesystem::path resolve_output_dir(const OutputConfig& out, const std::optional<std::filesystem::path>& explicit_dir);

/// Writes table + summary (and for sweeps the sweep table plus one
/// trajectory file per point). Returns the paths written.
std::vector<std::filesystem::path> write_outputs(const RunResult& run, const ScenarioConfig& cfg,
                                                 const std::filesystem::path& dir);
std::vector<std::filesystem::path> write_outputs(const SweepResult& sweep, const ScenarioConfig& cfg,
                                                 const std::filesystem::path& dir);

/// Last path component of a dotted key ("dissipation.kappa_ratio" -> "kappa_ratio").
std::string sweep_column_name(const std::string& parameter);

}  // namespace msd
