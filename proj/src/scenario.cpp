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

#include "msdrive/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <thread>

#include "msdrive/error.hpp"

namespace msd {

using nlohmann::json;

namespace {

[[noreturn]] void config_error(const std::string& key, const std::string& what) {
    throw Error(ErrorCode::config, "config key '" + key + "': " + what);
}

// Allowed keys. A nested object maps to its own key set; a leaf is null.
const json& schema() {
    static const json s = {
        {"scenario", nullptr},
        {"system", nullptr},
        {"mode", nullptr},
        {"waveform",
         {{"shape", nullptr}, {"eta0_mhz", nullptr}, {"width", nullptr},
          {"t1", nullptr}, {"t2", nullptr}, {"t3", nullptr}, {"t4", nullptr}}},
        {"hybrid", {{"g_mhz", nullptr}, {"omega0_mhz", nullptr}, {"delta_mhz", nullptr}}},
        {"dissipation", {{"kappa", nullptr}, {"gamma", nullptr}, {"gamma_phi", nullptr}, {"kappa_ratio", nullptr}}},
        {"grid", {{"t_start", nullptr}, {"t_end", nullptr}, {"steps", nullptr}}},
        {"sweep", {{"parameter", nullptr}, {"values", nullptr}, {"workers", nullptr}}},
        {"output", {{"dir", nullptr}, {"table", nullptr}, {"summary", nullptr}, {"sweep_table", nullptr}}},
    };
    return s;
}

void check_keys(const json& doc, const json& allowed, const std::string& prefix) {
    if (!doc.is_object()) {
        config_error(prefix.empty() ? "<root>" : prefix, "expected an object");
    }
    for (const auto& [key, value] : doc.items()) {
        const std::string path = prefix.empty() ? key : prefix + "." + key;
        if (!allowed.contains(key)) config_error(path, "unknown key");
        const json& sub = allowed.at(key);
        if (path == "sweep" && value.is_null()) continue;
        if (sub.is_object()) check_keys(value, sub, path);
    }
}

json transfer_defaults(double t1) {
    return {{"shape", "transfer"}, {"eta0_mhz", 1.6}, {"width", 0.408}, {"t1", t1}, {"t2", 0.25}};
}

json superposition_defaults() {
    return {{"shape", "superposition"}, {"eta0_mhz", 1.6}, {"width", 0.408}, {"t3", 1.15}, {"t4", 0.25}};
}

// The closed-system window is centred on the pulse pair. Starting earlier
// than t = 0 keeps the |phi2> initial state on the dark state to < 1e-6, and
// ending by 1.5 us stays ahead of the far tail where thetadot / eta grows.
json closed_grid() { return {{"t_start", -0.5}, {"t_end", 1.5}, {"steps", 20000}}; }
json open_grid() { return {{"t_start", 0.0}, {"t_end", 1.2}, {"steps", 12000}}; }

json common_defaults() {
    return {
        {"hybrid", {{"g_mhz", 20.0}, {"omega0_mhz", 16.0}, {"delta_mhz", 200.0}}},
        {"dissipation", {{"kappa", 1.0 / 50.0}, {"gamma", 1.0 / 6000.0}, {"gamma_phi", 1.0 / 600.0}, {"kappa_ratio", 1.0}}},
        {"output", {{"dir", ""}, {"table", "trajectory.csv"}, {"summary", "summary.json"}, {"sweep_table", "sweep.csv"}}},
    };
}

struct Preset {
    ScenarioInfo info;
    json defaults;
};

const std::vector<Preset>& presets() {
    static const std::vector<Preset> p = [] {
        auto make = [](const char* id, const char* desc, json body) {
            json d = common_defaults();
            d.merge_patch(body);
            d["scenario"] = id;
            return Preset{{id, desc}, d};
        };
        const json three = {{"system", "three_level"}, {"grid", closed_grid()}};
        auto with = [](json base, json extra) {
            base.merge_patch(extra);
            return base;
        };
        std::vector<Preset> v;
        v.push_back(make("fig1b", "population transfer |phi2> -> |phi1> with H0 (STIRAP)",
                         with(three, {{"mode", "stirap"}, {"waveform", transfer_defaults(0.75)}})));
        v.push_back(make("fig1c", "population transfer |phi2> -> |phi1> with H_M (MSD)",
                         with(three, {{"mode", "msd"}, {"waveform", transfer_defaults(0.75)}})));
        v.push_back(make("fig1e", "transfer with reduced pulse overlap (t1 = 0.9 us), STIRAP",
                         with(three, {{"mode", "stirap"}, {"waveform", transfer_defaults(0.9)}})));
        v.push_back(make("fig1f", "transfer with reduced pulse overlap (t1 = 0.9 us), MSD",
                         with(three, {{"mode", "msd"}, {"waveform", transfer_defaults(0.9)}})));
        v.push_back(make("fig2a", "superposition (|phi1> - |phi2>)/sqrt2 with t3 = 1.15 us, STIRAP",
                         with(three, {{"mode", "stirap"}, {"waveform", superposition_defaults()}})));
        v.push_back(make("fig2b", "superposition (|phi1> - |phi2>)/sqrt2 with t3 = 1.15 us, MSD",
                         with(three, {{"mode", "msd"}, {"waveform", superposition_defaults()}})));
        const json open = {{"system", "nve_tlr"}, {"mode", "msd"}, {"waveform", transfer_defaults(0.75)},
                           {"grid", open_grid()}};
        v.push_back(make("fig4a", "NVE-TLR transfer |0eg> -> |0ge> with MSD under cavity/NVE dissipation", open));
        v.push_back(make("fig4b", "fidelity versus cavity decay kappa'/kappa in {1, 50, 100, 200}",
                         with(open, {{"sweep", {{"parameter", "dissipation.kappa_ratio"},
                                                {"values", {1.0, 50.0, 100.0, 200.0}},
                                                {"workers", 0}}}})));
        json custom = common_defaults();
        custom["scenario"] = "custom";
        custom["system"] = "three_level";
        custom["mode"] = "msd";
        v.push_back(Preset{{"custom", "user-specified; waveform and grid are required"}, custom});
        return v;
    }();
    return p;
}

const json& get(const json& doc, const std::string& path) {
    const json* node = &doc;
    std::size_t start = 0;
    while (true) {
        const std::size_t dot = path.find('.', start);
        const std::string key = path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
        if (!node->is_object() || !node->contains(key)) config_error(path, "missing required key");
        node = &node->at(key);
        if (dot == std::string::npos) return *node;
        start = dot + 1;
    }
}

double get_number(const json& doc, const std::string& path) {
    const json& v = get(doc, path);
    if (!v.is_number()) config_error(path, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) config_error(path, "expected a finite number");
    return x;
}

double get_positive(const json& doc, const std::string& path) {
    const double x = get_number(doc, path);
    if (!(x > 0.0)) config_error(path, "must be positive");
    return x;
}

double get_nonnegative(const json& doc, const std::string& path) {
    const double x = get_number(doc, path);
    if (!(x >= 0.0)) config_error(path, "must be non-negative");
    return x;
}

std::string get_string(const json& doc, const std::string& path) {
    const json& v = get(doc, path);
    if (!v.is_string()) config_error(path, "expected a string");
    return v.get<std::string>();
}

template <typename E>
E get_enum(const json& doc, const std::string& path, std::initializer_list<std::pair<const char*, E>> names) {
    const std::string s = get_string(doc, path);
    std::string options;
    for (const auto& [name, value] : names) {
        if (s == name) return value;
        options += options.empty() ? name : std::string(" | ") + name;
    }
    config_error(path, "'" + s + "' is not one of " + options);
}

const Preset& find_preset(const std::string& id) {
    for (const auto& p : presets())
        if (p.info.id == id) return p;
    std::string known;
    for (const auto& p : presets()) known += (known.empty() ? "" : ", ") + p.info.id;
    config_error("scenario", "unknown scenario id '" + id + "' (known: " + known + ")");
}

ScenarioConfig parse_resolved(const json& d) {
    ScenarioConfig c;
    c.scenario = get_string(d, "scenario");
    c.system = get_enum<SystemKind>(d, "system", {{"three_level", SystemKind::three_level}, {"nve_tlr", SystemKind::nve_tlr}});
    c.mode = get_enum<DriveMode>(d, "mode", {{"stirap", DriveMode::stirap}, {"msd", DriveMode::msd}});

    c.waveform.shape = get_enum<WaveformShape>(
        d, "waveform.shape", {{"transfer", WaveformShape::transfer}, {"superposition", WaveformShape::superposition}});
    c.waveform.width = get_positive(d, "waveform.width");
    if (c.system == SystemKind::three_level || d["waveform"].contains("eta0_mhz")) {
        c.waveform.eta0_mhz = get_nonnegative(d, "waveform.eta0_mhz");
    }
    if (c.waveform.shape == WaveformShape::transfer) {
        c.waveform.t1 = get_number(d, "waveform.t1");
        c.waveform.t2 = get_number(d, "waveform.t2");
        if (d["waveform"].contains("t3") || d["waveform"].contains("t4")) {
            config_error("waveform", "t3/t4 apply only to shape 'superposition'");
        }
    } else {
        c.waveform.t3 = get_number(d, "waveform.t3");
        c.waveform.t4 = get_number(d, "waveform.t4");
        if (d["waveform"].contains("t1") || d["waveform"].contains("t2")) {
            config_error("waveform", "t1/t2 apply only to shape 'transfer'");
        }
    }
    if (c.system == SystemKind::nve_tlr && c.waveform.shape != WaveformShape::transfer) {
        config_error("waveform.shape", "the NVE-TLR system supports only the transfer waveform");
    }

    c.hybrid.g_mhz = get_number(d, "hybrid.g_mhz");
    c.hybrid.omega0_mhz = get_nonnegative(d, "hybrid.omega0_mhz");
    c.hybrid.delta_mhz = get_number(d, "hybrid.delta_mhz");
    if (c.hybrid.delta_mhz == 0.0) config_error("hybrid.delta_mhz", "must be nonzero");

    c.dissipation.kappa = get_nonnegative(d, "dissipation.kappa");
    c.dissipation.gamma = get_nonnegative(d, "dissipation.gamma");
    c.dissipation.gamma_phi = get_nonnegative(d, "dissipation.gamma_phi");
    c.dissipation.kappa_ratio = get_nonnegative(d, "dissipation.kappa_ratio");

    c.grid.t_start = get_number(d, "grid.t_start");
    c.grid.t_end = get_number(d, "grid.t_end");
    const json& steps = get(d, "grid.steps");
    if (!steps.is_number_integer() || steps.get<long long>() <= 0) config_error("grid.steps", "must be a positive integer");
    c.grid.steps = steps.get<std::size_t>();
    if (!(c.grid.t_end > c.grid.t_start)) config_error("grid.t_end", "must exceed grid.t_start");
    if (c.grid.step() > kMaxGridStep * (1.0 + 1e-12)) {
        config_error("grid.steps", "step " + format_value(c.grid.step()) + " us exceeds the 1e-3 us limit");
    }

    if (d.contains("sweep") && !d["sweep"].is_null()) {
        SweepConfig s;
        s.parameter = get_string(d, "sweep.parameter");
        const json& values = get(d, "sweep.values");
        if (!values.is_array()) config_error("sweep.values", "expected an array of numbers");
        if (values.empty()) config_error("sweep.values", "sweep list is empty");
        for (const auto& v : values) {
            if (!v.is_number()) config_error("sweep.values", "expected an array of numbers");
            s.values.push_back(v.get<double>());
        }
        if (d["sweep"].contains("workers")) {
            const json& w = d["sweep"]["workers"];
            if (!w.is_number_integer() || w.get<long long>() < 0) config_error("sweep.workers", "must be a non-negative integer");
            s.workers = w.get<unsigned>();
        }
        // The swept parameter must be an existing numeric leaf.
        const json& target = get(d, s.parameter);
        if (!target.is_number()) config_error("sweep.parameter", "'" + s.parameter + "' is not a numeric setting");
        c.sweep = std::move(s);
    }

    c.output.dir = get_string(d, "output.dir");
    c.output.table = get_string(d, "output.table");
    c.output.summary = get_string(d, "output.summary");
    c.output.sweep_table = get_string(d, "output.sweep_table");
    return c;
}

}  // namespace

const std::vector<ScenarioInfo>& scenario_catalog() {
    static const std::vector<ScenarioInfo> catalog = [] {
        std::vector<ScenarioInfo> v;
        for (const auto& p : presets()) v.push_back(p.info);
        return v;
    }();
    return catalog;
}

ScenarioConfig load_config(const json& doc) {
    check_keys(doc, schema(), "");
    if (!doc.contains("scenario")) config_error("scenario", "missing required key");
    if (!doc["scenario"].is_string()) config_error("scenario", "expected a string");
    json resolved = find_preset(doc["scenario"].get<std::string>()).defaults;
    // A user-supplied waveform shape replaces the preset's delay keys wholesale.
    if (doc.contains("waveform") && doc["waveform"].contains("shape") && resolved.contains("waveform") &&
        resolved["waveform"].value("shape", "") != doc["waveform"]["shape"]) {
        resolved.erase("waveform");
    }
    resolved.merge_patch(doc);
    return parse_resolved(resolved);
}

ScenarioConfig load_config_text(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::config, std::string("config is not valid JSON: ") + e.what());
    }
    return load_config(doc);
}

ScenarioConfig load_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::io, "cannot open config file " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return load_config_text(ss.str());
}

void apply_override(json& doc, std::string_view assignment) {
    const std::size_t eq = assignment.find('=');
    if (eq == std::string_view::npos || eq == 0) {
        throw Error(ErrorCode::config, "override '" + std::string(assignment) + "' must have the form key=value");
    }
    const std::string key(assignment.substr(0, eq));
    const std::string text(assignment.substr(eq + 1));
    json value = json::parse(text, nullptr, false);
    if (value.is_discarded()) value = text;

    json* node = &doc;
    std::size_t start = 0;
    while (true) {
        const std::size_t dot = key.find('.', start);
        const std::string part = key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
        if (part.empty()) throw Error(ErrorCode::config, "override key '" + key + "' has an empty component");
        if (!node->is_object()) *node = json::object();
        if (dot == std::string::npos) {
            (*node)[part] = std::move(value);
            return;
        }
        node = &(*node)[part];
        start = dot + 1;
    }
}

json to_json(const ScenarioConfig& c) {
    json d;
    d["scenario"] = c.scenario;
    d["system"] = c.system == SystemKind::three_level ? "three_level" : "nve_tlr";
    d["mode"] = to_string(c.mode);
    json w = {{"width", c.waveform.width}, {"eta0_mhz", c.waveform.eta0_mhz}};
    if (c.waveform.shape == WaveformShape::transfer) {
        w["shape"] = "transfer";
        w["t1"] = c.waveform.t1;
        w["t2"] = c.waveform.t2;
    } else {
        w["shape"] = "superposition";
        w["t3"] = c.waveform.t3;
        w["t4"] = c.waveform.t4;
    }
    d["waveform"] = w;
    d["hybrid"] = {{"g_mhz", c.hybrid.g_mhz}, {"omega0_mhz", c.hybrid.omega0_mhz}, {"delta_mhz", c.hybrid.delta_mhz}};
    d["dissipation"] = {{"kappa", c.dissipation.kappa},
                        {"gamma", c.dissipation.gamma},
                        {"gamma_phi", c.dissipation.gamma_phi},
                        {"kappa_ratio", c.dissipation.kappa_ratio}};
    d["grid"] = {{"t_start", c.grid.t_start}, {"t_end", c.grid.t_end}, {"steps", c.grid.steps}};
    if (c.sweep) {
        d["sweep"] = {{"parameter", c.sweep->parameter}, {"values", c.sweep->values}, {"workers", c.sweep->workers}};
    }
    d["output"] = {{"dir", c.output.dir},
                   {"table", c.output.table},
                   {"summary", c.output.summary},
                   {"sweep_table", c.output.sweep_table}};
    return d;
}

bool operator==(const ScenarioConfig& a, const ScenarioConfig& b) { return to_json(a) == to_json(b); }

// ---------------------------------------------------------------------------
// running

ControlWaveform scenario_waveform(const ScenarioConfig& cfg) {
    if (cfg.system == SystemKind::nve_tlr) {
        const HybridSystemSpec spec{mhz_to_angular(cfg.hybrid.g_mhz), mhz_to_angular(cfg.hybrid.omega0_mhz),
                                    mhz_to_angular(cfg.hybrid.delta_mhz), cfg.waveform.t1, cfg.waveform.t2,
                                    cfg.waveform.width};
        return spec.effective_waveform();
    }
    const double eta0 = mhz_to_angular(cfg.waveform.eta0_mhz);
    if (cfg.waveform.shape == WaveformShape::transfer) {
        return transfer_waveform({eta0, cfg.waveform.t1, cfg.waveform.t2, cfg.waveform.width});
    }
    return superposition_waveform({eta0, cfg.waveform.t3, cfg.waveform.t4, cfg.waveform.width});
}

namespace {

HybridSystemSpec hybrid_spec(const ScenarioConfig& cfg) {
    return {mhz_to_angular(cfg.hybrid.g_mhz), mhz_to_angular(cfg.hybrid.omega0_mhz),
            mhz_to_angular(cfg.hybrid.delta_mhz), cfg.waveform.t1, cfg.waveform.t2, cfg.waveform.width};
}

StateVector three_level_target(WaveformShape shape) {
    if (shape == WaveformShape::transfer) return StateVector::basis(3, three_level::kPhi1);
    const double h = 1.0 / std::numbers::sqrt2;
    return StateVector{h, -h, 0.0};
}

}  // namespace

HamiltonianSampler scenario_hamiltonian(const ScenarioConfig& cfg) {
    if (cfg.system == SystemKind::nve_tlr) return build_nve_tlr_hamiltonian(hybrid_spec(cfg), cfg.mode);
    const ControlWaveform w = scenario_waveform(cfg);
    return cfg.mode == DriveMode::stirap ? build_h0(w) : build_hm(w);
}

RunResult run_scenario(const ScenarioConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    RunResult out;
    try {
        const HamiltonianSampler h = scenario_hamiltonian(cfg);
        PropagationOptions opt;
        if (cfg.system == SystemKind::three_level) {
            opt.target = three_level_target(cfg.waveform.shape);
            out.trajectory = propagate_schrodinger(h, StateVector::basis(3, three_level::kPhi2), cfg.grid, opt);
        } else {
            opt.target = StateVector::basis(hybrid::kDim, hybrid::k0ge);
            opt.record_mean_photon = true;
            const DensityMatrix rho0 = DensityMatrix::pure(StateVector::basis(hybrid::kDim, hybrid::k0eg));
            out.trajectory = propagate_lindblad(h, rho0, cfg.dissipation.spec(), cfg.grid, opt);
            out.summary.warnings = hybrid_spec(cfg).dispersive_warnings();
        }
    } catch (const Error& e) {
        throw Error(e.code(), "scenario '" + cfg.scenario + "': " + e.what());
    }

    out.table = make_table(out.trajectory, cfg.system);
    RunSummary& s = out.summary;
    s.scenario = cfg.scenario;
    s.grid = cfg.grid;
    s.config = to_json(cfg);
    s.diagnostics = out.trajectory.diagnostics;
    const auto& last = out.table.rows.back();
    for (std::size_t c = 0; c < out.table.columns.size(); ++c) {
        const std::string& name = out.table.columns[c];
        if (name == "F") s.final_fidelity = last[c];
        if (!name.empty() && name[0] == 'P') {
            s.population_labels.push_back(name);
            s.final_populations.push_back(last[c]);
        }
    }
    if (!out.trajectory.mean_photon.empty()) {
        s.max_mean_photon = *std::max_element(out.trajectory.mean_photon.begin(), out.trajectory.mean_photon.end());
    }
    s.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

SweepResult run_sweep(const ScenarioConfig& cfg) {
    if (!cfg.sweep) throw Error(ErrorCode::config, "config key 'sweep': missing sweep block");
    if (cfg.sweep->values.empty()) throw Error(ErrorCode::config, "config key 'sweep.values': sweep list is empty");

    std::vector<double> values = cfg.sweep->values;
    std::sort(values.begin(), values.end());

    // Resolve each point's config up front so that config errors surface
    // before any worker starts.
    std::vector<ScenarioConfig> configs;
    for (double v : values) {
        json doc = to_json(cfg);
        doc["sweep"] = nullptr;
        apply_override(doc, cfg.sweep->parameter + "=" + format_value(v));
        configs.push_back(load_config(doc));
    }

    SweepResult result;
    result.parameter = cfg.sweep->parameter;
    result.points.resize(values.size());
    std::vector<std::exception_ptr> errors(values.size());
    std::atomic<std::size_t> next{0};

    unsigned workers = cfg.sweep->workers;
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(values.size()));

    auto work = [&] {
        for (std::size_t i = next++; i < values.size(); i = next++) {
            try {
                RunResult run = run_scenario(configs[i]);
                const double f = run.summary.final_fidelity;
                result.points[i] = SweepPoint{values[i], f, std::move(run)};
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::vector<std::jthread> pool;
    for (unsigned k = 1; k < workers; ++k) pool.emplace_back(work);
    work();
    pool.clear();

    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    return result;
}

std::string sweep_column_name(const std::string& parameter) {
    const std::size_t dot = parameter.rfind('.');
    return dot == std::string::npos ? parameter : parameter.substr(dot + 1);
}

}  // namespace msd
