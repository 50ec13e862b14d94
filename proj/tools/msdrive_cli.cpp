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

// msdrive: batch runner for the three-level and NVE-TLR scenarios.
//
//   msdrive list-scenarios
//   msdrive run <config.json> [--set key=value]... [--out DIR]
//   msdrive run --scenario fig1c [--set key=value]... [--out DIR] [--workers N]

#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "msdrive/msdrive.h"

namespace {

int report(msd_status s, const char* context) {
    std::fprintf(stderr, "msdrive: %s failed [%s]: %s\n", context, msd_status_name(s), msd_last_error());
    return 2;
}

int list_scenarios() {
    for (size_t i = 0; i < msd_scenario_count(); ++i) {
        const char* id = nullptr;
        const char* desc = nullptr;
        if (msd_scenario_info(i, &id, &desc) != MSD_OK) return report(MSD_ERR_INTERNAL, "list-scenarios");
        std::printf("%-8s %s\n", id, desc);
    }
    return 0;
}

struct RunArgs {
    std::string config_file;
    std::string scenario;
    std::vector<std::string> overrides;
    std::string out_dir;
    int workers = -1;
    bool quiet = false;
};

int run(const RunArgs& a) {
    if (a.config_file.empty() == a.scenario.empty()) {
        std::fprintf(stderr, "msdrive: run needs exactly one of <config-file> or --scenario\n");
        return 1;
    }
    msd_config* cfg = nullptr;
    msd_status s = a.config_file.empty() ? msd_config_from_scenario(a.scenario.c_str(), &cfg)
                                         : msd_config_from_file(a.config_file.c_str(), &cfg);
    if (s != MSD_OK) return report(s, "loading config");

    std::vector<std::string> overrides = a.overrides;
    if (a.workers >= 0) overrides.push_back("sweep.workers=" + std::to_string(a.workers));
    for (const auto& o : overrides) {
        if ((s = msd_config_set(cfg, o.c_str())) != MSD_OK) {
            msd_config_free(cfg);
            return report(s, ("--set " + o).c_str());
        }
    }

    msd_result* res = nullptr;
    s = msd_run(cfg, &res);
    msd_config_free(cfg);
    if (s != MSD_OK) return report(s, "run");

    s = msd_result_write(res, a.out_dir.empty() ? nullptr : a.out_dir.c_str());
    if (s != MSD_OK) {
        msd_result_free(res);
        return report(s, "writing outputs");
    }
    if (!a.quiet) {
        size_t points = 0;
        msd_result_point_count(res, &points);
        for (size_t p = 0; p < points; ++p) {
            double value = 0.0, f = 0.0;
            msd_result_point_value(res, p, &value, &f);
            if (points > 1) {
                std::printf("value %-8g final fidelity %.6f\n", value, f);
            } else {
                std::printf("final fidelity %.6f\n", f);
            }
        }
    }
    msd_result_free(res);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"msdrive: STIRAP and modified-superadiabatic-driving simulations"};
    app.set_version_flag("--version", msd_version());
    app.require_subcommand(1);

    app.add_subcommand("list-scenarios", "List the named scenarios");

    RunArgs args;
    CLI::App* run_cmd = app.add_subcommand("run", "Run a scenario and write its trajectory table and summary");
    run_cmd->add_option("config", args.config_file, "JSON config file")->check(CLI::ExistingFile);
    run_cmd->add_option("--scenario,-s", args.scenario, "Named scenario (see list-scenarios)");
    run_cmd->add_option("--set", args.overrides, "Override a config key, e.g. --set waveform.t1=0.9")
        ->allow_extra_args(false);
    run_cmd->add_option("--out,-o", args.out_dir, "Output directory (default: $MSDRIVE_OUT_DIR, output.dir, .)");
    run_cmd->add_option("--workers,-j", args.workers, "Sweep worker threads (0: all cores)")->check(CLI::NonNegativeNumber);
    run_cmd->add_flag("--quiet,-q", args.quiet, "Do not print final fidelities");

    CLI11_PARSE(app, argc, argv);

    if (app.got_subcommand("list-scenarios")) return list_scenarios();
    return run(args);
}
