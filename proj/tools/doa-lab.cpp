// SPDX-License-Identifier: Apache-2.0
//
// doa-lab: uniform linear array snapshot synthesis and subspace DOA estimation
// Copyright (C) 2026 doa-lab authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "doalab/config.hpp"
#include "doalab/errors.hpp"
#include "doalab/report_io.hpp"
#include "doalab/scenario.hpp"

namespace {

namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNumeric = 3;

// Collects everything written so a failure can remove partial outputs.
class OutputSet {
public:
    void write(const fs::path& path, const std::string& content) {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot open '" + path.string() + "' for writing");
        }
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            throw std::runtime_error("write to '" + path.string() + "' failed");
        }
        written_.push_back(path);
    }

    void remove_all() noexcept {
        for (const fs::path& path : written_) {
            std::error_code ec;
            fs::remove(path, ec);
        }
        written_.clear();
    }

    const std::vector<fs::path>& written() const { return written_; }

private:
    std::vector<fs::path> written_;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw doalab::ConfigError("config file '" + path + "': cannot be read");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

int run_command(const std::string& builtin, const std::string& config_path,
                const std::string& out_dir, bool out_dir_given, std::uint64_t seed,
                bool seed_given, int trials, bool trials_given, bool dump_spectrum) {
    doalab::ParsedConfig parsed;
    if (!builtin.empty()) {
        parsed.scenario = doalab::builtin_scenario(builtin);
    } else {
        parsed = doalab::parse_config(read_file(config_path));
    }
    if (out_dir_given) parsed.output.out_dir = out_dir;
    if (seed_given) parsed.scenario.base_seed = seed;
    if (trials_given) parsed.scenario.trials = trials;
    if (dump_spectrum) parsed.output.dump_spectrum = true;

    const doalab::ScenarioReport report =
        doalab::run_scenario(parsed.scenario, parsed.output.dump_spectrum);

    const fs::path dir(parsed.output.out_dir);
    fs::create_directories(dir);
    OutputSet outputs;
    try {
        if (parsed.output.write_json) {
            outputs.write(dir / "report.json", doalab::report_to_json(report));
        }
        if (parsed.output.write_csv) {
            outputs.write(dir / "estimates.csv", doalab::estimates_to_csv(report));
        }
        if (parsed.output.dump_spectrum) {
            for (const doalab::TrialResult& r : report.results) {
                if (!r.doa.spectrum) continue;
                outputs.write(dir / ("spectrum_" + std::to_string(r.trial) + ".csv"),
                              doalab::spectrum_to_csv(*r.doa.spectrum));
            }
        }
    } catch (...) {
        outputs.remove_all();
        throw;
    }

    std::cout << "scenario '" << report.scenario_name << "': " << report.trials
              << " trial(s), seed " << report.base_seed << '\n';
    for (const auto& [algorithm, stats] : report.stats) {
        std::cout << "  " << to_string(algorithm) << ": detection_rate "
                  << doalab::format_double(stats.detection_rate) << ", rmse_deg "
                  << doalab::format_double(stats.rmse_deg) << ", failures "
                  << (stats.resolution_failures + stats.other_failures) << '/' << stats.trials
                  << '\n';
    }
    std::cout << "runtime_seconds: " << doalab::format_double(report.runtime_seconds) << '\n';
    for (const fs::path& path : outputs.written()) {
        std::cout << "wrote " << path.string() << '\n';
    }
    return kExitOk;
}

int list_command() {
    for (const doalab::Scenario& s : doalab::builtin_scenarios()) {
        std::cout << s.name << '\n' << "  " << s.provenance << '\n';
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"uniform linear array DOA estimation scenarios (MUSIC / ESPRIT)"};
    app.require_subcommand(1);

    std::string builtin;
    std::string config_path;
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    int trials = 1;
    bool dump_spectrum = false;

    CLI::App* run = app.add_subcommand("run", "run a scenario and write report files");
    CLI::Option* builtin_opt =
        run->add_option("--builtin", builtin, "builtin scenario name (see 'list')");
    CLI::Option* config_opt =
        run->add_option("--config", config_path, "path to a JSON scenario config");
    builtin_opt->excludes(config_opt);
    CLI::Option* out_opt = run->add_option("--out", out_dir, "output directory (default '.')");
    CLI::Option* seed_opt = run->add_option("--seed", seed, "base RNG seed override");
    CLI::Option* trials_opt = run->add_option("--trials", trials, "trial count override");
    run->add_flag("--dump-spectrum", dump_spectrum,
                  "write spectrum_<trial>.csv for each MUSIC trial");

    app.add_subcommand("list", "print builtin scenario names and their provenance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    }

    try {
        if (app.got_subcommand("list")) {
            return list_command();
        }
        if (builtin.empty() && config_path.empty()) {
            std::cerr << "error: run requires exactly one of --builtin or --config\n";
            return kExitValidation;
        }
        return run_command(builtin, config_path, out_dir, out_opt->count() > 0, seed,
                           seed_opt->count() > 0, trials, trials_opt->count() > 0,
                           dump_spectrum);
    } catch (const doalab::DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumeric;
    }
}
