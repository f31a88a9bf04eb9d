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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

namespace fs = std::filesystem;

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

// Runs the installed binary with the given arguments, capturing both streams.
RunResult run_cli(const std::string& args, const fs::path& workdir) {
    const fs::path out_file = workdir / "stdout.txt";
    const fs::path err_file = workdir / "stderr.txt";
    const std::string cmd = std::string(DOALAB_CLI_PATH) + " " + args + " > " +
                            out_file.string() + " 2> " + err_file.string();
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out_file);
    r.err = slurp(err_file);
    return r;
}

std::size_t count_lines(const std::string& text) {
    std::size_t n = 0;
    for (char c : text) {
        if (c == '\n') ++n;
    }
    return n;
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

// Fresh scratch directory per test case, removed on destruction.
struct Scratch {
    fs::path dir;
    Scratch() {
        dir = fs::temp_directory_path() /
              ("doalab-cli-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
        fs::create_directories(dir);
    }
    ~Scratch() { fs::remove_all(dir); }
    static inline int counter = 0;
};

}  // namespace

TEST_CASE("run writes a report and per-angle estimates") {
    Scratch tmp;
    const fs::path out = tmp.dir / "run";
    auto r = run_cli("run --builtin table1 --out " + out.string(), tmp.dir);
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "table1"));
    CHECK(contains(r.out, "report.json"));
    CHECK(fs::exists(out / "report.json"));
    CHECK(fs::exists(out / "estimates.csv"));

    // 5 sources x 2 algorithms plus a header.
    const std::string csv = slurp(out / "estimates.csv");
    CHECK(count_lines(csv) == 11);
    CHECK(csv.rfind("trial,algorithm,angle_index,angle_deg,level_db\n", 0) == 0);
    CHECK_FALSE(contains(csv, "\r"));

    const std::string json = slurp(out / "report.json");
    CHECK(contains(json, "\"scenario\": \"table1\""));
    CHECK_FALSE(contains(json, "runtime"));
}

TEST_CASE("identical seeds give byte-identical reports") {
    Scratch tmp;
    const fs::path a = tmp.dir / "a";
    const fs::path b = tmp.dir / "b";
    auto ra = run_cli("run --builtin two_source_exp --trials 3 --seed 7 --out " + a.string(),
                      tmp.dir);
    auto rb = run_cli("run --builtin two_source_exp --trials 3 --seed 7 --out " + b.string(),
                      tmp.dir);
    CHECK(ra.exit_code == 0);
    CHECK(rb.exit_code == 0);
    CHECK(slurp(a / "report.json") == slurp(b / "report.json"));
    CHECK(slurp(a / "estimates.csv") == slurp(b / "estimates.csv"));
}

TEST_CASE("trial and seed overrides reach the report") {
    Scratch tmp;
    const fs::path out = tmp.dir / "run";
    auto r = run_cli("run --builtin table1 --trials 2 --seed 5 --out " + out.string(), tmp.dir);
    CHECK(r.exit_code == 0);
    const std::string csv = slurp(out / "estimates.csv");
    CHECK(count_lines(csv) == 21);
    const std::string json = slurp(out / "report.json");
    CHECK(contains(json, "\"base_seed\": 5"));
    CHECK(contains(json, "\"trials\": 2"));
}

TEST_CASE("the spectrum dump is a full-grid table per trial") {
    Scratch tmp;
    const fs::path out = tmp.dir / "run";
    auto r = run_cli("run --builtin table1 --dump-spectrum --out " + out.string(), tmp.dir);
    CHECK(r.exit_code == 0);
    const fs::path spectrum = out / "spectrum_0.csv";
    REQUIRE(fs::exists(spectrum));
    const std::string csv = slurp(spectrum);
    CHECK(count_lines(csv) == 1800);
    CHECK(csv.rfind("angle_deg,power_db\n", 0) == 0);
}

TEST_CASE("a config file drives the run and can turn outputs off") {
    Scratch tmp;
    const fs::path cfg = tmp.dir / "scenario.json";
    {
        std::ofstream f(cfg);
        f << R"({"name": "cfg", "sources": [{"aoa_deg": -10}, {"aoa_deg": 15}],
                 "noise_power_db": 0, "trials": 2,
                 "output": {"write_csv": false}})";
    }
    const fs::path out = tmp.dir / "run";
    auto r = run_cli("run --config " + cfg.string() + " --out " + out.string(), tmp.dir);
    CHECK(r.exit_code == 0);
    CHECK(fs::exists(out / "report.json"));
    CHECK_FALSE(fs::exists(out / "estimates.csv"));
    CHECK(contains(slurp(out / "report.json"), "\"scenario\": \"cfg\""));
}

TEST_CASE("validation failures exit 2 and leave no partial outputs") {
    Scratch tmp;
    const fs::path cfg = tmp.dir / "bad.json";
    {
        std::ofstream f(cfg);
        f << R"({"name": "bad", "sources": [{"aoa_deg": 95}]})";
    }
    const fs::path out = tmp.dir / "run";
    auto r = run_cli("run --config " + cfg.string() + " --out " + out.string(), tmp.dir);
    CHECK(r.exit_code == 2);
    CHECK(contains(r.err, "aoa_deg"));
    CHECK_FALSE(fs::exists(out / "report.json"));
    CHECK_FALSE(fs::exists(out / "estimates.csv"));
}

TEST_CASE("malformed JSON exits 2 with a parse message") {
    Scratch tmp;
    const fs::path cfg = tmp.dir / "bad.json";
    {
        std::ofstream f(cfg);
        f << "{nope";
    }
    auto r = run_cli("run --config " + cfg.string(), tmp.dir);
    CHECK(r.exit_code == 2);
    CHECK(contains(r.err, "well-formed"));
}

TEST_CASE("an unknown builtin name exits 2 and lists what exists") {
    Scratch tmp;
    auto r = run_cli("run --builtin nope", tmp.dir);
    CHECK(r.exit_code == 2);
    CHECK(contains(r.err, "table1"));
}

TEST_CASE("run requires exactly one scenario selector") {
    Scratch tmp;
    auto neither = run_cli("run", tmp.dir);
    CHECK(neither.exit_code == 2);
    CHECK_FALSE(neither.err.empty());

    const fs::path cfg = tmp.dir / "scenario.json";
    {
        std::ofstream f(cfg);
        f << R"({"name": "t", "sources": [{"aoa_deg": 0}]})";
    }
    auto both = run_cli("run --builtin table1 --config " + cfg.string(), tmp.dir);
    CHECK(both.exit_code == 2);
}

TEST_CASE("list names every builtin scenario") {
    Scratch tmp;
    auto r = run_cli("list", tmp.dir);
    CHECK(r.exit_code == 0);
    for (const char* name : {"table1", "seven_sources", "lo_instability", "two_source_exp",
                             "snr_drop", "resolution_sweep", "multipath"}) {
        CHECK(contains(r.out, name));
    }
}

TEST_CASE("help is available") {
    Scratch tmp;
    auto r = run_cli("--help", tmp.dir);
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "run"));
    CHECK(contains(r.out, "list"));
}
