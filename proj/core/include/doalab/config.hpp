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

#pragma once

#include <string>

#include "doalab/scenario.hpp"

namespace doalab {

struct OutputControls {
    std::string out_dir = ".";
    bool write_json = true;
    bool write_csv = true;
    bool dump_spectrum = false;
};

struct ParsedConfig {
    Scenario scenario;
    OutputControls output;
};

// Parses a JSON scenario document. Keys map one-to-one onto Scenario fields
// with explicit units in the key names (spacing_m, carrier_freq_hz,
// aoa_deg, ...); unknown keys are rejected and every diagnostic names the
// offending key and constraint. Omitted optional fields take the documented
// defaults (8 elements at half-wavelength spacing for a 3.5 GHz carrier,
// 200 snapshots, noiseless, both algorithms, known source count).
ParsedConfig parse_config(const std::string& json_text);

// Serializes a scenario back to the config document form; parsing the
// result reproduces the scenario exactly.
std::string scenario_to_json(const Scenario& scenario);

}  // namespace doalab
