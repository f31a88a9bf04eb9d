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

// Shortest decimal representation that reparses to the same double, '.'
// decimal separator. Used for every number written to CSV.
std::string format_double(double value);

// report.json payload: scenario identity, per-trial results, per-algorithm
// aggregates. Volatile fields (wall-clock runtime) are excluded so identical
// seeds yield byte-identical documents.
std::string report_to_json(const ScenarioReport& report);

// estimates.csv: trial,algorithm,angle_index,angle_deg,level_db
// (header row, ',' delimiter, LF line endings; failed trials emit no rows).
std::string estimates_to_csv(const ScenarioReport& report);

// spectrum_<trial>.csv: angle_deg,power_db
std::string spectrum_to_csv(const Spectrum& spectrum);

}  // namespace doalab
