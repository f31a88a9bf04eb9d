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

#include "doalab/report_io.hpp"

#include <charconv>
#include <system_error>

#include "json.hpp"

#include "doalab/errors.hpp"

namespace doalab {

namespace {

using Json = nlohmann::ordered_json;

Json stats_to_json(const AlgorithmStats& stats) {
    Json j;
    j["trials"] = stats.trials;
    j["detections"] = stats.detections;
    j["resolution_failures"] = stats.resolution_failures;
    j["other_failures"] = stats.other_failures;
    j["rmse_deg"] = stats.rmse_deg;
    j["detection_rate"] = stats.detection_rate;
    return j;
}

}  // namespace

std::string format_double(double value) {
    char buffer[32];
    const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
    if (result.ec != std::errc{}) {
        throw NumericError("format_double: value does not fit the buffer");
    }
    return std::string(buffer, result.ptr);
}

std::string report_to_json(const ScenarioReport& report) {
    Json doc;
    doc["scenario"] = report.scenario_name;
    doc["base_seed"] = report.base_seed;
    doc["trials"] = report.trials;
    doc["true_angles_deg"] = report.true_angles_deg;

    Json stats;
    for (const auto& [algorithm, s] : report.stats) {
        stats[to_string(algorithm)] = stats_to_json(s);
    }
    doc["stats"] = std::move(stats);

    Json results = Json::array();
    for (const TrialResult& r : report.results) {
        Json j;
        j["trial"] = r.trial;
        j["algorithm"] = to_string(r.algorithm);
        j["failed"] = r.failed;
        if (r.failed) j["failure_kind"] = r.failure_kind;
        j["source_count"] = r.doa.source_count;
        j["angles_deg"] = r.doa.angles_deg;
        j["levels_db"] = r.doa.levels_db;
        j["matched_errors_deg"] = r.matched_errors_deg;
        j["misses"] = r.misses;
        j["detected"] = r.detected;
        j["eigenvalues"] = r.doa.eigenvalue_profile;
        results.push_back(std::move(j));
    }
    doc["results"] = std::move(results);
    return doc.dump(2) + "\n";
}

std::string estimates_to_csv(const ScenarioReport& report) {
    std::string csv = "trial,algorithm,angle_index,angle_deg,level_db\n";
    for (const TrialResult& r : report.results) {
        if (r.failed) continue;
        for (std::size_t i = 0; i < r.doa.angles_deg.size(); ++i) {
            csv += std::to_string(r.trial);
            csv += ',';
            csv += to_string(r.algorithm);
            csv += ',';
            csv += std::to_string(i);
            csv += ',';
            csv += format_double(r.doa.angles_deg[i]);
            csv += ',';
            csv += i < r.doa.levels_db.size() ? format_double(r.doa.levels_db[i]) : "";
            csv += '\n';
        }
    }
    return csv;
}

std::string spectrum_to_csv(const Spectrum& spectrum) {
    std::string csv = "angle_deg,power_db\n";
    for (std::size_t i = 0; i < spectrum.angles_deg.size(); ++i) {
        csv += format_double(spectrum.angles_deg[i]);
        csv += ',';
        csv += format_double(spectrum.values_db[i]);
        csv += '\n';
    }
    return csv;
}

}  // namespace doalab
