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

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "doalab/frontend.hpp"
#include "doalab/subspace.hpp"

namespace doalab {

struct SmoothingConfig {
    SmoothingKind kind = SmoothingKind::none;
    int subarray_size = 0;  // ignored when kind == none
};

// One declarative experiment: sources, receiver, covariance treatment,
// estimators, and Monte Carlo repetition. Reports are deterministic
// functions of the scenario and base_seed.
struct Scenario {
    std::string name;
    ArrayGeometry geometry = ArrayGeometry::half_wavelength(8, 3.5e9);
    std::vector<SourceSpec> sources;
    ReceiverModel receiver = ReceiverModel::ideal();
    int num_snapshots = 200;
    std::optional<double> noise_power_db;  // nullopt = noiseless
    SmoothingConfig smoothing;
    std::vector<Algorithm> algorithms = {Algorithm::music, Algorithm::esprit};
    SourceCountMethod source_count = SourceCountMethod::known(1);
    int trials = 1;
    std::uint64_t base_seed = 0;
    double match_tolerance_deg = 1.0;
    std::string provenance;  // which parameters are experiment-fixed vs chosen here
};

void validate(const Scenario& scenario);

// Minimum-total-absolute-error assignment between truth and estimates.
struct MatchResult {
    // (truth index, estimate index) pairs and their absolute errors.
    std::vector<std::pair<int, int>> pairs;
    std::vector<double> errors_deg;
    std::vector<int> missed_truths;  // truth indices left unmatched
    double total_error_deg = 0.0;

    bool all_within(double tolerance_deg) const;
};

MatchResult match_angles(std::span<const double> true_deg, std::span<const double> est_deg,
                         double tolerance_deg);

struct TrialResult {
    int trial = 0;
    Algorithm algorithm = Algorithm::music;
    bool failed = false;
    std::string failure_kind;  // "resolution_failure", "out_of_range_root", ...
    DoaResult doa;
    std::vector<double> matched_errors_deg;
    int misses = 0;
    bool detected = false;  // all sources matched within tolerance
};

struct AlgorithmStats {
    int trials = 0;
    int detections = 0;
    int resolution_failures = 0;
    int other_failures = 0;
    double rmse_deg = 0.0;       // over matched errors of successful trials
    double detection_rate = 0.0;
};

struct ScenarioReport {
    std::string scenario_name;
    std::uint64_t base_seed = 0;
    int trials = 0;
    std::vector<double> true_angles_deg;
    std::vector<TrialResult> results;            // ordered by (trial, algorithm)
    std::map<Algorithm, AlgorithmStats> stats;
    double runtime_seconds = 0.0;  // wall clock; excluded from serialized reports
};

// Runs every trial of a scenario: synthesize with seed base_seed + t, apply
// the receiver model and calibration, estimate the covariance (smoothed if
// configured), then run each selected algorithm and score it against the
// true angles. Estimator errors become counted outcomes, not aborts.
// keep_spectra retains each MUSIC pseudospectrum in the report.
ScenarioReport run_scenario(const Scenario& scenario, bool keep_spectra = false);

// The named experiment set. Every scenario documents in `provenance` which
// of its parameters the experiment fixes and which are defaults chosen here.
std::vector<Scenario> builtin_scenarios();
Scenario builtin_scenario(const std::string& name);

struct SnrSweepPoint {
    double snr_db = 0.0;
    std::map<Algorithm, AlgorithmStats> stats;
};

// Reruns the scenario once per SNR point with every source's power set to
// the point value against unit (0 dB) noise.
std::vector<SnrSweepPoint> snr_sweep(const Scenario& base, std::span<const double> snr_points_db,
                                     int trials);

struct ResolutionSweepPoint {
    double separation_deg = 0.0;
    // Fraction of trials where the algorithm produced two estimates each
    // within separation/2 of its truth.
    std::map<Algorithm, double> resolve_probability;
};

// Two equal-power sources centered at 0 degrees, separated by each listed
// amount (descending).
std::vector<ResolutionSweepPoint> resolution_sweep(const Scenario& base,
                                                   std::span<const double> separations_deg,
                                                   int trials);

}  // namespace doalab
