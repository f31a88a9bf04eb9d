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

#include "doalab/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "doalab/covariance.hpp"
#include "doalab/errors.hpp"

namespace doalab {

namespace {

// Indices 0..n-1 ordered so values[order[i]] ascends.
std::vector<int> sorted_order(std::span<const double> values) {
    std::vector<int> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return values[a] < values[b]; });
    return order;
}

CovarianceMatrix scenario_covariance(const SnapshotMatrix& snapshots,
                                     const SmoothingConfig& smoothing) {
    switch (smoothing.kind) {
        case SmoothingKind::none:
            return sample_covariance(snapshots);
        case SmoothingKind::forward:
            return spatial_smoothing(snapshots, smoothing.subarray_size, false);
        case SmoothingKind::forward_backward:
            return spatial_smoothing(snapshots, smoothing.subarray_size, true);
    }
    throw DomainError("scenario: unknown smoothing kind");
}

AlgorithmStats summarize(const std::vector<TrialResult>& results, Algorithm algorithm) {
    AlgorithmStats stats;
    double sq_sum = 0.0;
    int err_count = 0;
    for (const TrialResult& r : results) {
        if (r.algorithm != algorithm) continue;
        ++stats.trials;
        if (r.failed) {
            if (r.failure_kind == "resolution_failure") {
                ++stats.resolution_failures;
            } else {
                ++stats.other_failures;
            }
            continue;
        }
        if (r.detected) ++stats.detections;
        for (double e : r.matched_errors_deg) {
            sq_sum += e * e;
            ++err_count;
        }
    }
    if (err_count > 0) stats.rmse_deg = std::sqrt(sq_sum / err_count);
    if (stats.trials > 0) {
        stats.detection_rate = static_cast<double>(stats.detections) / stats.trials;
    }
    return stats;
}

}  // namespace

void validate(const Scenario& scenario) {
    if (scenario.name.empty()) {
        throw DomainError("scenario.name: must be nonempty");
    }
    if (scenario.trials < 1) {
        throw DomainError("scenario.trials: must be >= 1, got " +
                          std::to_string(scenario.trials));
    }
    if (scenario.num_snapshots < 1) {
        throw DomainError("scenario.num_snapshots: must be >= 1, got " +
                          std::to_string(scenario.num_snapshots));
    }
    if (scenario.algorithms.empty()) {
        throw DomainError("scenario.algorithms: at least one algorithm must be selected");
    }
    if (!(scenario.match_tolerance_deg > 0.0)) {
        throw DomainError("scenario.match_tolerance_deg: must be > 0");
    }
    validate_sources(scenario.sources);
    validate(scenario.receiver, scenario.geometry.num_elements);

    int effective = scenario.geometry.num_elements;
    if (scenario.smoothing.kind != SmoothingKind::none) {
        if (scenario.smoothing.subarray_size < 2 ||
            scenario.smoothing.subarray_size > scenario.geometry.num_elements) {
            throw DomainError("scenario.smoothing.subarray_size: must lie in [2, " +
                              std::to_string(scenario.geometry.num_elements) + "], got " +
                              std::to_string(scenario.smoothing.subarray_size));
        }
        effective = scenario.smoothing.subarray_size;
    }
    if (scenario.source_count.method == OrderMethod::known &&
        (scenario.source_count.known_count < 1 ||
         scenario.source_count.known_count >= effective)) {
        throw DomainError("scenario.source_count: known count must lie in [1, " +
                          std::to_string(effective - 1) + "], got " +
                          std::to_string(scenario.source_count.known_count));
    }
}

bool MatchResult::all_within(double tolerance_deg) const {
    if (!missed_truths.empty()) return false;
    return std::all_of(errors_deg.begin(), errors_deg.end(),
                       [tolerance_deg](double e) { return e <= tolerance_deg; });
}

MatchResult match_angles(std::span<const double> true_deg, std::span<const double> est_deg,
                         double tolerance_deg) {
    if (true_deg.empty() || est_deg.empty()) {
        throw DomainError("match_angles: both angle lists must be nonempty");
    }
    if (!(tolerance_deg > 0.0)) {
        throw DomainError("match_angles: tolerance_deg must be > 0");
    }

    // The optimal assignment between two equally long sorted lists under
    // absolute error is the in-order pairing, so only the subset of the
    // longer list needs searching.
    const bool more_estimates = est_deg.size() >= true_deg.size();
    const auto& longer = more_estimates ? est_deg : true_deg;
    const auto& shorter = more_estimates ? true_deg : est_deg;
    const std::vector<int> longer_order = sorted_order(longer);
    const std::vector<int> shorter_order = sorted_order(shorter);
    const std::size_t n = longer.size();
    const std::size_t k = shorter.size();

    std::vector<char> mask(n, 0);
    std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(k), 1);
    std::vector<int> best_subset;
    double best_cost = std::numeric_limits<double>::infinity();
    std::vector<int> subset(k);
    do {
        std::size_t j = 0;
        double cost = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!mask[i]) continue;
            subset[j] = longer_order[i];
            cost += std::abs(longer[longer_order[i]] - shorter[shorter_order[j]]);
            ++j;
        }
        if (cost < best_cost) {
            best_cost = cost;
            best_subset = subset;
        }
    } while (std::prev_permutation(mask.begin(), mask.end()));

    MatchResult result;
    result.total_error_deg = best_cost;
    std::vector<char> truth_used(true_deg.size(), 0);
    for (std::size_t j = 0; j < k; ++j) {
        const int truth_idx = more_estimates ? shorter_order[j] : best_subset[j];
        const int est_idx = more_estimates ? best_subset[j] : shorter_order[j];
        result.pairs.emplace_back(truth_idx, est_idx);
        truth_used[truth_idx] = 1;
    }
    std::sort(result.pairs.begin(), result.pairs.end());
    for (const auto& [truth_idx, est_idx] : result.pairs) {
        result.errors_deg.push_back(std::abs(true_deg[truth_idx] - est_deg[est_idx]));
    }
    for (std::size_t i = 0; i < true_deg.size(); ++i) {
        if (!truth_used[i]) result.missed_truths.push_back(static_cast<int>(i));
    }
    return result;
}

ScenarioReport run_scenario(const Scenario& scenario, bool keep_spectra) {
    validate(scenario);
    const auto start = std::chrono::steady_clock::now();

    ScenarioReport report;
    report.scenario_name = scenario.name;
    report.base_seed = scenario.base_seed;
    report.trials = scenario.trials;
    for (const SourceSpec& s : scenario.sources) {
        report.true_angles_deg.push_back(s.aoa_deg);
    }

    const std::vector<double> grid = default_grid();
    for (int t = 0; t < scenario.trials; ++t) {
        const std::uint64_t seed = scenario.base_seed + static_cast<std::uint64_t>(t);
        SnapshotMatrix snapshots = synthesize_snapshots(
            scenario.geometry, scenario.sources, scenario.num_snapshots,
            scenario.noise_power_db, seed);
        snapshots = apply_receiver(snapshots, scenario.receiver, seed);
        snapshots = calibrate(snapshots, scenario.receiver);
        const CovarianceMatrix cov = scenario_covariance(snapshots, scenario.smoothing);
        const EigenStructure eigs = eigendecompose(cov);

        for (Algorithm algorithm : scenario.algorithms) {
            TrialResult trial;
            trial.trial = t;
            trial.algorithm = algorithm;
            trial.doa.algorithm = algorithm;
            trial.doa.eigenvalue_profile.assign(eigs.eigenvalues.begin(),
                                                eigs.eigenvalues.end());
            try {
                const int count =
                    estimate_source_count(eigs, scenario.source_count, scenario.num_snapshots);
                trial.doa.source_count = count;
                if (count < 1) {
                    throw ResolutionFailure(static_cast<int>(scenario.sources.size()), {});
                }
                if (algorithm == Algorithm::music) {
                    Spectrum spectrum = music_spectrum(eigs, count, scenario.geometry, grid);
                    trial.doa.angles_deg = find_peaks(spectrum, count);
                    if (keep_spectra) trial.doa.spectrum = std::move(spectrum);
                } else {
                    trial.doa.angles_deg = esprit(eigs, count, scenario.geometry);
                }
                trial.doa.levels_db =
                    estimate_levels(cov, trial.doa.angles_deg, scenario.geometry);

                const MatchResult match = match_angles(
                    report.true_angles_deg, trial.doa.angles_deg, scenario.match_tolerance_deg);
                trial.matched_errors_deg = match.errors_deg;
                trial.misses = static_cast<int>(match.missed_truths.size());
                trial.detected = match.all_within(scenario.match_tolerance_deg);
            } catch (const ResolutionFailure& failure) {
                trial.failed = true;
                trial.failure_kind = "resolution_failure";
                trial.doa.angles_deg.clear();
                for (const Peak& p : failure.found()) {
                    trial.doa.angles_deg.push_back(p.angle_deg);
                }
                trial.misses = static_cast<int>(scenario.sources.size());
            } catch (const OutOfRangeRootError&) {
                trial.failed = true;
                trial.failure_kind = "out_of_range_root";
                trial.doa.angles_deg.clear();
                trial.misses = static_cast<int>(scenario.sources.size());
            } catch (const NumericError&) {
                trial.failed = true;
                trial.failure_kind = "numeric_error";
                trial.doa.angles_deg.clear();
                trial.misses = static_cast<int>(scenario.sources.size());
            }
            report.results.push_back(std::move(trial));
        }
    }

    for (Algorithm algorithm : scenario.algorithms) {
        report.stats[algorithm] = summarize(report.results, algorithm);
    }
    report.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

std::vector<Scenario> builtin_scenarios() {
    std::vector<Scenario> scenarios;

    {
        Scenario s;
        s.name = "table1";
        s.sources = {{51.1}, {19.5}, {0.0}, {-19.5}, {-51.1}};
        s.source_count = SourceCountMethod::known(5);
        s.trials = 1;
        s.provenance =
            "experiment-fixed: source angles {51.1, 19.5, 0, -19.5, -51.1} deg, n=8, "
            "half-wavelength spacing at 3.5 GHz, 200 snapshots, noiseless; "
            "chosen here: trials=1, base_seed=0";
        scenarios.push_back(std::move(s));
    }
    {
        Scenario s;
        s.name = "seven_sources";
        s.sources = {{-60.0}, {-40.0}, {-20.0}, {0.0}, {20.0}, {40.0}, {60.0}};
        s.source_count = SourceCountMethod::known(7);
        s.trials = 20;
        s.provenance =
            "experiment-fixed: seven incoherent sources, n=8, noiseless; "
            "chosen here: angles {-60..60} deg in 20 deg steps, trials=20, base_seed=0";
        scenarios.push_back(std::move(s));
    }
    {
        Scenario s;
        s.name = "lo_instability";
        s.sources = {{-23.0}, {34.0}};
        s.receiver = ReceiverModel::five_port({}, {}, 0.5, 1.0);
        s.source_count = SourceCountMethod::known(2);
        s.trials = 200;
        s.provenance =
            "experiment-fixed: source angles -23 and 34 deg, five-port receiver with "
            "unstable LO; chosen here: jitter stds 0.5 rad / 1 dB, trials=200, base_seed=0";
        scenarios.push_back(std::move(s));
    }
    {
        Scenario s;
        s.name = "two_source_exp";
        s.sources = {{0.0, 20.0}, {34.0, 20.0}};
        s.noise_power_db = 0.0;
        s.source_count = SourceCountMethod::known(2);
        s.trials = 100;
        s.provenance =
            "experiment-fixed: source angles 0 and 34 deg; "
            "chosen here: per-source SNR 20 dB against unit noise, trials=100, base_seed=0";
        scenarios.push_back(std::move(s));
    }
    {
        Scenario s;
        s.name = "snr_drop";
        s.sources = {{0.0, 0.0}, {34.0, 0.0}};
        s.noise_power_db = 0.0;
        s.source_count = SourceCountMethod::known(2);
        s.trials = 100;
        s.provenance =
            "experiment-fixed: source angles 0 and 34 deg, SNR 20 dB below two_source_exp; "
            "chosen here: absolute SNR 0 dB against unit noise, trials=100, base_seed=0";
        scenarios.push_back(std::move(s));
    }
    {
        Scenario s;
        s.name = "resolution_sweep";
        s.sources = {{-0.5}, {0.5}};
        s.source_count = SourceCountMethod::known(2);
        s.trials = 50;
        s.provenance =
            "experiment-fixed: two equal-power sources centered at 0 deg, 1 deg apart, "
            "noiseless; chosen here: trials=50, base_seed=0";
        scenarios.push_back(std::move(s));
    }
    {
        Scenario s;
        s.name = "multipath";
        s.sources = {{0.0, 0.0, 0, 0.0, 0.0}, {27.0, 0.0, 0, 6.0, 0.0}};
        s.smoothing = {SmoothingKind::forward, 6};
        s.source_count = SourceCountMethod::known(2);
        s.trials = 20;
        s.provenance =
            "experiment-fixed: coherent paths at 0 and 27 deg with the 27 deg path 6 dB "
            "stronger, forward smoothing; chosen here: subarray size 6, in-phase paths, "
            "trials=20, base_seed=0";
        scenarios.push_back(std::move(s));
    }
    return scenarios;
}

Scenario builtin_scenario(const std::string& name) {
    std::vector<Scenario> all = builtin_scenarios();
    for (Scenario& s : all) {
        if (s.name == name) return std::move(s);
    }
    std::ostringstream os;
    os << "unknown builtin scenario '" << name << "'; available:";
    for (const Scenario& s : all) {
        os << ' ' << s.name;
    }
    throw NotFoundError(os.str());
}

std::vector<SnrSweepPoint> snr_sweep(const Scenario& base, std::span<const double> snr_points_db,
                                     int trials) {
    if (snr_points_db.size() < 2) {
        throw DomainError("snr_sweep: need at least 2 SNR points");
    }
    if (trials < 1) {
        throw DomainError("snr_sweep: trials must be >= 1");
    }
    std::vector<SnrSweepPoint> points;
    points.reserve(snr_points_db.size());
    for (double snr : snr_points_db) {
        Scenario s = base;
        for (SourceSpec& src : s.sources) {
            src.power_db = snr;
        }
        s.noise_power_db = 0.0;
        s.trials = trials;
        const ScenarioReport report = run_scenario(s);
        points.push_back(SnrSweepPoint{snr, report.stats});
    }
    return points;
}

std::vector<ResolutionSweepPoint> resolution_sweep(const Scenario& base,
                                                   std::span<const double> separations_deg,
                                                   int trials) {
    if (separations_deg.empty()) {
        throw DomainError("resolution_sweep: need at least 1 separation");
    }
    for (std::size_t i = 0; i < separations_deg.size(); ++i) {
        if (!(separations_deg[i] > 0.0)) {
            throw DomainError("resolution_sweep: separations must be > 0");
        }
        if (i > 0 && separations_deg[i] >= separations_deg[i - 1]) {
            throw DomainError("resolution_sweep: separations must be strictly descending");
        }
    }
    if (trials < 1) {
        throw DomainError("resolution_sweep: trials must be >= 1");
    }

    std::vector<ResolutionSweepPoint> points;
    points.reserve(separations_deg.size());
    for (double sep : separations_deg) {
        Scenario s = base;
        s.sources = {{-sep / 2.0}, {sep / 2.0}};
        s.source_count = SourceCountMethod::known(2);
        s.trials = trials;
        const ScenarioReport report = run_scenario(s);

        ResolutionSweepPoint point;
        point.separation_deg = sep;
        for (Algorithm algorithm : s.algorithms) {
            int resolved = 0;
            int total = 0;
            for (const TrialResult& r : report.results) {
                if (r.algorithm != algorithm) continue;
                ++total;
                if (r.failed || r.misses > 0) continue;
                const bool ok = std::all_of(
                    r.matched_errors_deg.begin(), r.matched_errors_deg.end(),
                    [sep](double e) { return e <= sep / 2.0; });
                if (ok) ++resolved;
            }
            point.resolve_probability[algorithm] =
                total > 0 ? static_cast<double>(resolved) / total : 0.0;
        }
        points.push_back(std::move(point));
    }
    return points;
}

}  // namespace doalab
