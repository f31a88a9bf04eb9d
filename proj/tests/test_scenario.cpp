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

#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "doalab/errors.hpp"
#include "doalab/report_io.hpp"
#include "doalab/scenario.hpp"

namespace {

using doalab::Algorithm;
using doalab::Scenario;
using doalab::SourceCountMethod;

Scenario minimal_scenario() {
    Scenario s;
    s.name = "unit";
    s.sources = {{-10.0, 0.0}, {15.0, 0.0}};
    s.noise_power_db = 0.0;
    s.source_count = SourceCountMethod::known(2);
    return s;
}

// Reference assignment: try every injective map of the shorter list into the
// longer one and keep the smallest total absolute error.
double brute_force_cost(const std::vector<double>& truths, const std::vector<double>& estimates) {
    const auto& longer = estimates.size() >= truths.size() ? estimates : truths;
    const auto& shorter = estimates.size() >= truths.size() ? truths : estimates;
    std::vector<int> idx(longer.size());
    std::iota(idx.begin(), idx.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do {
        double cost = 0.0;
        for (std::size_t j = 0; j < shorter.size(); ++j) {
            cost += std::abs(shorter[j] - longer[static_cast<std::size_t>(idx[j])]);
        }
        best = std::min(best, cost);
    } while (std::next_permutation(idx.begin(), idx.end()));
    return best;
}

}  // namespace

TEST_CASE("scenario validation rejects out-of-range settings") {
    CHECK_NOTHROW(doalab::validate(minimal_scenario()));

    auto s = minimal_scenario();
    s.name.clear();
    CHECK_THROWS_AS(doalab::validate(s), doalab::DomainError);

    s = minimal_scenario();
    s.trials = 0;
    CHECK_THROWS_AS(doalab::validate(s), doalab::DomainError);

    s = minimal_scenario();
    s.num_snapshots = 0;
    CHECK_THROWS_AS(doalab::validate(s), doalab::DomainError);

    s = minimal_scenario();
    s.algorithms.clear();
    CHECK_THROWS_AS(doalab::validate(s), doalab::DomainError);

    s = minimal_scenario();
    s.match_tolerance_deg = 0.0;
    CHECK_THROWS_AS(doalab::validate(s), doalab::DomainError);

    s = minimal_scenario();
    s.sources.clear();
    CHECK_THROWS_AS(doalab::validate(s), doalab::DomainError);
}

TEST_CASE("scenario validation bounds the known source count by the effective aperture") {
    auto s = minimal_scenario();
    s.source_count = SourceCountMethod::known(7);
    CHECK_NOTHROW(doalab::validate(s));

    s.source_count = SourceCountMethod::known(8);
    CHECK_THROWS_AS(doalab::validate(s), doalab::DomainError);

    // Smoothing shrinks the aperture the estimators see.
    s.source_count = SourceCountMethod::known(6);
    s.smoothing = {doalab::SmoothingKind::forward, 6};
    CHECK_THROWS_AS(doalab::validate(s), doalab::DomainError);
    s.source_count = SourceCountMethod::known(5);
    CHECK_NOTHROW(doalab::validate(s));

    s.smoothing = {doalab::SmoothingKind::forward, 1};
    CHECK_THROWS_AS(doalab::validate(s), doalab::DomainError);
    s.smoothing = {doalab::SmoothingKind::forward, 9};
    CHECK_THROWS_AS(doalab::validate(s), doalab::DomainError);
}

TEST_CASE("angle matching pairs each truth with its nearest unclaimed estimate") {
    const std::vector<double> one_truth = {0.0};
    const std::vector<double> one_est = {0.2};
    auto m = doalab::match_angles(one_truth, one_est, 1.0);
    REQUIRE(m.pairs.size() == 1);
    CHECK(m.pairs[0] == std::pair<int, int>{0, 0});
    CHECK(m.errors_deg[0] == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(m.missed_truths.empty());
    CHECK(m.all_within(1.0));
    CHECK_FALSE(m.all_within(0.1));
}

TEST_CASE("angle matching is order-independent") {
    const std::vector<double> truths = {-19.5, 19.5};
    const std::vector<double> estimates = {19.4, -19.5};
    auto m = doalab::match_angles(truths, estimates, 1.0);
    REQUIRE(m.pairs.size() == 2);
    CHECK(m.pairs[0] == std::pair<int, int>{0, 1});
    CHECK(m.pairs[1] == std::pair<int, int>{1, 0});
    CHECK(m.errors_deg[0] == 0.0);
    CHECK(m.errors_deg[1] == doctest::Approx(0.1).epsilon(1e-9));
    CHECK(m.total_error_deg == doctest::Approx(0.1).epsilon(1e-9));
}

TEST_CASE("angle matching reports unmatched truths as misses") {
    const std::vector<double> truths = {0.0, 5.0};
    const std::vector<double> estimates = {2.4};
    auto m = doalab::match_angles(truths, estimates, 1.0);
    REQUIRE(m.pairs.size() == 1);
    CHECK(m.pairs[0] == std::pair<int, int>{0, 0});
    CHECK(m.errors_deg[0] == doctest::Approx(2.4).epsilon(1e-12));
    REQUIRE(m.missed_truths.size() == 1);
    CHECK(m.missed_truths[0] == 1);
    CHECK_FALSE(m.all_within(5.0));
}

TEST_CASE("angle matching equals exhaustive assignment up to six angles") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> angle(-80.0, 80.0);
    const std::vector<std::pair<int, int>> shapes = {{3, 3}, {4, 2}, {2, 4}, {5, 5}, {6, 3}};
    for (auto [nt, ne] : shapes) {
        for (int rep = 0; rep < 20; ++rep) {
            std::vector<double> truths(nt), estimates(ne);
            for (auto& v : truths) v = angle(rng);
            for (auto& v : estimates) v = angle(rng);
            auto m = doalab::match_angles(truths, estimates, 1.0);
            CHECK(m.total_error_deg ==
                  doctest::Approx(brute_force_cost(truths, estimates)).epsilon(1e-12));
        }
    }
}

TEST_CASE("angle matching validates its inputs") {
    const std::vector<double> some = {1.0};
    const std::vector<double> none;
    CHECK_THROWS_AS(doalab::match_angles(none, some, 1.0), doalab::DomainError);
    CHECK_THROWS_AS(doalab::match_angles(some, none, 1.0), doalab::DomainError);
    CHECK_THROWS_AS(doalab::match_angles(some, some, 0.0), doalab::DomainError);
    CHECK_THROWS_AS(doalab::match_angles(some, some, -1.0), doalab::DomainError);
}

TEST_CASE("scenario runs are deterministic") {
    auto s = minimal_scenario();
    s.trials = 3;
    auto a = doalab::run_scenario(s);
    auto b = doalab::run_scenario(s);
    CHECK(doalab::report_to_json(a) == doalab::report_to_json(b));
}

TEST_CASE("trials advance the seed by one") {
    auto s = minimal_scenario();
    s.trials = 2;
    s.base_seed = 40;
    auto both = doalab::run_scenario(s);

    s.trials = 1;
    auto first = doalab::run_scenario(s);
    s.base_seed = 41;
    auto second = doalab::run_scenario(s);

    // Results are ordered (trial, algorithm); two algorithms per trial.
    REQUIRE(both.results.size() == 4);
    CHECK(both.results[0].doa.angles_deg == first.results[0].doa.angles_deg);
    CHECK(both.results[1].doa.angles_deg == first.results[1].doa.angles_deg);
    CHECK(both.results[2].doa.angles_deg == second.results[0].doa.angles_deg);
    CHECK(both.results[3].doa.angles_deg == second.results[1].doa.angles_deg);
}

TEST_CASE("a source count of zero is scored as a resolution failure") {
    Scenario s;
    s.name = "buried";
    s.sources = {{0.0, -300.0}};  // 300 dB below the noise floor
    s.noise_power_db = 0.0;
    s.num_snapshots = 400;
    s.algorithms = {Algorithm::music};
    s.source_count = SourceCountMethod::mdl();
    s.trials = 3;

    auto report = doalab::run_scenario(s);
    const auto& stats = report.stats.at(Algorithm::music);
    CHECK(stats.trials == 3);
    CHECK(stats.resolution_failures == 3);
    CHECK(stats.other_failures == 0);
    CHECK(stats.detections == 0);
    CHECK(stats.detection_rate == 0.0);
    for (const auto& r : report.results) {
        CHECK(r.failed);
        CHECK(r.failure_kind == "resolution_failure");
        CHECK(r.misses == 1);
    }
}

TEST_CASE("spectra are retained only on request") {
    auto s = minimal_scenario();
    auto without = doalab::run_scenario(s, false);
    for (const auto& r : without.results) CHECK_FALSE(r.doa.spectrum.has_value());

    auto with = doalab::run_scenario(s, true);
    REQUIRE(with.results.size() == 2);
    for (const auto& r : with.results) {
        if (r.algorithm == Algorithm::music) {
            REQUIRE(r.doa.spectrum.has_value());
            CHECK(r.doa.spectrum->angles_deg.size() == 1799);
        } else {
            CHECK_FALSE(r.doa.spectrum.has_value());
        }
    }
}

TEST_CASE("builtin scenarios are named, ordered, and valid") {
    auto all = doalab::builtin_scenarios();
    REQUIRE(all.size() == 7);
    const std::vector<std::string> names = {"table1",        "seven_sources", "lo_instability",
                                            "two_source_exp", "snr_drop",      "resolution_sweep",
                                            "multipath"};
    for (std::size_t i = 0; i < all.size(); ++i) {
        CHECK(all[i].name == names[i]);
        CHECK_NOTHROW(doalab::validate(all[i]));
        CHECK_FALSE(all[i].provenance.empty());
    }

    auto multipath = doalab::builtin_scenario("multipath");
    CHECK(multipath.smoothing.kind == doalab::SmoothingKind::forward);
    CHECK(multipath.smoothing.subarray_size == 6);
    REQUIRE(multipath.sources.size() == 2);
    CHECK(multipath.sources[1].coherence_group == multipath.sources[0].coherence_group);

    CHECK_THROWS_AS(doalab::builtin_scenario("nope"), doalab::NotFoundError);
}

TEST_CASE("snr sweep rescales source power against unit noise") {
    auto s = minimal_scenario();
    s.sources = {{0.0, 0.0}, {34.0, 0.0}};
    s.trials = 5;

    const std::vector<double> points = {200.0, 0.0};
    auto sweep = doalab::snr_sweep(s, points, 5);
    REQUIRE(sweep.size() == 2);
    CHECK(sweep[0].snr_db == 200.0);
    CHECK(sweep[1].snr_db == 0.0);
    for (auto alg : {Algorithm::music, Algorithm::esprit}) {
        const auto& high = sweep[0].stats.at(alg);
        const auto& low = sweep[1].stats.at(alg);
        CHECK(high.trials == 5);
        CHECK(high.rmse_deg < 0.1);
        CHECK(high.rmse_deg <= low.rmse_deg);
    }

    const std::vector<double> single = {10.0};
    CHECK_THROWS_AS(doalab::snr_sweep(s, single, 5), doalab::DomainError);
    CHECK_THROWS_AS(doalab::snr_sweep(s, points, 0), doalab::DomainError);
}

TEST_CASE("resolution sweep reports the probability of separating a pair") {
    auto base = doalab::builtin_scenario("resolution_sweep");
    const std::vector<double> separations = {1.0, 0.1};
    auto sweep = doalab::resolution_sweep(base, separations, 10);
    REQUIRE(sweep.size() == 2);
    CHECK(sweep[0].separation_deg == 1.0);
    CHECK(sweep[0].resolve_probability.at(Algorithm::music) == 1.0);
    CHECK(sweep[0].resolve_probability.at(Algorithm::esprit) == 1.0);
    CHECK(sweep[1].resolve_probability.at(Algorithm::music) == 0.0);
    CHECK(sweep[1].resolve_probability.at(Algorithm::esprit) == 1.0);

    const std::vector<double> empty;
    CHECK_THROWS_AS(doalab::resolution_sweep(base, empty, 10), doalab::DomainError);
    const std::vector<double> ascending = {0.1, 1.0};
    CHECK_THROWS_AS(doalab::resolution_sweep(base, ascending, 10), doalab::DomainError);
    const std::vector<double> nonpositive = {1.0, 0.0};
    CHECK_THROWS_AS(doalab::resolution_sweep(base, nonpositive, 10), doalab::DomainError);
    CHECK_THROWS_AS(doalab::resolution_sweep(base, separations, 0), doalab::DomainError);
}

TEST_CASE("scenario stats summarize detections and errors") {
    auto s = minimal_scenario();
    s.trials = 4;
    auto report = doalab::run_scenario(s);
    for (auto alg : {Algorithm::music, Algorithm::esprit}) {
        const auto& st = report.stats.at(alg);
        CHECK(st.trials == 4);
        CHECK(st.detections == 4);
        CHECK(st.detection_rate == 1.0);
        CHECK(st.resolution_failures == 0);
        CHECK(st.other_failures == 0);
        CHECK(st.rmse_deg < 0.5);
    }
    CHECK(report.true_angles_deg == std::vector<double>{-10.0, 15.0});
    CHECK(report.runtime_seconds > 0.0);
}
