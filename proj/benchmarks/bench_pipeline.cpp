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

#include <benchmark/benchmark.h>

#include <vector>

#include "doalab/array_model.hpp"
#include "doalab/covariance.hpp"
#include "doalab/scenario.hpp"
#include "doalab/subspace.hpp"

namespace {

using doalab::ArrayGeometry;
using doalab::SourceSpec;

const ArrayGeometry kArray = ArrayGeometry::half_wavelength(8, 3.5e9);
const std::vector<SourceSpec> kSources = {{-19.5, 0.0}, {0.0, 0.0}, {19.5, 0.0}};

doalab::SnapshotMatrix snapshots() {
    return doalab::synthesize_snapshots(kArray, kSources, 200, 0.0, 1);
}

void bm_synthesize(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(snapshots());
    }
}
BENCHMARK(bm_synthesize);

void bm_covariance(benchmark::State& state) {
    const auto x = snapshots();
    for (auto _ : state) {
        benchmark::DoNotOptimize(doalab::sample_covariance(x));
    }
}
BENCHMARK(bm_covariance);

void bm_smoothing(benchmark::State& state) {
    const auto x = snapshots();
    for (auto _ : state) {
        benchmark::DoNotOptimize(doalab::spatial_smoothing(x, 6, true));
    }
}
BENCHMARK(bm_smoothing);

void bm_eigendecompose(benchmark::State& state) {
    const auto cov = doalab::sample_covariance(snapshots());
    for (auto _ : state) {
        benchmark::DoNotOptimize(doalab::eigendecompose(cov));
    }
}
BENCHMARK(bm_eigendecompose);

void bm_music_spectrum(benchmark::State& state) {
    const auto eigs = doalab::eigendecompose(doalab::sample_covariance(snapshots()));
    const auto grid = doalab::default_grid();
    for (auto _ : state) {
        benchmark::DoNotOptimize(doalab::music_spectrum(eigs, 3, kArray, grid));
    }
}
BENCHMARK(bm_music_spectrum);

void bm_esprit(benchmark::State& state) {
    const auto eigs = doalab::eigendecompose(doalab::sample_covariance(snapshots()));
    for (auto _ : state) {
        benchmark::DoNotOptimize(doalab::esprit(eigs, 3, kArray));
    }
}
BENCHMARK(bm_esprit);

void bm_full_scenario(benchmark::State& state) {
    const auto scenario = doalab::builtin_scenario("table1");
    for (auto _ : state) {
        benchmark::DoNotOptimize(doalab::run_scenario(scenario));
    }
}
BENCHMARK(bm_full_scenario);

}  // namespace

BENCHMARK_MAIN();
