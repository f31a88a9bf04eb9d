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

#include "doalab/array_model.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <string>

#include "doalab/rng.hpp"

namespace doalab {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

// Substream tags for synthesize_snapshots; waveform streams add the group
// index so coherence groups never share draws with each other or the noise.
constexpr std::uint64_t kWaveformStream = 0x100000;
constexpr std::uint64_t kNoiseStream = 0x200000;

double db_to_amplitude(double db) { return std::pow(10.0, db / 20.0); }

}  // namespace

double wavelength(double carrier_freq_hz) {
    if (!(carrier_freq_hz > 0.0)) {
        throw DomainError("wavelength: carrier_freq_hz must be > 0, got " +
                          std::to_string(carrier_freq_hz));
    }
    return kSpeedOfLight / carrier_freq_hz;
}

ArrayGeometry::ArrayGeometry(int num_elements_, double spacing_m_, double carrier_freq_hz_)
    : num_elements(num_elements_), spacing_m(spacing_m_), carrier_freq_hz(carrier_freq_hz_) {
    if (num_elements < 2) {
        throw DomainError("ArrayGeometry: num_elements must be >= 2, got " +
                          std::to_string(num_elements));
    }
    if (!(spacing_m > 0.0)) {
        throw DomainError("ArrayGeometry: spacing_m must be > 0");
    }
    if (!(carrier_freq_hz > 0.0)) {
        throw DomainError("ArrayGeometry: carrier_freq_hz must be > 0");
    }
    aliasing_warning = spacing_wavelengths() > 0.5;
}

ArrayGeometry ArrayGeometry::half_wavelength(int num_elements, double carrier_freq_hz) {
    return ArrayGeometry(num_elements, wavelength(carrier_freq_hz) / 2.0, carrier_freq_hz);
}

double phase_delay(double aoa_deg, const ArrayGeometry& geometry) {
    if (aoa_deg < -90.0 || aoa_deg > 90.0) {
        throw DomainError("phase_delay: aoa_deg must lie in [-90, 90], got " +
                          std::to_string(aoa_deg));
    }
    return 2.0 * std::numbers::pi * geometry.spacing_wavelengths() * std::sin(aoa_deg * kDegToRad);
}

CxVector steering_vector(double aoa_deg, double spacing_wavelengths, int num_elements) {
    const double phi =
        2.0 * std::numbers::pi * spacing_wavelengths * std::sin(aoa_deg * kDegToRad);
    CxVector a(num_elements);
    for (int k = 0; k < num_elements; ++k) {
        a[k] = std::polar(1.0, static_cast<double>(k) * phi);
    }
    a[0] = 1.0;
    return a;
}

CxVector steering_vector(double aoa_deg, const ArrayGeometry& geometry) {
    return steering_vector(aoa_deg, geometry.spacing_wavelengths(), geometry.num_elements);
}

void validate_sources(const std::vector<SourceSpec>& sources) {
    if (sources.empty()) {
        throw DomainError("sources: list must not be empty");
    }
    std::map<int, int> reference_count;
    std::map<int, int> member_count;
    for (std::size_t i = 0; i < sources.size(); ++i) {
        const SourceSpec& s = sources[i];
        if (!(s.aoa_deg > -90.0 && s.aoa_deg < 90.0)) {
            throw DomainError("sources[" + std::to_string(i) +
                              "].aoa_deg must lie strictly inside (-90, 90), got " +
                              std::to_string(s.aoa_deg));
        }
        if (s.coherence_group) {
            member_count[*s.coherence_group]++;
            if (s.path_gain_db == 0.0 && s.path_phase_deg == 0.0) {
                reference_count[*s.coherence_group]++;
            }
        } else if (s.path_gain_db != 0.0 || s.path_phase_deg != 0.0) {
            throw DomainError("sources[" + std::to_string(i) +
                              "]: path_gain_db/path_phase_deg require a coherence_group");
        }
    }
    for (const auto& [group, members] : member_count) {
        const int refs = reference_count.count(group) ? reference_count.at(group) : 0;
        if (refs != 1) {
            throw DomainError("coherence_group " + std::to_string(group) +
                              ": exactly one member must be the reference with "
                              "path_gain_db = 0 and path_phase_deg = 0 (found " +
                              std::to_string(refs) + ")");
        }
    }
}

SnapshotMatrix synthesize_snapshots(const ArrayGeometry& geometry,
                                    const std::vector<SourceSpec>& sources, int num_snapshots,
                                    std::optional<double> noise_power_db, std::uint64_t rng_seed) {
    validate_sources(sources);
    if (num_snapshots < 1) {
        throw DomainError("synthesize_snapshots: num_snapshots must be >= 1, got " +
                          std::to_string(num_snapshots));
    }

    const int n = geometry.num_elements;
    const int m = num_snapshots;
    const int num_sources = static_cast<int>(sources.size());

    // Waveform stream index per source: explicit groups keep one shared
    // stream; ungrouped sources each get their own.
    std::map<int, int> group_stream;  // coherence_group tag -> stream index
    std::vector<int> source_stream(num_sources);
    int next_stream = 0;
    for (int i = 0; i < num_sources; ++i) {
        if (sources[i].coherence_group) {
            auto [it, inserted] = group_stream.try_emplace(*sources[i].coherence_group, next_stream);
            if (inserted) ++next_stream;
            source_stream[i] = it->second;
        } else {
            source_stream[i] = next_stream++;
        }
    }
    const int num_groups = next_stream;

    // One unit-power waveform per group, drawn in stream order.
    CxMatrix waveforms(num_groups, m);
    for (int g = 0; g < num_groups; ++g) {
        rng::NormalStream stream(rng::derive(rng_seed, kWaveformStream + static_cast<std::uint64_t>(g)));
        for (int t = 0; t < m; ++t) {
            waveforms(g, t) = stream.next_complex();
        }
    }

    CxMatrix steering(n, num_sources);
    CxVector amplitudes(num_sources);
    for (int i = 0; i < num_sources; ++i) {
        steering.col(i) = steering_vector(sources[i].aoa_deg, geometry);
        amplitudes[i] = std::polar(db_to_amplitude(sources[i].power_db + sources[i].path_gain_db),
                                   sources[i].path_phase_deg * kDegToRad);
    }

    CxMatrix source_matrix(num_sources, m);
    for (int i = 0; i < num_sources; ++i) {
        source_matrix.row(i) = amplitudes[i] * waveforms.row(source_stream[i]);
    }

    SnapshotMatrix out{steering * source_matrix, geometry};
    if (noise_power_db) {
        const double sigma = db_to_amplitude(*noise_power_db);
        rng::NormalStream stream(rng::derive(rng_seed, kNoiseStream));
        for (int t = 0; t < m; ++t) {
            for (int k = 0; k < n; ++k) {
                out.data(k, t) += sigma * stream.next_complex();
            }
        }
    }
    return out;
}

}  // namespace doalab
