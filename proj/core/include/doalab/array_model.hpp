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

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "doalab/errors.hpp"

namespace doalab {

using CxMatrix = Eigen::MatrixXcd;
using CxVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

/// Free-space wavelength of a carrier, in meters.
double wavelength(double carrier_freq_hz);

// Uniform linear array: n coplanar elements on a line, equal spacing, with
// element 0 as the phase reference.
struct ArrayGeometry {
    int num_elements = 0;
    double spacing_m = 0.0;
    double carrier_freq_hz = 0.0;

    ArrayGeometry(int num_elements, double spacing_m, double carrier_freq_hz);

    // Spacing set to half the carrier wavelength (unambiguous ULA).
    static ArrayGeometry half_wavelength(int num_elements, double carrier_freq_hz);

    double wavelength_m() const { return kSpeedOfLight / carrier_freq_hz; }
    double spacing_wavelengths() const { return spacing_m / wavelength_m(); }

    // Set at construction when spacing exceeds lambda/2; such geometries are
    // valid but ambiguous (a plane wave aliases onto a second angle).
    bool aliasing_warning = false;

    bool operator==(const ArrayGeometry&) const = default;
};

// One impinging plane wave. Sources sharing a coherence_group tag are fully
// correlated copies of a single waveform, shifted by the deterministic
// path gain/phase below; an unset group means the source is independent.
struct SourceSpec {
    double aoa_deg = 0.0;              // angle from array normal, (-90, 90)
    double power_db = 0.0;             // waveform power relative to unit noise
    std::optional<int> coherence_group;
    double path_gain_db = 0.0;         // coherent-copy gain, 0 for the group reference
    double path_phase_deg = 0.0;       // coherent-copy phase, 0 for the group reference

    bool operator==(const SourceSpec&) const = default;
};

// One row per element, one column per time snapshot; entries are baseband
// complex envelopes.
struct SnapshotMatrix {
    CxMatrix data;
    ArrayGeometry geometry;
    bool calibrated = false;

    int num_snapshots() const { return static_cast<int>(data.cols()); }
};

// Electrical phase delay between consecutive elements for a wave from
// aoa_deg: 2*pi*(spacing/lambda)*sin(theta). Positive angles give positive
// delay.
double phase_delay(double aoa_deg, const ArrayGeometry& geometry);

// Array response a(theta); component k is exp(i*k*phase_delay), component 0
// is exactly 1.
CxVector steering_vector(double aoa_deg, const ArrayGeometry& geometry);

// Same response for an arbitrary element count at the given spacing, used by
// the estimators when a smoothed covariance has fewer effective elements
// than the physical array.
CxVector steering_vector(double aoa_deg, double spacing_wavelengths, int num_elements);

// Synthesize X = A*S + N: independent unit-power circular complex Gaussian
// waveforms per coherence group, scaled per source by power and coherent
// path gain/phase, plus white circular complex Gaussian noise of the given
// power (nullopt = noiseless). Identical seed and inputs give a bit-identical
// matrix.
SnapshotMatrix synthesize_snapshots(const ArrayGeometry& geometry,
                                    const std::vector<SourceSpec>& sources,
                                    int num_snapshots,
                                    std::optional<double> noise_power_db,
                                    std::uint64_t rng_seed);

// Checks the SourceSpec invariants for a whole source list (angle range and
// one-reference-per-group rule); throws DomainError naming the violation.
void validate_sources(const std::vector<SourceSpec>& sources);

}  // namespace doalab
