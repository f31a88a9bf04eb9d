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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "doalab/covariance.hpp"

namespace doalab {

// Full Hermitian eigendecomposition, eigenvalues sorted descending,
// eigenvector columns aligned with them.
struct EigenStructure {
    RealVector eigenvalues;
    CxMatrix eigenvectors;

    int dimension() const { return static_cast<int>(eigenvalues.size()); }
};

EigenStructure eigendecompose(const CovarianceMatrix& covariance);

// Model-order selection. known returns the given count verbatim; threshold
// counts eigenvalues above ratio * max; mdl and aic minimize the standard
// information criteria over k = 0..p-1.
enum class OrderMethod { known, threshold, mdl, aic };

struct SourceCountMethod {
    OrderMethod method = OrderMethod::known;
    int known_count = 1;          // known
    double threshold_ratio = 1e-6;  // threshold

    static SourceCountMethod known(int count);
    static SourceCountMethod threshold(double ratio);
    static SourceCountMethod mdl();
    static SourceCountMethod aic();
};

int estimate_source_count(const EigenStructure& eigs, const SourceCountMethod& method,
                          int num_snapshots);

struct Spectrum {
    std::vector<double> angles_deg;
    std::vector<double> values_db;  // normalized so the maximum is 0 dB
};

// Default pseudospectrum grid: -89.9..89.9 degrees, 0.1 degree step.
std::vector<double> default_grid();

// MUSIC pseudospectrum P(theta) = 1 / max(a^H En En^H a, 1e-12) over the
// grid, with En the dimension-minus-K minor eigenvectors. Steering vectors
// are built at the eigenstructure's dimension (subarray size after
// smoothing) using the geometry's element spacing.
Spectrum music_spectrum(const EigenStructure& eigs, int num_sources,
                        const ArrayGeometry& geometry, std::span<const double> grid_deg);

// Strict local maxima of the spectrum (endpoints excluded), refined by
// three-point parabolic interpolation; returns the num_peaks largest by
// height, sorted ascending, ties toward the smaller angle. Throws
// ResolutionFailure carrying the peaks found when there are too few.
std::vector<double> find_peaks(const Spectrum& spectrum, int num_peaks);

enum class EspritVariant { ls, tls };

// Rotational-invariance estimate from the two maximally overlapping
// subarrays: solve E1 Psi ~= E2 in least squares or total least squares,
// then map the eigenvalues of Psi to angles. Sorted ascending.
std::vector<double> esprit(const EigenStructure& eigs, int num_sources,
                           const ArrayGeometry& geometry,
                           EspritVariant variant = EspritVariant::tls);

// Least-squares fit of per-source powers: R ~= A diag(P) A^H + sigma^2 I with
// sigma^2 the mean of the minor eigenvalues; returns 10*log10(P) clamped at
// -100 dB.
std::vector<double> estimate_levels(const CovarianceMatrix& covariance,
                                    std::span<const double> angles_deg,
                                    const ArrayGeometry& geometry);

enum class Algorithm { music, esprit };

std::string to_string(Algorithm algorithm);

struct DoaResult {
    Algorithm algorithm = Algorithm::music;
    std::vector<double> angles_deg;   // sorted ascending
    std::vector<double> levels_db;
    int source_count = 0;
    std::optional<Spectrum> spectrum;  // populated for MUSIC when requested
    std::vector<double> eigenvalue_profile;
};

}  // namespace doalab
