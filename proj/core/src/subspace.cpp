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

#include "doalab/subspace.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "doalab/errors.hpp"

namespace doalab {

namespace {

constexpr double kRadToDeg = 180.0 / std::numbers::pi;
constexpr double kSpectrumFloor = 1e-12;
constexpr double kLevelFloorDb = -100.0;
constexpr double kMaxLevelCondition = 1e8;

void require_subspace_split(int num_sources, int dimension, const char* who) {
    if (num_sources < 1 || num_sources >= dimension) {
        throw DomainError(std::string(who) + ": num_sources must lie in [1, " +
                          std::to_string(dimension - 1) + "], got " +
                          std::to_string(num_sources));
    }
}

}  // namespace

EigenStructure eigendecompose(const CovarianceMatrix& covariance) {
    const auto p = covariance.data.rows();
    if (p < 1 || covariance.data.cols() != p) {
        throw DomainError("eigendecompose: covariance must be square and nonempty");
    }
    Eigen::SelfAdjointEigenSolver<CxMatrix> solver(covariance.data);
    if (solver.info() != Eigen::Success) {
        throw NumericError("eigendecompose: Hermitian eigensolver did not converge");
    }
    EigenStructure out;
    out.eigenvalues = solver.eigenvalues().reverse();
    out.eigenvectors = solver.eigenvectors().rowwise().reverse();
    return out;
}

SourceCountMethod SourceCountMethod::known(int count) {
    if (count < 1) {
        throw DomainError("SourceCountMethod::known: count must be >= 1, got " +
                          std::to_string(count));
    }
    SourceCountMethod m;
    m.method = OrderMethod::known;
    m.known_count = count;
    return m;
}

SourceCountMethod SourceCountMethod::threshold(double ratio) {
    if (!(ratio > 0.0) || ratio >= 1.0) {
        throw DomainError("SourceCountMethod::threshold: ratio must lie in (0, 1), got " +
                          std::to_string(ratio));
    }
    SourceCountMethod m;
    m.method = OrderMethod::threshold;
    m.threshold_ratio = ratio;
    return m;
}

SourceCountMethod SourceCountMethod::mdl() {
    SourceCountMethod m;
    m.method = OrderMethod::mdl;
    return m;
}

SourceCountMethod SourceCountMethod::aic() {
    SourceCountMethod m;
    m.method = OrderMethod::aic;
    return m;
}

int estimate_source_count(const EigenStructure& eigs, const SourceCountMethod& method,
                          int num_snapshots) {
    const int p = eigs.dimension();
    switch (method.method) {
        case OrderMethod::known: {
            require_subspace_split(method.known_count, p, "estimate_source_count");
            return method.known_count;
        }
        case OrderMethod::threshold: {
            if (!(method.threshold_ratio > 0.0) || method.threshold_ratio >= 1.0) {
                throw DomainError("estimate_source_count: threshold_ratio must lie in (0, 1)");
            }
            const double cut = method.threshold_ratio * eigs.eigenvalues[0];
            int count = 0;
            for (int i = 0; i < p; ++i) {
                if (eigs.eigenvalues[i] > cut) ++count;
            }
            // A nonempty noise subspace is required downstream.
            return std::min(count, p - 1);
        }
        case OrderMethod::mdl:
        case OrderMethod::aic: {
            if (num_snapshots < 1) {
                throw DomainError("estimate_source_count: num_snapshots must be >= 1");
            }
            const double m = static_cast<double>(num_snapshots);
            double best = 0.0;
            int best_k = 0;
            for (int k = 0; k < p; ++k) {
                double log_sum = 0.0;
                double arith = 0.0;
                for (int i = k; i < p; ++i) {
                    const double lam = std::max(eigs.eigenvalues[i], 1e-300);
                    log_sum += std::log(lam);
                    arith += lam;
                }
                const int q = p - k;
                const double log_geo = log_sum / q;
                arith /= q;
                const double fit = -m * q * (log_geo - std::log(std::max(arith, 1e-300)));
                const double dof = static_cast<double>(k) * (2.0 * p - k);
                const double penalty =
                    method.method == OrderMethod::mdl ? 0.5 * dof * std::log(m) : dof;
                const double crit = fit + penalty;
                if (k == 0 || crit < best) {
                    best = crit;
                    best_k = k;
                }
            }
            return best_k;
        }
    }
    throw DomainError("estimate_source_count: unknown method");
}

std::vector<double> default_grid() {
    std::vector<double> grid(1799);
    for (int i = 0; i < 1799; ++i) {
        grid[i] = static_cast<double>(i - 899) / 10.0;
    }
    return grid;
}

Spectrum music_spectrum(const EigenStructure& eigs, int num_sources,
                        const ArrayGeometry& geometry, std::span<const double> grid_deg) {
    const int p = eigs.dimension();
    require_subspace_split(num_sources, p, "music_spectrum");
    if (grid_deg.size() < 3) {
        throw DomainError("music_spectrum: grid needs at least 3 points");
    }
    const auto noise = eigs.eigenvectors.rightCols(p - num_sources);
    const double spacing_wl = geometry.spacing_wavelengths();

    Spectrum spectrum;
    spectrum.angles_deg.assign(grid_deg.begin(), grid_deg.end());
    spectrum.values_db.resize(grid_deg.size());
    double peak = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < grid_deg.size(); ++i) {
        const CxVector a = steering_vector(grid_deg[i], spacing_wl, p);
        const double denom = (noise.adjoint() * a).squaredNorm();
        const double value = 10.0 * std::log10(1.0 / std::max(denom, kSpectrumFloor));
        spectrum.values_db[i] = value;
        peak = std::max(peak, value);
    }
    for (double& v : spectrum.values_db) {
        v -= peak;
    }
    return spectrum;
}

std::vector<double> find_peaks(const Spectrum& spectrum, int num_peaks) {
    if (num_peaks < 0) {
        throw DomainError("find_peaks: num_peaks must be >= 0");
    }
    if (spectrum.angles_deg.size() != spectrum.values_db.size() ||
        spectrum.angles_deg.size() < 3) {
        throw DomainError("find_peaks: spectrum must hold at least 3 aligned samples");
    }
    const auto& th = spectrum.angles_deg;
    const auto& v = spectrum.values_db;

    std::vector<Peak> peaks;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
        if (!(v[i] > v[i - 1] && v[i] > v[i + 1])) continue;
        const double y0 = v[i - 1];
        const double y1 = v[i];
        const double y2 = v[i + 1];
        const double denom = y0 - 2.0 * y1 + y2;
        const double shift = denom == 0.0 ? 0.0 : 0.5 * (y0 - y2) / denom;
        const double step = 0.5 * (th[i + 1] - th[i - 1]);
        peaks.push_back(Peak{th[i] + shift * step, y1 - 0.25 * (y0 - y2) * shift});
    }
    if (static_cast<int>(peaks.size()) < num_peaks) {
        std::sort(peaks.begin(), peaks.end(),
                  [](const Peak& a, const Peak& b) { return a.angle_deg < b.angle_deg; });
        throw ResolutionFailure(num_peaks, std::move(peaks));
    }
    std::sort(peaks.begin(), peaks.end(), [](const Peak& a, const Peak& b) {
        if (a.height_db != b.height_db) return a.height_db > b.height_db;
        return a.angle_deg < b.angle_deg;
    });
    std::vector<double> selected;
    selected.reserve(num_peaks);
    for (int i = 0; i < num_peaks; ++i) {
        selected.push_back(peaks[i].angle_deg);
    }
    std::sort(selected.begin(), selected.end());
    return selected;
}

std::vector<double> esprit(const EigenStructure& eigs, int num_sources,
                           const ArrayGeometry& geometry, EspritVariant variant) {
    const int p = eigs.dimension();
    require_subspace_split(num_sources, p, "esprit");
    const int K = num_sources;
    const auto signal = eigs.eigenvectors.leftCols(K);
    const CxMatrix e1 = signal.topRows(p - 1);
    const CxMatrix e2 = signal.bottomRows(p - 1);

    CxMatrix psi;
    if (variant == EspritVariant::ls) {
        psi = e1.colPivHouseholderQr().solve(e2);
    } else {
        CxMatrix stacked(p - 1, 2 * K);
        stacked << e1, e2;
        Eigen::JacobiSVD<CxMatrix> svd(stacked, Eigen::ComputeFullV);
        const CxMatrix v12 = svd.matrixV().topRightCorner(K, K);
        const CxMatrix v22 = svd.matrixV().bottomRightCorner(K, K);
        Eigen::FullPivLU<CxMatrix> lu(v22);
        if (!lu.isInvertible()) {
            throw NumericError("esprit: total least squares subspace is degenerate");
        }
        psi = -v12 * lu.inverse();
    }

    Eigen::ComplexEigenSolver<CxMatrix> solver(psi);
    if (solver.info() != Eigen::Success) {
        throw NumericError("esprit: rotation eigensolver did not converge");
    }

    const double scale = 2.0 * std::numbers::pi * geometry.spacing_wavelengths();
    std::vector<double> angles;
    angles.reserve(K);
    for (int i = 0; i < K; ++i) {
        const std::complex<double> mu = solver.eigenvalues()[i];
        const double sine = std::arg(mu) / scale;
        if (sine < -1.0 || sine > 1.0) {
            throw OutOfRangeRootError(mu, sine);
        }
        angles.push_back(std::asin(sine) * kRadToDeg);
    }
    std::sort(angles.begin(), angles.end());
    return angles;
}

std::vector<double> estimate_levels(const CovarianceMatrix& covariance,
                                    std::span<const double> angles_deg,
                                    const ArrayGeometry& geometry) {
    const int p = static_cast<int>(covariance.data.rows());
    const int K = static_cast<int>(angles_deg.size());
    require_subspace_split(K, p, "estimate_levels");

    const EigenStructure eigs = eigendecompose(covariance);
    const double sigma2 = eigs.eigenvalues.tail(p - K).mean();
    const double spacing_wl = geometry.spacing_wavelengths();

    CxMatrix a(p, K);
    for (int j = 0; j < K; ++j) {
        a.col(j) = steering_vector(angles_deg[j], spacing_wl, p);
    }
    const Eigen::MatrixXd gram = (a.adjoint() * a).cwiseAbs2();
    const CxMatrix centered = covariance.data - sigma2 * CxMatrix::Identity(p, p);
    Eigen::VectorXd rhs(K);
    for (int j = 0; j < K; ++j) {
        rhs[j] = std::real(a.col(j).dot(centered * a.col(j)));
    }

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(gram, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const double smin = svd.singularValues()[K - 1];
    const double smax = svd.singularValues()[0];
    if (smin <= 0.0 || smax / smin > kMaxLevelCondition) {
        throw NumericError(
            "estimate_levels: steering correlation matrix is too ill conditioned "
            "(angles nearly coincide)");
    }
    const Eigen::VectorXd powers = svd.solve(rhs);

    std::vector<double> levels(K);
    for (int j = 0; j < K; ++j) {
        levels[j] = powers[j] <= 1e-10 ? kLevelFloorDb : 10.0 * std::log10(powers[j]);
    }
    return levels;
}

std::string to_string(Algorithm algorithm) {
    return algorithm == Algorithm::music ? "music" : "esprit";
}

}  // namespace doalab
