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

#include "doalab/covariance.hpp"

#include <string>

#include "doalab/errors.hpp"

namespace doalab {

namespace {

// J conj(R) J reverses both index orders.
CxMatrix exchange_conjugate(const CxMatrix& r) {
    return r.conjugate().rowwise().reverse().colwise().reverse().eval();
}

}  // namespace

CovarianceMatrix sample_covariance(const SnapshotMatrix& snapshots) {
    const int m = snapshots.num_snapshots();
    if (m < 1) {
        throw DomainError("sample_covariance: need at least one snapshot");
    }
    CovarianceMatrix cov;
    cov.data = (snapshots.data * snapshots.data.adjoint()) / static_cast<double>(m);
    return cov;
}

CovarianceMatrix forward_backward(const CovarianceMatrix& covariance) {
    CovarianceMatrix out = covariance;
    out.data = 0.5 * (covariance.data + exchange_conjugate(covariance.data));
    if (out.smoothing.kind == SmoothingKind::none) {
        out.smoothing.kind = SmoothingKind::forward_backward;
        out.smoothing.subarray_size = static_cast<int>(out.data.rows());
        out.smoothing.num_subarrays = 1;
    } else {
        out.smoothing.kind = SmoothingKind::forward_backward;
    }
    return out;
}

CovarianceMatrix spatial_smoothing(const SnapshotMatrix& snapshots, int subarray_size,
                                   bool use_backward) {
    const int n = snapshots.geometry.num_elements;
    const int m = snapshots.num_snapshots();
    if (subarray_size < 2 || subarray_size > n) {
        throw DomainError("spatial_smoothing: subarray_size must lie in [2, " +
                          std::to_string(n) + "], got " + std::to_string(subarray_size));
    }
    if (m < 1) {
        throw DomainError("spatial_smoothing: need at least one snapshot");
    }
    const int p = subarray_size;
    const int num_subarrays = n - p + 1;

    CxMatrix accum = CxMatrix::Zero(p, p);
    for (int start = 0; start < num_subarrays; ++start) {
        const auto block = snapshots.data.middleRows(start, p);
        accum += block * block.adjoint();
    }
    accum /= static_cast<double>(num_subarrays) * static_cast<double>(m);

    CovarianceMatrix cov;
    cov.data = std::move(accum);
    cov.smoothing.kind = SmoothingKind::forward;
    cov.smoothing.subarray_size = p;
    cov.smoothing.num_subarrays = num_subarrays;
    if (use_backward) {
        cov = forward_backward(cov);
        cov.smoothing.num_subarrays = num_subarrays;
        cov.smoothing.subarray_size = p;
    }
    return cov;
}

}  // namespace doalab
