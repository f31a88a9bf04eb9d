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

#include "doalab/array_model.hpp"

namespace doalab {

enum class SmoothingKind { none, forward, forward_backward };

struct SmoothingInfo {
    SmoothingKind kind = SmoothingKind::none;
    int subarray_size = 0;   // p; 0 when kind == none
    int num_subarrays = 0;   // L = n - p + 1; 0 when kind == none
};

// Hermitian PSD spatial covariance, p x p where p is the effective element
// count (p < n after smoothing).
struct CovarianceMatrix {
    CxMatrix data;
    SmoothingInfo smoothing;

    int effective_elements() const { return static_cast<int>(data.rows()); }
};

// R = (1/m) X X^H.
CovarianceMatrix sample_covariance(const SnapshotMatrix& snapshots);

// Forward-backward average (R + J conj(R) J) / 2 with J the exchange matrix.
// Preserves Hermitian PSD; persymmetric-Hermitian matrices are fixed points.
CovarianceMatrix forward_backward(const CovarianceMatrix& covariance);

// Average of the L = n - p + 1 forward-subarray sample covariances over
// consecutive element windows of size p; decorrelates coherent sources by
// restoring the signal-subspace rank. With use_backward the forward-backward
// average is applied on top.
CovarianceMatrix spatial_smoothing(const SnapshotMatrix& snapshots, int subarray_size,
                                   bool use_backward);

}  // namespace doalab
