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

#include "doalab/frontend.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "doalab/errors.hpp"
#include "doalab/rng.hpp"

namespace doalab {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

// Jitter draws come from their own substream so snapshot synthesis with the
// same seed stays unchanged when a receiver model is added.
constexpr std::uint64_t kJitterStream = 0x300000;

std::complex<double> static_factor(const ReceiverModel& model, int element) {
    double gain_db = 0.0;
    double phase_deg = 0.0;
    if (model.static_gain_db.size() > 0) gain_db = model.static_gain_db[element];
    if (model.static_phase_deg.size() > 0) phase_deg = model.static_phase_deg[element];
    return std::polar(std::pow(10.0, gain_db / 20.0), phase_deg * kDegToRad);
}

}  // namespace

ReceiverModel ReceiverModel::ideal() { return ReceiverModel{}; }

ReceiverModel ReceiverModel::six_port(RealVector static_gain_db, RealVector static_phase_deg) {
    ReceiverModel model;
    model.kind = ReceiverKind::six_port;
    model.static_gain_db = std::move(static_gain_db);
    model.static_phase_deg = std::move(static_phase_deg);
    return model;
}

ReceiverModel ReceiverModel::five_port(RealVector static_gain_db, RealVector static_phase_deg,
                                       double lo_phase_jitter_rad, double lo_gain_jitter_db) {
    ReceiverModel model;
    model.kind = ReceiverKind::five_port;
    model.static_gain_db = std::move(static_gain_db);
    model.static_phase_deg = std::move(static_phase_deg);
    model.lo_phase_jitter_rad = lo_phase_jitter_rad;
    model.lo_gain_jitter_db = lo_gain_jitter_db;
    return model;
}

void validate(const ReceiverModel& model, int num_elements) {
    auto check_length = [num_elements](const RealVector& v, const char* name) {
        if (v.size() != 0 && v.size() != num_elements) {
            throw DomainError(std::string("receiver.") + name + ": length must be 0 or " +
                              std::to_string(num_elements) + ", got " +
                              std::to_string(v.size()));
        }
    };
    check_length(model.static_gain_db, "static_gain_db");
    check_length(model.static_phase_deg, "static_phase_deg");
    if (model.lo_phase_jitter_rad < 0.0 || model.lo_gain_jitter_db < 0.0) {
        throw DomainError("receiver: jitter standard deviations must be >= 0");
    }
    const bool has_static = (model.static_gain_db.size() > 0 &&
                             model.static_gain_db.cwiseAbs().maxCoeff() != 0.0) ||
                            (model.static_phase_deg.size() > 0 &&
                             model.static_phase_deg.cwiseAbs().maxCoeff() != 0.0);
    const bool has_jitter = model.lo_phase_jitter_rad > 0.0 || model.lo_gain_jitter_db > 0.0;
    if (model.kind == ReceiverKind::ideal && (has_static || has_jitter)) {
        throw DomainError("receiver: ideal kind must carry no error terms");
    }
    if (model.kind == ReceiverKind::six_port && has_jitter) {
        throw DomainError("receiver: six_port kind has a stable LO and must carry no jitter");
    }
}

SnapshotMatrix apply_receiver(const SnapshotMatrix& snapshots, const ReceiverModel& model,
                              std::uint64_t rng_seed) {
    validate(model, snapshots.geometry.num_elements);
    SnapshotMatrix out = snapshots;
    const int n = snapshots.geometry.num_elements;
    const int m = snapshots.num_snapshots();
    for (int k = 0; k < n; ++k) {
        out.data.row(k) *= static_factor(model, k);
    }
    if (model.kind == ReceiverKind::five_port &&
        (model.lo_phase_jitter_rad > 0.0 || model.lo_gain_jitter_db > 0.0)) {
        rng::NormalStream stream(rng::derive(rng_seed, kJitterStream));
        for (int t = 0; t < m; ++t) {
            for (int k = 0; k < n; ++k) {
                const double eps = model.lo_phase_jitter_rad * stream.next();
                const double delta = model.lo_gain_jitter_db * stream.next();
                out.data(k, t) *= std::polar(std::pow(10.0, delta / 20.0), eps);
            }
        }
    }
    return out;
}

SnapshotMatrix calibrate(const SnapshotMatrix& snapshots, const ReceiverModel& model) {
    validate(model, snapshots.geometry.num_elements);
    SnapshotMatrix out = snapshots;
    const int n = snapshots.geometry.num_elements;
    for (int k = 0; k < n; ++k) {
        out.data.row(k) /= static_factor(model, k);
    }
    out.calibrated = true;
    return out;
}

}  // namespace doalab
