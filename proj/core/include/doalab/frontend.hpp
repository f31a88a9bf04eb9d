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

#include <cstdint>

#include "doalab/array_model.hpp"

namespace doalab {

enum class ReceiverKind { ideal, six_port, five_port };

// Receiver-chain imperfections applied to snapshots before estimation:
// static per-element gain/phase errors (both homodyne kinds), plus
// per-snapshot local-oscillator jitter for the five-port, whose LO power is
// not stable. Empty static vectors mean zero error on every element.
struct ReceiverModel {
    ReceiverKind kind = ReceiverKind::ideal;
    RealVector static_gain_db;
    RealVector static_phase_deg;
    double lo_phase_jitter_rad = 0.0;  // std dev of per-entry phase jitter
    double lo_gain_jitter_db = 0.0;    // std dev of per-entry gain jitter

    static ReceiverModel ideal();
    static ReceiverModel six_port(RealVector static_gain_db, RealVector static_phase_deg);
    static ReceiverModel five_port(RealVector static_gain_db, RealVector static_phase_deg,
                                   double lo_phase_jitter_rad, double lo_gain_jitter_db);
};

// Throws DomainError if the model violates its invariants for an array of
// num_elements: jitter stds must be >= 0, ideal must carry no error terms,
// six_port must carry no jitter, static vectors must be empty or length n.
void validate(const ReceiverModel& model, int num_elements);

// Multiplies each entry (k, t) by the element's static error factor
// g_k * exp(i*psi_k) and, for five_port, by a random per-entry jitter factor
// exp(i*eps) * 10^(delta/20) with eps ~ N(0, lo_phase_jitter_rad^2) and
// delta ~ N(0, lo_gain_jitter_db^2). Deterministic in the seed.
SnapshotMatrix apply_receiver(const SnapshotMatrix& snapshots, const ReceiverModel& model,
                              std::uint64_t rng_seed);

// Multiplies each row by the exact inverse of the static error factor and
// marks the result calibrated. Jitter is dynamic and is not removed.
SnapshotMatrix calibrate(const SnapshotMatrix& snapshots, const ReceiverModel& model);

}  // namespace doalab
