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

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace doalab {

// Invalid inputs or violated type invariants. Maps to CLI exit code 2.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Configuration document problems; message names the key and the constraint.
class ConfigError : public DomainError {
public:
    using DomainError::DomainError;
};

// Lookup of an unknown builtin scenario name.
class NotFoundError : public DomainError {
public:
    using DomainError::DomainError;
};

// Numerical breakdown (eigensolver non-convergence, ill conditioning).
// Maps to CLI exit code 3.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Peak {
    double angle_deg = 0.0;
    double height_db = 0.0;
};

// Thrown by find_peaks when the pseudospectrum has fewer local maxima than
// sources requested. Carries the peaks that were found; a scenario run counts
// this as a resolution-failure outcome rather than aborting.
class ResolutionFailure : public std::runtime_error {
public:
    ResolutionFailure(int requested, std::vector<Peak> found);

    int requested() const { return requested_; }
    const std::vector<Peak>& found() const { return found_; }

private:
    int requested_;
    std::vector<Peak> found_;
};

// An ESPRIT rotation eigenvalue mapped outside the visible region
// (|sin theta| > 1); names the offending root.
class OutOfRangeRootError : public NumericError {
public:
    OutOfRangeRootError(std::complex<double> root, double mapped_sine);

    std::complex<double> root() const { return root_; }
    double mapped_sine() const { return mapped_sine_; }

private:
    std::complex<double> root_;
    double mapped_sine_;
};

}  // namespace doalab
