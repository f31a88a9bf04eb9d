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

#include "doalab/errors.hpp"

#include <sstream>

namespace doalab {

namespace {

std::string resolution_message(int requested, const std::vector<Peak>& found) {
    std::ostringstream os;
    os << "pseudospectrum has " << found.size() << " local maxima, " << requested
       << " requested";
    if (!found.empty()) {
        os << " (found at";
        for (const Peak& p : found) {
            os << ' ' << p.angle_deg << " deg";
        }
        os << ')';
    }
    return os.str();
}

std::string root_message(std::complex<double> root, double mapped_sine) {
    std::ostringstream os;
    os << "rotation eigenvalue (" << root.real() << ", " << root.imag()
       << ") maps to sin theta = " << mapped_sine << ", outside [-1, 1]";
    return os.str();
}

}  // namespace

ResolutionFailure::ResolutionFailure(int requested, std::vector<Peak> found)
    : std::runtime_error(resolution_message(requested, found)),
      requested_(requested),
      found_(std::move(found)) {}

OutOfRangeRootError::OutOfRangeRootError(std::complex<double> root, double mapped_sine)
    : NumericError(root_message(root, mapped_sine)), root_(root), mapped_sine_(mapped_sine) {}

}  // namespace doalab
