// SPDX-License-Identifier: Apache-2.0
//
// risnet: link-level simulator for RIS-assisted wireless networks
// Copyright (C) 2026 The risnet authors
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

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

namespace risnet
{
    using cdouble = std::complex<double>;

    // Dense complex matrix; column vectors are n x 1 matrices.
    using ComplexMatrix = Eigen::MatrixXcd;
    using ComplexVector = Eigen::VectorXcd;

    // Diagonal passive reflection matrix of a RIS panel.
    // Entry n is amplitudes[n] * exp(j * phases[n]) with 0 <= amplitudes[n] <= 1.
    struct RegulationMatrix
    {
        std::vector<double> phases;
        std::vector<double> amplitudes;
        std::optional<int> quant_bits;

        static RegulationMatrix identity(std::size_t n);
        static RegulationMatrix from_coefficients(const ComplexVector &coefficients);

        std::size_t size() const { return phases.size(); }
        cdouble coefficient(std::size_t n) const;
        ComplexVector diagonal() const;

        // Throws std::invalid_argument when lengths differ or passivity is violated.
        void validate() const;
    };
}
