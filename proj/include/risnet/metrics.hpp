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

#include "risnet/types.hpp"

#include <utility>
#include <vector>

namespace risnet
{
    // Normalised transmit power and linear noise variance.
    struct LinkBudget
    {
        double power = 1.0;
        double noise_var = 3.16e-11;

        void validate() const;
    };

    struct Interferer
    {
        ComplexMatrix channel;
        double power = 1.0;
    };

    // gamma = ||desired||_F^2 p / (sum_i ||I_i||_F^2 p_i + sigma).
    double sinr(const ComplexMatrix &desired, const std::vector<Interferer> &interferers, const LinkBudget &budget);

    // Scalar-power form of sinr(): signal and interference are already squared magnitudes
    // (without the transmit power applied).
    double sinr_from_powers(double signal, double interference, const LinkBudget &budget);

    // log2(1 + gamma).
    double achievable_rate(double gamma);

    // p * ||H F||_F^2 / (UE receive antennas).
    double rsrp(const ComplexMatrix &effective_channel, const ComplexMatrix &precoder, const LinkBudget &budget);

    // 10 log10 of a linear power expressed in milliwatts.
    double to_dbm(double linear_mw);

    struct InterferenceGeometry
    {
        double normal_angle = 0.0; // angle between RIS beam normal and the NB-NB line, radians
        double beam_width = 0.0;   // radians
        double s0 = 1.0;
        double p_i0 = 1.0;
        std::vector<std::pair<double, double>> width_table; // (angle bound, beam width), bounds increasing

        void validate() const;
    };

    // Semi-static strength profile: admitted iff s * cos(normal_angle) <= s0.
    bool scheme1_check(double s, const InterferenceGeometry &geom);

    struct EquivalentInterference
    {
        double p_i = 0.0;
        double i_e = 0.0;
        bool admitted = false; // p_i <= p_i0
    };

    // Narrow beam: p_I = theta / (2 pi), I_e = p_I * s.
    EquivalentInterference scheme2_equivalent_interference(double s, const InterferenceGeometry &geom);

    // Width of the first table row whose angle bound exceeds `angle`; the last row otherwise.
    double scheme3_select_width(double angle, const InterferenceGeometry &geom);
}
