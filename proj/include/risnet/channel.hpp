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

#include "risnet/rng.hpp"
#include "risnet/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace risnet
{
    enum class ArrayKind
    {
        ula,
        upa
    };

    // Element layout of an antenna array or RIS panel. Spacing is in wavelengths.
    struct ArrayGeometry
    {
        ArrayKind kind = ArrayKind::ula;
        int n_x = 1;
        int n_y = 1;
        double spacing = 0.5;

        static ArrayGeometry ula(int n, double spacing = 0.5);
        static ArrayGeometry upa(int n_x, int n_y, double spacing = 0.5);

        int elements() const { return n_x * n_y; }
        void validate() const;
        std::string describe() const;
        bool operator==(const ArrayGeometry &) const = default;
    };

    enum class ChannelModel
    {
        los,     // rank-1 far-field line of sight with random angles and phase
        rayleigh // i.i.d. CN(0, 1)
    };

    // One RIS branch of a channel realization: G is [RIS x NB], H is [RIS x UE].
    struct RisBranch
    {
        ComplexMatrix G;
        ComplexMatrix H;
        double large_scale_gain = 1.0;
    };

    // All links of one scenario realization.
    struct ChannelSet
    {
        std::vector<RisBranch> branches;
        std::optional<ComplexMatrix> direct; // [UE x NB]; absent when the direct path is blocked
        double carrier_freq = 28e9;

        Eigen::Index nb_antennas() const;
        Eigen::Index ue_antennas() const;
        void validate() const;
    };

    // Entry k = exp(j * 2*pi * spacing * k * sin(angle)), k = 0..n-1.
    ComplexMatrix ula_steering(int n, double angle, double spacing = 0.5);

    // kron(a_x, a_y) with x spatial frequency sin(az)cos(el) and y spatial frequency sin(el).
    // Element (ix, iy) is stored at row ix * n_y + iy.
    ComplexMatrix upa_steering(const ArrayGeometry &geom, double azimuth, double elevation);

    // Steering vector for either kind; for a ULA the elevation is ignored.
    ComplexMatrix steering(const ArrayGeometry &geom, double azimuth, double elevation);

    // [rx elements x tx elements] small-scale channel realization.
    ComplexMatrix gen_channel(ChannelModel model, const ArrayGeometry &rx_geom, const ArrayGeometry &tx_geom,
                              RngStream &rng);

    // H^H * Phi * G (+ direct).
    ComplexMatrix cascaded_channel(const ComplexMatrix &H, const RegulationMatrix &phi, const ComplexMatrix &G,
                                   const std::optional<ComplexMatrix> &direct = std::nullopt);

    struct JtBranch
    {
        const ComplexMatrix &H;
        const RegulationMatrix &phi;
        const ComplexMatrix &G;
    };

    // Sum over branches of H_i^H * Phi_i * G_i.
    ComplexMatrix comp_jt_channel(const std::vector<JtBranch> &branches);

    // Row of H^H for UE antenna `antenna`, as a column: conj(H(:, antenna)).
    ComplexVector rx_row(const ComplexMatrix &H, Eigen::Index antenna = 0);
}
