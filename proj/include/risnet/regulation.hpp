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

#include "risnet/metrics.hpp"
#include "risnet/rng.hpp"
#include "risnet/types.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace risnet
{
    // Unit-modulus global phase factor of a RIS regulation matrix.
    //
    // `value` is the regulation-induced factor c = exp(-j*phi). `path_phase` is the additional
    // propagation-length phase difference between two paths; it is usually negligible and
    // defaults to 0, in which case total() == value.
    struct PhaseOffset
    {
        cdouble value{1.0, 0.0};
        double path_phase = 0.0;

        static PhaseOffset from_phase(double phi) { return {std::polar(1.0, -phi), 0.0}; }
        cdouble total() const { return value * std::polar(1.0, -path_phase); }
        void validate() const;
    };

    // Pattern-addition weights alpha_k = rho_k * exp(-j * theta_k).
    struct PAWeights
    {
        std::vector<double> rho;
        std::vector<double> theta;

        std::size_t size() const { return rho.size(); }
        cdouble alpha(std::size_t k) const { return std::polar(rho[k], -theta[k]); }
    };

    enum class PaConstraint
    {
        l1, // sum |alpha_k| <= 1, passive for every element by the triangle inequality
        l2  // sum |alpha_k|^2 <= 1, may break passivity; kept for sensitivity studies
    };

    struct PaComponent
    {
        cdouble weight;
        RegulationMatrix phi;
    };

    struct PaGrid
    {
        int phase_steps = 16;
        int amp_steps = 8;
    };

    // Per-UE cascade seen through the reference antennas: h is the H^H row, g the NB-side column.
    struct UeCascade
    {
        ComplexVector h;
        ComplexVector g;
    };

    struct PaObjectiveConfig
    {
        LinkBudget budget;
        bool ofdma = true;
        PaConstraint constraint = PaConstraint::l1;
    };

    struct PaResult
    {
        PAWeights weights;
        RegulationMatrix phi;
        double objective = 0.0; // sum rate over UEs, bits/s/Hz
    };

    // Sub-blocks of a panel. `owners[b]` is the UE served by block b; `beta[u]` is the fraction
    // of UE u's incident energy that lands on the blocks it owns.
    struct BlockPartition
    {
        std::vector<std::vector<std::size_t>> blocks;
        std::vector<std::size_t> owners;
        std::vector<double> beta;

        std::size_t elements() const;
        std::size_t ue_count() const { return beta.size(); }
        void validate() const;
    };

    // Contiguous blocks sized round(fraction * n) (last block takes the remainder), with each
    // UE's beta set to the share of elements it owns.
    BlockPartition contiguous_partition(std::size_t n, const std::vector<double> &fractions,
                                        const std::vector<std::size_t> &owners);

    // Matched single-UE regulation: phase_n = -arg(h_n g_n), amplitude 1.
    RegulationMatrix optimal_regulation(const ComplexVector &h, const ComplexVector &g);

    RegulationMatrix random_phase_regulation(std::size_t n, RngStream &rng);

    RegulationMatrix apply_global_phase(const RegulationMatrix &phi, const PhaseOffset &c);

    // Relative offset between two branches from their pilot observations at the NB.
    PhaseOffset estimate_phase_offset(cdouble obs_j, cdouble obs_k);

    RegulationMatrix calibrate(const RegulationMatrix &phi_2, const PhaseOffset &delta);

    RegulationMatrix pa_superpose(const std::vector<PaComponent> &components,
                                  PaConstraint constraint = PaConstraint::l1);

    // Sum rate over UEs when the panel carries `phi`.
    double pa_sum_rate(const std::vector<UeCascade> &channels, const RegulationMatrix &phi,
                       const PaObjectiveConfig &cfg);

    // Exhaustive grid search over theta_k in {2*pi*i/P : i = 1..P} and
    // rho_k in {j/A : j = 0..A}, maximising the sum rate of the superposed matrix.
    PaResult pa_optimize(const std::vector<UeCascade> &channels, const PaGrid &grid,
                         const PaObjectiveConfig &cfg = {});

    // Equal-weight superposition alpha_k = 1/K of the per-UE optimal matrices.
    PaResult pa_equal_weight(const std::vector<UeCascade> &channels, const PaObjectiveConfig &cfg = {});

    RegulationMatrix blocking_regulation(const BlockPartition &partition,
                                         const std::vector<RegulationMatrix> &per_ue);

    // Received amplitude of UE `ue` on a blocked panel: own blocks weighted by sqrt(beta) and
    // foreign blocks by sqrt(1 - beta), each normalised by the block's share of the aperture.
    cdouble blocked_received(const ComplexVector &h, const ComplexVector &g, const BlockPartition &partition,
                             const RegulationMatrix &composite, std::size_t ue);

    RegulationMatrix mixed_channel_regulation(const std::vector<UeCascade> &cascades);

    RegulationMatrix quantize(const RegulationMatrix &phi, int bits);

    // Sum_n h_n * phi_n * g_n.
    cdouble effective_gain(const ComplexVector &h, const RegulationMatrix &phi, const ComplexVector &g);
}
