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

#include "risnet/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace risnet
{
    namespace
    {
        RegulationMatrix finalize(const ScenarioConfig &cfg, RegulationMatrix phi)
        {
            if (cfg.quant_bits > 0)
                phi = quantize(phi, cfg.quant_bits);
            if (!cfg.ris_enabled)
                std::fill(phi.amplitudes.begin(), phi.amplitudes.end(), 0.0);
            return phi;
        }

        double link_rate(const ScenarioConfig &cfg, double power, double interference = 0.0)
        {
            return achievable_rate(sinr_from_powers(power, interference, cfg.budget));
        }

        // Received power of the strongest precoded mode: ||C F||^2 with F = MRT(C).
        double precoded_power(const ComplexMatrix &channel)
        {
            if (channel.squaredNorm() == 0.0)
                return 0.0;
            return (channel * mrt_precoder(channel)).squaredNorm();
        }

        ArrayGeometry ue_geometry(const ScenarioConfig &cfg)
        {
            return ArrayGeometry::ula(cfg.ue_antennas);
        }

        // One RIS serving several UEs from one NB. The NB transmits on its MRT beam toward the
        // panel, so each UE sees the per-element cascade conj(H(n, a)) * g_n.
        struct SingleRisLink
        {
            ComplexVector g;                // G * F, NB-side column
            std::vector<ComplexMatrix> H;   // per UE, [RIS x UE antennas]

            UeCascade reference(std::size_t ue) const { return {rx_row(H[ue], 0), g}; }

            // Total power over the UE's receive antennas.
            double power(std::size_t ue, const ComplexVector &diag) const
            {
                double p = 0.0;
                for (Eigen::Index a = 0; a < H[ue].cols(); ++a)
                    p += std::norm((H[ue].col(a).conjugate().cwiseProduct(diag).cwiseProduct(g)).sum());
                return p;
            }

            // Cross power at UE `ue` of the stream precoded for another UE through the same beam.
            double leak(std::size_t ue, const ComplexVector &diag) const { return power(ue, diag); }
        };

        SingleRisLink draw_single_ris(const ScenarioConfig &cfg, const ArrayGeometry &ris, RngStream &rng,
                                      std::size_t ues)
        {
            SingleRisLink link;
            const ComplexMatrix G = gen_channel(cfg.nb_ris_model, ris, cfg.nb_geometry, rng);
            link.g = G * mrt_precoder(G);
            const auto ue_geom = ue_geometry(cfg);
            for (std::size_t u = 0; u < ues; ++u)
                link.H.push_back(gen_channel(cfg.ris_ue_model, ris, ue_geom, rng));
            return link;
        }

        void require_ues(const ScenarioConfig &cfg, int at_least, const char *who)
        {
            if (cfg.ues < at_least)
                throw std::invalid_argument(std::string(who) + ": not enough UEs configured");
        }
    }

    double sweep_x(const ArrayGeometry &ris)
    {
        return static_cast<double>(ris.elements());
    }

    CompJtSample sample_comp_jt(const ScenarioConfig &cfg, const ArrayGeometry &ris, RngStream &rng)
    {
        if (cfg.branches < 2)
            throw std::invalid_argument("comp_jt: joint transmission needs at least two RIS branches");
        const auto L = static_cast<std::size_t>(cfg.branches);
        const auto ue_geom = ue_geometry(cfg);

        // Branches share the NB departure direction (same large-scale geometry) and differ in
        // their RIS-side angles and gains (small-scale).
        std::vector<RisBranch> branches(L);
        if (cfg.nb_ris_model == ChannelModel::los)
        {
            const ComplexMatrix shared = gen_channel(ChannelModel::los, ArrayGeometry::ula(1), cfg.nb_geometry, rng);
            for (auto &b : branches)
            {
                const ComplexMatrix ris_side = gen_channel(ChannelModel::los, ris, ArrayGeometry::ula(1), rng);
                b.G = ris_side * shared;
            }
        }
        else
            for (auto &b : branches)
                b.G = gen_channel(cfg.nb_ris_model, ris, cfg.nb_geometry, rng);
        for (auto &b : branches)
            b.H = gen_channel(cfg.ris_ue_model, ris, ue_geom, rng);

        // Per-branch matched regulation aligned to the NB reference antenna.
        std::vector<RegulationMatrix> phi(L);
        for (std::size_t i = 0; i < L; ++i)
        {
            const ComplexVector g = branches[i].G * mrt_precoder(branches[i].G);
            phi[i] = finalize(cfg, optimal_regulation(rx_row(branches[i].H, 0), g));
        }

        // Propagation-length phase of the second path, not visible to the per-RIS regulation.
        std::vector<ComplexMatrix> H_actual;
        for (const auto &b : branches)
            H_actual.push_back(b.H);
        if (cfg.path_phase != 0.0)
            H_actual[1] *= std::polar(1.0, -cfg.path_phase);

        // The JT channel is the sum of per-branch cascades, so each distinct regulation is applied once.
        auto cascade = [&](std::size_t i, const RegulationMatrix &p) {
            return cascaded_channel(H_actual[i], p, branches[i].G);
        };
        auto sum = [](const std::vector<ComplexMatrix> &parts) {
            ComplexMatrix out = parts.front();
            for (std::size_t i = 1; i < parts.size(); ++i)
                out += parts[i];
            return out;
        };

        CompJtSample s;
        std::vector<ComplexMatrix> matched(L);
        for (std::size_t i = 0; i < L; ++i)
        {
            matched[i] = cascade(i, phi[i]);
            s.branch_power.push_back(precoded_power(matched[i]));
        }
        s.coherent_power = precoded_power(sum(matched));
        s.dps_power = *std::max_element(s.branch_power.begin(), s.branch_power.end());

        // Uncoordinated panels: independent global phase per RIS.
        std::vector<RegulationMatrix> offset(L);
        std::vector<ComplexMatrix> offset_cascade(L);
        for (std::size_t i = 0; i < L; ++i)
        {
            offset[i] = finalize(cfg, apply_global_phase(phi[i], PhaseOffset::from_phase(rng.phase())));
            offset_cascade[i] = cascade(i, offset[i]);
        }
        s.noncoherent_power = precoded_power(sum(offset_cascade));

        // Calibration against branch 0 from per-branch uplink pilots at the NB reference antenna.
        if (cfg.ris_enabled)
        {
            std::vector<ComplexMatrix> calibrated = offset_cascade;
            const cdouble ref = offset_cascade[0](0, 0);
            for (std::size_t i = 1; i < L; ++i)
            {
                const cdouble obs = offset_cascade[i](0, 0);
                calibrated[i] = cascade(i, finalize(cfg, calibrate(offset[i], estimate_phase_offset(ref, obs))));
            }
            s.calibrated_power = precoded_power(sum(calibrated));
        }
        else
            s.calibrated_power = s.noncoherent_power;
        return s;
    }

    MultiUePaSample sample_multi_ue_pa(const ScenarioConfig &cfg, const ArrayGeometry &ris, RngStream &rng)
    {
        require_ues(cfg, 1, "multi_ue_pa");
        const auto K = static_cast<std::size_t>(cfg.ues);
        const SingleRisLink link = draw_single_ris(cfg, ris, rng, K);
        const RegulationMatrix random = finalize(cfg, random_phase_regulation(static_cast<std::size_t>(ris.elements()), rng));

        std::vector<UeCascade> cascades;
        for (std::size_t k = 0; k < K; ++k)
            cascades.push_back(link.reference(k));
        std::vector<ComplexVector> own;
        for (std::size_t k = 0; k < K; ++k)
            own.push_back(finalize(cfg, optimal_regulation(cascades[k].h, cascades[k].g)).diagonal());

        const PaObjectiveConfig objective{cfg.budget, cfg.ofdma, cfg.pa_constraint};
        const ComplexVector pa = finalize(cfg, pa_equal_weight(cascades, objective).phi).diagonal();
        const ComplexVector pa_opt = finalize(cfg, pa_optimize(cascades, cfg.pa_grid, objective).phi).diagonal();
        const ComplexVector rnd = random.diagonal();

        // All UEs share the panel; without OFDMA each sees the other UEs' streams through it.
        auto shared_rate = [&](std::size_t k, const ComplexVector &diag) {
            const double p = link.power(k, diag);
            const double interference = cfg.ofdma ? 0.0 : static_cast<double>(K - 1) * link.leak(k, diag);
            return link_rate(cfg, p, interference);
        };

        MultiUePaSample s;
        for (std::size_t k = 0; k < K; ++k)
        {
            s.ideal += link_rate(cfg, link.power(k, own[k]));
            s.unexpected += link_rate(cfg, link.power(k, own[(k + 1) % K]));
            s.pa += shared_rate(k, pa);
            s.pa_opt += shared_rate(k, pa_opt);
            s.random_phase += shared_rate(k, rnd);
        }
        const double inv = 1.0 / static_cast<double>(K);
        s.ideal *= inv;
        s.unexpected *= inv;
        s.pa *= inv;
        s.pa_opt *= inv;
        s.random_phase *= inv;
        return s;
    }

    BlockingSample sample_multi_ue_blocking(const ScenarioConfig &cfg, const ArrayGeometry &ris, RngStream &rng)
    {
        require_ues(cfg, 2, "multi_ue_blocking");
        const SingleRisLink link = draw_single_ris(cfg, ris, rng, 2);
        const auto n = static_cast<std::size_t>(ris.elements());

        const std::vector<RegulationMatrix> per_ue{
            finalize(cfg, optimal_regulation(link.reference(0).h, link.g)),
            finalize(cfg, optimal_regulation(link.reference(1).h, link.g))};

        auto blocked_rate = [&](const BlockPartition &part, const RegulationMatrix &composite, std::size_t ue) {
            double p = 0.0;
            for (Eigen::Index a = 0; a < link.H[ue].cols(); ++a)
                p += std::norm(blocked_received(rx_row(link.H[ue], a), link.g, part, composite, ue));
            return link_rate(cfg, p);
        };

        BlockingSample s;
        const ComplexVector target_diag = per_ue[0].diagonal();
        s.normal_target = link_rate(cfg, link.power(0, target_diag));
        s.normal_non_target = link_rate(cfg, link.power(1, target_diag));

        auto split = [&](double beta) {
            const BlockPartition part = contiguous_partition(n, {beta, 1.0 - beta}, {0, 1});
            const RegulationMatrix composite = blocking_regulation(part, per_ue);
            return std::pair{blocked_rate(part, composite, 0), blocked_rate(part, composite, 1)};
        };
        if (cfg.blocking_output == BlockingOutput::per_ue)
            for (double beta : cfg.betas)
            {
                const auto [t, nt] = split(beta);
                s.target.push_back(t);
                s.non_target.push_back(nt);
            }
        std::tie(s.half_target, s.half_non_target) = split(0.5);
        return s;
    }

    NoncollabSample sample_multi_ue_noncollab(const ScenarioConfig &cfg, const ArrayGeometry &ris, RngStream &rng)
    {
        require_ues(cfg, 2, "multi_ue_noncollab");
        const SingleRisLink link = draw_single_ris(cfg, ris, rng, 2);
        const RegulationMatrix random = finalize(cfg, random_phase_regulation(static_cast<std::size_t>(ris.elements()), rng));

        const UeCascade ue1 = link.reference(0);
        const UeCascade ue2 = link.reference(1);
        const ComplexVector phi_ue1 = finalize(cfg, optimal_regulation(ue1.h, ue1.g)).diagonal();
        const ComplexVector phi_mix = finalize(cfg, mixed_channel_regulation({ue1, ue2})).diagonal();

        NoncollabSample s;
        s.ue1_perfect_csi = link_rate(cfg, link.power(0, phi_ue1));
        s.ue2_mixed_channel = link_rate(cfg, link.power(1, phi_mix));
        s.ue2_ue1_csi = link_rate(cfg, link.power(1, phi_ue1));
        s.ue2_random_phase = link_rate(cfg, link.power(1, random.diagonal()));
        return s;
    }

    MultiCellSample sample_multi_cell(const ScenarioConfig &cfg, const ArrayGeometry &ris, RngStream &rng)
    {
        const auto ue_geom = ue_geometry(cfg);

        // Serving cell: NB1 -> RIS1 -> edge UE.
        const ComplexMatrix G1 = gen_channel(cfg.nb_ris_model, ris, cfg.nb_geometry, rng);
        const ComplexMatrix H1 = gen_channel(cfg.ris_ue_model, ris, ue_geom, rng);
        // Neighbour cell: NB2 -> RIS2, and RIS2 -> the same edge UE.
        const ComplexMatrix G2 = gen_channel(cfg.nb_ris_model, ris, cfg.nb_geometry, rng);
        const ComplexMatrix H2 = gen_channel(cfg.ris_ue_model, ris, ue_geom, rng);

        const ComplexMatrix F1 = mrt_precoder(G1);
        const RegulationMatrix phi1 = finalize(cfg, optimal_regulation(rx_row(H1, 0), G1 * F1));

        MultiCellSample s;
        s.signal_power = precoded_power(cascaded_channel(H1, phi1, G1));

        // The neighbour NB keeps beaming at its own RIS; only the RIS regulation toward the
        // victim differs between the cases.
        const ComplexMatrix F2 = mrt_precoder(G2);
        auto interference = [&](const RegulationMatrix &phi2) {
            return (cascaded_channel(H2, phi2, G2) * F2).squaredNorm();
        };
        const RegulationMatrix matched = finalize(cfg, optimal_regulation(rx_row(H2, 0), G2 * F2));
        const RegulationMatrix random =
            finalize(cfg, random_phase_regulation(static_cast<std::size_t>(ris.elements()), rng));

        s.interference_null = 0.0;
        s.interference_matched = interference(matched);
        s.interference_random = interference(random);

        s.rate_no_interference = link_rate(cfg, s.signal_power);
        s.rate_null = link_rate(cfg, s.signal_power, s.interference_null);
        s.rate_matched = link_rate(cfg, s.signal_power, s.interference_matched);
        s.rate_random = link_rate(cfg, s.signal_power, s.interference_random);
        return s;
    }
}
