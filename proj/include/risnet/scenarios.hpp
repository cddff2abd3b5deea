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

#include "risnet/channel.hpp"
#include "risnet/metrics.hpp"
#include "risnet/montecarlo.hpp"
#include "risnet/regulation.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace risnet
{
    enum class Scenario
    {
        comp_jt,
        multi_ue_pa,
        multi_ue_blocking,
        multi_ue_noncollab,
        multi_cell
    };

    enum class Mode
    {
        ncm,
        sam
    };

    enum class JtVariant
    {
        coherent,
        noncoherent,
        calibrated,
        dps
    };

    enum class InterferenceCase
    {
        null_space,
        matched,
        random
    };

    enum class BlockingOutput
    {
        per_ue,
        sum
    };

    std::string to_string(Scenario s);
    std::string to_string(Mode m);
    std::string to_string(JtVariant v);
    std::string to_string(InterferenceCase c);
    std::string to_string(BlockingOutput b);
    std::string to_string(ChannelModel m);

    struct ScenarioConfig
    {
        std::string preset; // informational, e.g. "fig3"
        Scenario scenario = Scenario::comp_jt;
        std::optional<Mode> mode; // unset: emit both NCM and SAM curves

        std::vector<ArrayGeometry> ris_sweep;
        ArrayGeometry nb_geometry = ArrayGeometry::upa(8, 4);
        int ue_antennas = 1;
        int ues = 1;
        double carrier_freq = 28e9;
        LinkBudget budget;
        std::uint64_t trials = 1000;
        std::uint64_t seed = 1;
        unsigned threads = 1;

        ChannelModel nb_ris_model = ChannelModel::los;
        ChannelModel ris_ue_model = ChannelModel::los;
        bool ris_enabled = true;
        int quant_bits = 0; // 0: continuous phases
        bool normalize = false;

        // comp_jt
        int branches = 2;
        std::vector<JtVariant> jt_variants{JtVariant::coherent, JtVariant::noncoherent};
        double path_phase = 0.0;

        // multi_ue_pa
        PaGrid pa_grid;
        PaConstraint pa_constraint = PaConstraint::l1;
        bool ofdma = true;

        // multi_ue_blocking
        std::vector<double> betas{0.1, 0.2, 0.4, 0.5, 0.6, 0.8, 0.9};
        BlockingOutput blocking_output = BlockingOutput::per_ue;

        // multi_cell
        std::vector<InterferenceCase> interference_cases{InterferenceCase::null_space, InterferenceCase::random,
                                                         InterferenceCase::matched};
        InterferenceGeometry interference_geometry;

        // Throws ConfigError naming the violated field.
        void validate() const;

        // Deterministic text form used for the config digest.
        std::string canonical() const;
        std::string digest() const;
    };

    // Unit-norm dominant right singular vector of `channel`, rotated so that its first non-zero
    // entry (the reference antenna) is real and positive.
    ComplexMatrix mrt_precoder(const ComplexMatrix &channel);

    // x-axis value of a sweep point: total RIS elements.
    double sweep_x(const ArrayGeometry &ris);

    // ----- single-realization kernels (shared by the runners and the acceptance suite) -----

    struct CompJtSample
    {
        double coherent_power = 0.0;
        double noncoherent_power = 0.0;
        double calibrated_power = 0.0;
        double dps_power = 0.0;
        std::vector<double> branch_power; // each branch alone with its own matched regulation
    };

    CompJtSample sample_comp_jt(const ScenarioConfig &cfg, const ArrayGeometry &ris, RngStream &rng);

    struct MultiUePaSample
    {
        // per-UE average rates
        double ideal = 0.0;
        double unexpected = 0.0;
        double pa = 0.0;
        double pa_opt = 0.0;
        double random_phase = 0.0;
    };

    MultiUePaSample sample_multi_ue_pa(const ScenarioConfig &cfg, const ArrayGeometry &ris, RngStream &rng);

    struct BlockingSample
    {
        double normal_target = 0.0;
        double normal_non_target = 0.0;
        std::vector<double> target;     // per beta in cfg.betas (per-UE output only)
        std::vector<double> non_target; // per beta in cfg.betas (per-UE output only)
        double half_target = 0.0;
        double half_non_target = 0.0;
    };

    BlockingSample sample_multi_ue_blocking(const ScenarioConfig &cfg, const ArrayGeometry &ris, RngStream &rng);

    struct NoncollabSample
    {
        double ue1_perfect_csi = 0.0;
        double ue2_mixed_channel = 0.0;
        double ue2_ue1_csi = 0.0;
        double ue2_random_phase = 0.0;
    };

    NoncollabSample sample_multi_ue_noncollab(const ScenarioConfig &cfg, const ArrayGeometry &ris, RngStream &rng);

    struct MultiCellSample
    {
        double signal_power = 0.0;
        double interference_null = 0.0;
        double interference_matched = 0.0;
        double interference_random = 0.0;
        double rate_no_interference = 0.0; // single cell without a neighbour
        double rate_null = 0.0;
        double rate_matched = 0.0;
        double rate_random = 0.0;
    };

    MultiCellSample sample_multi_cell(const ScenarioConfig &cfg, const ArrayGeometry &ris, RngStream &rng);

    // ----- runners -----

    // Trial layout (curve labels, modes, x) of a scenario, before mode filtering.
    TrialLayout scenario_layout(const ScenarioConfig &cfg);

    // Label of the curve whose maximum is used for normalisation.
    std::string reference_curve(const ScenarioConfig &cfg);

    // Pairs (NCM curve, SAM curve) whose means must satisfy ncm >= sam at every x.
    std::vector<std::pair<std::string, std::string>> dominance_pairs(const ScenarioConfig &cfg);

    CurveSet run_comp_jt(const ScenarioConfig &cfg);
    CurveSet run_multi_ue_pa(const ScenarioConfig &cfg);
    CurveSet run_multi_ue_blocking(const ScenarioConfig &cfg);
    CurveSet run_multi_ue_noncollab(const ScenarioConfig &cfg);
    CurveSet run_multi_cell(const ScenarioConfig &cfg);

    // Interference-limiting side metrics for the matched neighbour beam at each sweep point.
    struct SchemeReport
    {
        double x = 0.0;
        double strength = 0.0; // matched-beam power gain toward the neighbour, linear
        bool scheme1_admitted = false;
        EquivalentInterference scheme2;
        double scheme3_width = 0.0;
    };

    std::vector<SchemeReport> multi_cell_scheme_report(const ScenarioConfig &cfg);

    // Validates, dispatches to the scenario runner, normalises if requested, filters by mode
    // and returns the canonical (sorted) CurveSet.
    CurveSet run_experiment(const ScenarioConfig &cfg);

    // Returns a description of every broken output invariant (empty when all hold):
    // finite non-negative means and NCM >= SAM for the scenario's dominance pairs.
    std::vector<std::string> check_invariants(const ScenarioConfig &cfg, const CurveSet &curves);
}
