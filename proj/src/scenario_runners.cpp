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

#include "risnet/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace risnet
{
    namespace
    {
        std::string number(double v)
        {
            char buf[64];
            const auto r = std::to_chars(buf, buf + sizeof buf, v);
            return std::string(buf, r.ptr);
        }

        std::string beta_label(const std::string &prefix, double beta)
        {
            return prefix + "_beta_" + number(beta);
        }

        std::uint64_t fnv1a(const std::string &text)
        {
            std::uint64_t h = 0xcbf29ce484222325ULL;
            for (unsigned char c : text)
            {
                h ^= c;
                h *= 0x100000001b3ULL;
            }
            return h;
        }

        // Runs `fill(sample_row, rng, ris)` for every sweep point of every trial.
        template <typename Fill>
        CurveSet run_scenario(const ScenarioConfig &cfg, Fill fill)
        {
            cfg.validate();
            const TrialLayout layout = scenario_layout(cfg);
            const std::size_t points = cfg.ris_sweep.size();
            const std::size_t curves = layout.curves.size();
            auto trial = [&](std::uint64_t t) {
                TrialSamples out(points * curves);
                std::vector<double> row(curves);
                for (std::size_t i = 0; i < points; ++i)
                {
                    RngStream rng(cfg.seed, t, i);
                    fill(row, rng, cfg.ris_sweep[i]);
                    for (std::size_t c = 0; c < curves; ++c)
                        out[c * points + i] = row[c];
                }
                return out;
            };
            CurveSet cs = run_trials(layout, trial, {cfg.trials, cfg.seed, cfg.threads});
            cs.config_digest = cfg.digest();
            return cs;
        }
    }

    std::string to_string(Scenario s)
    {
        switch (s)
        {
        case Scenario::comp_jt: return "comp_jt";
        case Scenario::multi_ue_pa: return "multi_ue_pa";
        case Scenario::multi_ue_blocking: return "multi_ue_blocking";
        case Scenario::multi_ue_noncollab: return "multi_ue_noncollab";
        case Scenario::multi_cell: return "multi_cell";
        }
        return "?";
    }

    std::string to_string(Mode m)
    {
        return m == Mode::ncm ? "ncm" : "sam";
    }

    std::string to_string(JtVariant v)
    {
        switch (v)
        {
        case JtVariant::coherent: return "coherent";
        case JtVariant::noncoherent: return "noncoherent";
        case JtVariant::calibrated: return "calibrated";
        case JtVariant::dps: return "dps";
        }
        return "?";
    }

    std::string to_string(InterferenceCase c)
    {
        switch (c)
        {
        case InterferenceCase::null_space: return "null";
        case InterferenceCase::matched: return "matched";
        case InterferenceCase::random: return "random";
        }
        return "?";
    }

    std::string to_string(BlockingOutput b)
    {
        return b == BlockingOutput::per_ue ? "per_ue" : "sum";
    }

    std::string to_string(ChannelModel m)
    {
        return m == ChannelModel::los ? "los" : "rayleigh";
    }

    void ScenarioConfig::validate() const
    {
        if (trials < 1)
            throw ConfigError("trials", "must be >= 1");
        if (ris_sweep.empty())
            throw ConfigError("ris_sweep", "sweep must not be empty");
        for (const auto &g : ris_sweep)
        {
            try
            {
                g.validate();
            }
            catch (const std::invalid_argument &e)
            {
                throw ConfigError("ris_sweep", e.what());
            }
        }
        try
        {
            nb_geometry.validate();
        }
        catch (const std::invalid_argument &e)
        {
            throw ConfigError("nb_geometry", e.what());
        }
        if (ue_antennas < 1)
            throw ConfigError("ue_antennas", "must be >= 1");
        if (!(carrier_freq > 0.0) || !std::isfinite(carrier_freq))
            throw ConfigError("carrier_freq", "must be positive");
        if (!(budget.power > 0.0) || !std::isfinite(budget.power))
            throw ConfigError("power", "must be positive");
        if (!(budget.noise_var > 0.0) || !std::isfinite(budget.noise_var))
            throw ConfigError("noise_var", "must be positive");
        if (quant_bits < 0 || quant_bits > 30)
            throw ConfigError("quant_bits", "must be in [0, 30]");
        if (!std::isfinite(path_phase))
            throw ConfigError("path_phase", "must be finite");

        switch (scenario)
        {
        case Scenario::comp_jt:
            if (branches < 2)
                throw ConfigError("branches", "joint transmission needs at least two RIS branches");
            if (jt_variants.empty())
                throw ConfigError("jt_variants", "must not be empty");
            break;
        case Scenario::multi_ue_pa:
            if (ues < 1)
                throw ConfigError("ues", "must be >= 1");
            if (pa_grid.phase_steps < 2)
                throw ConfigError("pa_phase_steps", "must be >= 2");
            if (pa_grid.amp_steps < 2)
                throw ConfigError("pa_amp_steps", "must be >= 2");
            if (ues > 3)
                throw ConfigError("ues", "exhaustive PA search supports at most 3 UEs");
            break;
        case Scenario::multi_ue_blocking:
            if (ues != 2)
                throw ConfigError("ues", "the blocking scenario has exactly 2 UEs");
            for (double b : betas)
                if (!(b > 0.0 && b < 1.0))
                    throw ConfigError("betas", "every beta must lie in (0, 1)");
            if (betas.empty() && blocking_output == BlockingOutput::per_ue)
                throw ConfigError("betas", "must not be empty");
            break;
        case Scenario::multi_ue_noncollab:
            if (ues != 2)
                throw ConfigError("ues", "the non-collaborative scenario has exactly 2 UEs");
            break;
        case Scenario::multi_cell:
            if (interference_cases.empty())
                throw ConfigError("interference_cases", "must not be empty");
            try
            {
                interference_geometry.validate();
            }
            catch (const std::invalid_argument &e)
            {
                throw ConfigError("scheme", e.what());
            }
            break;
        }
    }

    std::string ScenarioConfig::canonical() const
    {
        std::ostringstream os;
        os << "scenario=" << to_string(scenario) << '\n';
        os << "mode=" << (mode ? to_string(*mode) : std::string("both")) << '\n';
        os << "ris_sweep=";
        for (const auto &g : ris_sweep)
            os << g.describe() << ';';
        os << "\nnb=" << nb_geometry.describe() << '\n';
        os << "ue_antennas=" << ue_antennas << "\nues=" << ues << '\n';
        os << "carrier_freq=" << number(carrier_freq) << "\npower=" << number(budget.power)
           << "\nnoise_var=" << number(budget.noise_var) << '\n';
        os << "trials=" << trials << "\nseed=" << seed << '\n';
        os << "nb_ris_model=" << to_string(nb_ris_model) << "\nris_ue_model=" << to_string(ris_ue_model) << '\n';
        os << "ris_enabled=" << ris_enabled << "\nquant_bits=" << quant_bits << "\nnormalize=" << normalize << '\n';
        os << "branches=" << branches << "\njt_variants=";
        for (auto v : jt_variants)
            os << to_string(v) << ';';
        os << "\npath_phase=" << number(path_phase) << '\n';
        os << "pa_grid=" << pa_grid.phase_steps << 'x' << pa_grid.amp_steps
           << "\npa_constraint=" << (pa_constraint == PaConstraint::l1 ? "l1" : "l2") << "\nofdma=" << ofdma << '\n';
        os << "betas=";
        for (double b : betas)
            os << number(b) << ';';
        os << "\nblocking_output=" << to_string(blocking_output) << "\ninterference_cases=";
        for (auto c : interference_cases)
            os << to_string(c) << ';';
        const auto &ig = interference_geometry;
        os << "\nscheme=" << number(ig.normal_angle) << ';' << number(ig.beam_width) << ';' << number(ig.s0) << ';'
           << number(ig.p_i0) << ';';
        for (const auto &[bound, width] : ig.width_table)
            os << number(bound) << ':' << number(width) << ';';
        os << '\n';
        return os.str();
    }

    std::string ScenarioConfig::digest() const
    {
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(canonical())));
        return buf;
    }

    TrialLayout scenario_layout(const ScenarioConfig &cfg)
    {
        TrialLayout layout;
        layout.scenario = to_string(cfg.scenario);
        for (const auto &g : cfg.ris_sweep)
            layout.x.push_back(sweep_x(g));
        auto add = [&layout](std::string label, Mode m) { layout.curves.push_back({std::move(label), to_string(m)}); };

        switch (cfg.scenario)
        {
        case Scenario::comp_jt:
            for (auto v : cfg.jt_variants)
                switch (v)
                {
                case JtVariant::coherent: add("coherent_jt", Mode::ncm); break;
                case JtVariant::noncoherent: add("noncoherent_jt", Mode::sam); break;
                case JtVariant::calibrated: add("calibrated_jt", Mode::ncm); break;
                case JtVariant::dps: add("dps", Mode::ncm); break;
                }
            break;
        case Scenario::multi_ue_pa:
            add("ideal", Mode::ncm);
            add("unexpected", Mode::sam);
            add("pa", Mode::ncm);
            add("pa_opt", Mode::ncm);
            add("random_phase", Mode::sam);
            break;
        case Scenario::multi_ue_blocking:
            if (cfg.blocking_output == BlockingOutput::per_ue)
            {
                add("target", Mode::sam);
                add("non_target", Mode::sam);
                for (double b : cfg.betas)
                {
                    add(beta_label("target", b), Mode::ncm);
                    add(beta_label("non_target", b), Mode::ncm);
                }
            }
            else
            {
                add("normal_ris_sum", Mode::sam);
                add("half_block_sum", Mode::ncm);
            }
            break;
        case Scenario::multi_ue_noncollab:
            add("ue1_perfect_csi", Mode::ncm);
            add("ue2_mixed_channel", Mode::sam);
            add("ue2_ue1_csi", Mode::sam);
            add("ue2_random_phase", Mode::sam);
            break;
        case Scenario::multi_cell:
            for (auto c : cfg.interference_cases)
                switch (c)
                {
                case InterferenceCase::null_space: add("no_interference", Mode::ncm); break;
                case InterferenceCase::random: add("interference_random", Mode::sam); break;
                case InterferenceCase::matched: add("interference_matched", Mode::sam); break;
                }
            break;
        }
        return layout;
    }

    std::string reference_curve(const ScenarioConfig &cfg)
    {
        switch (cfg.scenario)
        {
        case Scenario::comp_jt: return "coherent_jt";
        case Scenario::multi_ue_pa: return "ideal";
        case Scenario::multi_ue_blocking:
            return cfg.blocking_output == BlockingOutput::per_ue ? "target" : "half_block_sum";
        case Scenario::multi_ue_noncollab: return "ue1_perfect_csi";
        case Scenario::multi_cell: return "no_interference";
        }
        return {};
    }

    std::vector<std::pair<std::string, std::string>> dominance_pairs(const ScenarioConfig &cfg)
    {
        switch (cfg.scenario)
        {
        case Scenario::comp_jt:
            return {{"coherent_jt", "noncoherent_jt"}, {"calibrated_jt", "noncoherent_jt"}};
        case Scenario::multi_ue_pa:
            return {{"ideal", "unexpected"}, {"ideal", "random_phase"}, {"pa_opt", "random_phase"},
                    {"pa_opt", "unexpected"}};
        case Scenario::multi_ue_blocking:
            if (cfg.blocking_output == BlockingOutput::sum)
                return {{"half_block_sum", "normal_ris_sum"}};
            {
                std::vector<std::pair<std::string, std::string>> pairs;
                for (double b : cfg.betas)
                    pairs.emplace_back(beta_label("non_target", b), "non_target");
                return pairs;
            }
        case Scenario::multi_ue_noncollab:
            return {{"ue1_perfect_csi", "ue2_mixed_channel"}, {"ue1_perfect_csi", "ue2_ue1_csi"},
                    {"ue1_perfect_csi", "ue2_random_phase"}};
        case Scenario::multi_cell:
            return {{"no_interference", "interference_random"}, {"no_interference", "interference_matched"}};
        }
        return {};
    }

    CurveSet run_comp_jt(const ScenarioConfig &cfg)
    {
        return run_scenario(cfg, [&cfg](std::vector<double> &row, RngStream &rng, const ArrayGeometry &ris) {
            const CompJtSample s = sample_comp_jt(cfg, ris, rng);
            auto rate = [&cfg](double p) { return achievable_rate(sinr_from_powers(p, 0.0, cfg.budget)); };
            for (std::size_t c = 0; c < cfg.jt_variants.size(); ++c)
                switch (cfg.jt_variants[c])
                {
                case JtVariant::coherent: row[c] = rate(s.coherent_power); break;
                case JtVariant::noncoherent: row[c] = rate(s.noncoherent_power); break;
                case JtVariant::calibrated: row[c] = rate(s.calibrated_power); break;
                case JtVariant::dps: row[c] = rate(s.dps_power); break;
                }
        });
    }

    CurveSet run_multi_ue_pa(const ScenarioConfig &cfg)
    {
        return run_scenario(cfg, [&cfg](std::vector<double> &row, RngStream &rng, const ArrayGeometry &ris) {
            const MultiUePaSample s = sample_multi_ue_pa(cfg, ris, rng);
            row = {s.ideal, s.unexpected, s.pa, s.pa_opt, s.random_phase};
        });
    }

    CurveSet run_multi_ue_blocking(const ScenarioConfig &cfg)
    {
        return run_scenario(cfg, [&cfg](std::vector<double> &row, RngStream &rng, const ArrayGeometry &ris) {
            const BlockingSample s = sample_multi_ue_blocking(cfg, ris, rng);
            if (cfg.blocking_output == BlockingOutput::sum)
            {
                row = {s.normal_target + s.normal_non_target, s.half_target + s.half_non_target};
                return;
            }
            row.assign(2 + 2 * cfg.betas.size(), 0.0);
            row[0] = s.normal_target;
            row[1] = s.normal_non_target;
            for (std::size_t b = 0; b < cfg.betas.size(); ++b)
            {
                row[2 + 2 * b] = s.target[b];
                row[3 + 2 * b] = s.non_target[b];
            }
        });
    }

    CurveSet run_multi_ue_noncollab(const ScenarioConfig &cfg)
    {
        return run_scenario(cfg, [&cfg](std::vector<double> &row, RngStream &rng, const ArrayGeometry &ris) {
            const NoncollabSample s = sample_multi_ue_noncollab(cfg, ris, rng);
            row = {s.ue1_perfect_csi, s.ue2_mixed_channel, s.ue2_ue1_csi, s.ue2_random_phase};
        });
    }

    CurveSet run_multi_cell(const ScenarioConfig &cfg)
    {
        return run_scenario(cfg, [&cfg](std::vector<double> &row, RngStream &rng, const ArrayGeometry &ris) {
            const MultiCellSample s = sample_multi_cell(cfg, ris, rng);
            for (std::size_t c = 0; c < cfg.interference_cases.size(); ++c)
                switch (cfg.interference_cases[c])
                {
                case InterferenceCase::null_space: row[c] = s.rate_null; break;
                case InterferenceCase::random: row[c] = s.rate_random; break;
                case InterferenceCase::matched: row[c] = s.rate_matched; break;
                }
        });
    }

    std::vector<SchemeReport> multi_cell_scheme_report(const ScenarioConfig &cfg)
    {
        cfg.validate();
        std::vector<SchemeReport> out;
        for (const auto &ris : cfg.ris_sweep)
        {
            SchemeReport r;
            r.x = sweep_x(ris);
            // coherent power gain of a matched panel with unit-gain elements
            r.strength = r.x * r.x;
            r.scheme1_admitted = scheme1_check(r.strength, cfg.interference_geometry);
            r.scheme2 = scheme2_equivalent_interference(r.strength, cfg.interference_geometry);
            r.scheme3_width = scheme3_select_width(cfg.interference_geometry.normal_angle, cfg.interference_geometry);
            out.push_back(r);
        }
        return out;
    }

    CurveSet run_experiment(const ScenarioConfig &cfg)
    {
        cfg.validate();
        CurveSet cs;
        switch (cfg.scenario)
        {
        case Scenario::comp_jt: cs = run_comp_jt(cfg); break;
        case Scenario::multi_ue_pa: cs = run_multi_ue_pa(cfg); break;
        case Scenario::multi_ue_blocking: cs = run_multi_ue_blocking(cfg); break;
        case Scenario::multi_ue_noncollab: cs = run_multi_ue_noncollab(cfg); break;
        case Scenario::multi_cell: cs = run_multi_cell(cfg); break;
        }

        if (cfg.normalize && cs.has_curve(reference_curve(cfg)))
        {
            const auto &ref = cs.curve(reference_curve(cfg)).mean;
            const double peak = *std::max_element(ref.begin(), ref.end());
            if (peak > 0.0)
                for (auto &c : cs.curves)
                    for (std::size_t i = 0; i < c.mean.size(); ++i)
                    {
                        c.mean[i] /= peak;
                        c.stderr_[i] /= peak;
                    }
        }

        if (cfg.mode)
        {
            const std::string keep = to_string(*cfg.mode);
            std::erase_if(cs.curves, [&keep](const Curve &c) { return c.mode != keep; });
        }
        cs.canonicalize();
        return cs;
    }

    std::vector<std::string> check_invariants(const ScenarioConfig &cfg, const CurveSet &curves)
    {
        std::vector<std::string> problems;
        for (const auto &c : curves.curves)
            for (std::size_t i = 0; i < c.mean.size(); ++i)
                if (!std::isfinite(c.mean[i]) || c.mean[i] < 0.0)
                    problems.push_back("curve " + c.label + " has a negative or non-finite mean at x=" +
                                       number(curves.x[i]));
        for (const auto &[ncm, sam] : dominance_pairs(cfg))
        {
            if (!curves.has_curve(ncm) || !curves.has_curve(sam))
                continue;
            const auto &a = curves.curve(ncm).mean;
            const auto &b = curves.curve(sam).mean;
            for (std::size_t i = 0; i < a.size(); ++i)
                if (a[i] < b[i] * (1.0 - 1e-12))
                    problems.push_back("NCM curve " + ncm + " falls below SAM curve " + sam + " at x=" +
                                       number(curves.x[i]));
        }
        return problems;
    }
}
