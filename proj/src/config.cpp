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

#include "risnet/config.hpp"

#include "risnet/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

namespace risnet
{
    namespace
    {
        constexpr double deg = std::numbers::pi / 180.0;

        std::vector<ArrayGeometry> upa_sweep(int n_x, const std::vector<int> &n_y)
        {
            std::vector<ArrayGeometry> out;
            for (int y : n_y)
                out.push_back(ArrayGeometry::upa(n_x, y));
            return out;
        }

        std::vector<ArrayGeometry> ula_sweep(const std::vector<int> &n)
        {
            std::vector<ArrayGeometry> out;
            for (int v : n)
                out.push_back(ArrayGeometry::ula(v));
            return out;
        }

        // Common 28 GHz setup: RIS UPA 20 x My, NB UPA 8 x 4, single-antenna UE, LOS links.
        ScenarioConfig general_setup()
        {
            ScenarioConfig c;
            c.ris_sweep = upa_sweep(20, {8, 16, 32, 64});
            c.nb_geometry = ArrayGeometry::upa(8, 4);
            c.ue_antennas = 1;
            c.ues = 1;
            c.carrier_freq = 28e9;
            c.budget = {1.0, 3.16e-11};
            c.nb_ris_model = ChannelModel::los;
            c.ris_ue_model = ChannelModel::los;
            c.trials = 1000;
            c.seed = 1;
            c.normalize = true;
            c.interference_geometry.normal_angle = std::numbers::pi / 3.0;
            c.interference_geometry.beam_width = 2.0 * deg;
            c.interference_geometry.s0 = 1e6;
            c.interference_geometry.p_i0 = 0.01;
            c.interference_geometry.width_table = {{std::numbers::pi / 6.0, 6.0 * deg}, {std::numbers::pi, 2.0 * deg}};
            return c;
        }

        // Multi-UE access setup: RIS ULA N in {64..1024}, NB ULA 64, two UEs, 5 GHz.
        // RIS -> UE links are rich-scattering Rayleigh; the NB -> RIS link is line of sight.
        ScenarioConfig multi_ue_setup()
        {
            ScenarioConfig c = general_setup();
            c.ris_sweep = ula_sweep({64, 128, 256, 512, 1024});
            c.nb_geometry = ArrayGeometry::ula(64);
            c.ues = 2;
            c.carrier_freq = 5e9;
            c.ris_ue_model = ChannelModel::rayleigh;
            c.ofdma = true;
            return c;
        }

        std::string trim(std::string_view s)
        {
            const auto b = s.find_first_not_of(" \t\r");
            if (b == std::string_view::npos)
                return {};
            const auto e = s.find_last_not_of(" \t\r");
            return std::string(s.substr(b, e - b + 1));
        }

        std::vector<std::string> split_list(const std::string &v)
        {
            std::vector<std::string> out;
            std::string item;
            std::istringstream is(v);
            while (std::getline(is, item, ','))
            {
                item = trim(item);
                if (!item.empty())
                    out.push_back(item);
            }
            return out;
        }

        // Values of one document entry with their source line for diagnostics.
        struct Entry
        {
            std::string value;
            int line;
        };

        struct Reader
        {
            std::map<std::string, Entry> entries;

            [[noreturn]] void fail(const std::string &key, const std::string &msg) const
            {
                throw ConfigError(key, msg, entries.at(key).line);
            }

            bool has(const std::string &key) const { return entries.contains(key); }

            double real(const std::string &key) const
            {
                const std::string &v = entries.at(key).value;
                double out = 0.0;
                const auto r = std::from_chars(v.data(), v.data() + v.size(), out);
                if (r.ec != std::errc() || r.ptr != v.data() + v.size() || !std::isfinite(out))
                    fail(key, "expected a finite number, got '" + v + "'");
                return out;
            }

            long long integer(const std::string &key, const std::string &text) const
            {
                long long out = 0;
                const auto r = std::from_chars(text.data(), text.data() + text.size(), out);
                if (r.ec != std::errc() || r.ptr != text.data() + text.size())
                    fail(key, "expected an integer, got '" + text + "'");
                return out;
            }

            long long integer(const std::string &key) const { return integer(key, entries.at(key).value); }

            std::uint64_t unsigned64(const std::string &key) const
            {
                const std::string &v = entries.at(key).value;
                std::uint64_t out = 0;
                const auto r = std::from_chars(v.data(), v.data() + v.size(), out);
                if (r.ec != std::errc() || r.ptr != v.data() + v.size())
                    fail(key, "expected a non-negative integer, got '" + v + "'");
                return out;
            }

            bool boolean(const std::string &key) const
            {
                const std::string &v = entries.at(key).value;
                if (v == "true" || v == "on" || v == "1" || v == "yes")
                    return true;
                if (v == "false" || v == "off" || v == "0" || v == "no")
                    return false;
                fail(key, "expected true/false, got '" + v + "'");
            }

            std::vector<std::string> list(const std::string &key) const
            {
                auto out = split_list(entries.at(key).value);
                if (out.empty())
                    fail(key, "list must not be empty");
                return out;
            }

            std::vector<int> int_list(const std::string &key) const
            {
                std::vector<int> out;
                for (const auto &s : list(key))
                    out.push_back(static_cast<int>(integer(key, s)));
                return out;
            }

            std::vector<double> real_list(const std::string &key) const
            {
                std::vector<double> out;
                for (const auto &s : list(key))
                {
                    double v = 0.0;
                    const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
                    if (r.ec != std::errc() || r.ptr != s.data() + s.size() || !std::isfinite(v))
                        fail(key, "expected a list of numbers, got '" + s + "'");
                    out.push_back(v);
                }
                return out;
            }

            template <typename E>
            E choice(const std::string &key, const std::string &text, const std::map<std::string, E> &options) const
            {
                const auto it = options.find(text);
                if (it == options.end())
                {
                    std::string allowed;
                    for (const auto &[name, _] : options)
                        allowed += (allowed.empty() ? "" : "|") + name;
                    fail(key, "expected one of " + allowed + ", got '" + text + "'");
                }
                return it->second;
            }

            template <typename E>
            E choice(const std::string &key, const std::map<std::string, E> &options) const
            {
                return choice(key, entries.at(key).value, options);
            }
        };

        const std::vector<std::string> &known_keys()
        {
            static const std::vector<std::string> keys{
                "preset", "scenario", "mode", "ris_kind", "ris_nx", "ris_ny", "ris_spacing", "nb_kind", "nb_nx",
                "nb_ny", "nb_spacing", "ue_antennas", "ues", "carrier_freq", "power", "noise_var", "trials", "seed",
                "threads", "nb_ris_model", "ris_ue_model", "ris_enabled", "quant_bits", "normalize", "branches",
                "jt_variants", "path_phase", "pa_phase_steps", "pa_amp_steps", "pa_constraint", "ofdma", "betas",
                "blocking_output", "interference_cases", "scheme_normal_angle", "scheme_beam_width_deg", "scheme_s0",
                "scheme_p_i0", "scheme_width_table"};
            return keys;
        }

        const std::map<std::string, ArrayKind> kinds{{"ula", ArrayKind::ula}, {"upa", ArrayKind::upa}};
        const std::map<std::string, ChannelModel> models{{"los", ChannelModel::los},
                                                         {"rayleigh", ChannelModel::rayleigh}};

        // Zips per-axis lists into geometries; a single-element list broadcasts.
        std::vector<ArrayGeometry> build_sweep(const Reader &r, ArrayKind kind, std::vector<int> nx,
                                               std::vector<int> ny, double spacing)
        {
            if (kind == ArrayKind::ula)
                ny.assign(1, 1);
            const std::size_t n = std::max(nx.size(), ny.size());
            auto at = [n, &r](const std::vector<int> &v, std::size_t i, const char *key) {
                if (v.size() != 1 && v.size() != n)
                    r.fail(r.has(key) ? key : "ris_nx", "ris_nx and ris_ny lists must have equal length or length 1");
                return v.size() == 1 ? v[0] : v[i];
            };
            std::vector<ArrayGeometry> out;
            for (std::size_t i = 0; i < n; ++i)
                out.push_back({kind, at(nx, i, "ris_nx"), at(ny, i, "ris_ny"), spacing});
            return out;
        }
    }

    std::vector<std::string> preset_names()
    {
        return {"fig3", "fig4", "fig5", "fig6", "fig7", "fig8"};
    }

    ScenarioConfig preset_config(std::string_view name)
    {
        ScenarioConfig c;
        if (name == "fig3")
        {
            c = general_setup();
            c.scenario = Scenario::comp_jt;
            c.branches = 2;
            c.jt_variants = {JtVariant::coherent, JtVariant::noncoherent};
        }
        else if (name == "fig4")
        {
            c = multi_ue_setup();
            c.scenario = Scenario::multi_ue_pa;
        }
        else if (name == "fig5" || name == "fig6")
        {
            c = multi_ue_setup();
            c.scenario = Scenario::multi_ue_blocking;
            c.blocking_output = name == "fig5" ? BlockingOutput::per_ue : BlockingOutput::sum;
        }
        else if (name == "fig7")
        {
            c = multi_ue_setup();
            c.scenario = Scenario::multi_ue_noncollab;
        }
        else if (name == "fig8")
        {
            c = general_setup();
            c.scenario = Scenario::multi_cell;
            c.interference_cases = {InterferenceCase::null_space, InterferenceCase::random, InterferenceCase::matched};
        }
        else
            throw ConfigError("preset", "unknown preset '" + std::string(name) + "' (expected fig3..fig8)");
        c.preset = std::string(name);
        return c;
    }

    std::string default_preset(Scenario s)
    {
        switch (s)
        {
        case Scenario::comp_jt: return "fig3";
        case Scenario::multi_ue_pa: return "fig4";
        case Scenario::multi_ue_blocking: return "fig5";
        case Scenario::multi_ue_noncollab: return "fig7";
        case Scenario::multi_cell: return "fig8";
        }
        return "fig3";
    }

    Scenario parse_scenario(std::string_view name)
    {
        static const std::map<std::string, Scenario, std::less<>> names{
            {"comp_jt", Scenario::comp_jt},
            {"comp-jt", Scenario::comp_jt},
            {"multi_ue_pa", Scenario::multi_ue_pa},
            {"multi-ue-pa", Scenario::multi_ue_pa},
            {"multi_ue_blocking", Scenario::multi_ue_blocking},
            {"multi-ue-blocking", Scenario::multi_ue_blocking},
            {"multi_ue_noncollab", Scenario::multi_ue_noncollab},
            {"multi-ue-noncollab", Scenario::multi_ue_noncollab},
            {"multi_cell", Scenario::multi_cell},
            {"multi-cell", Scenario::multi_cell}};
        const auto it = names.find(name);
        if (it == names.end())
            throw ConfigError("scenario", "unknown scenario '" + std::string(name) + "'");
        return it->second;
    }

    ScenarioConfig parse_config(std::string_view text)
    {
        Reader r;
        {
            std::istringstream is{std::string(text)};
            std::string raw;
            int line = 0;
            while (std::getline(is, raw))
            {
                ++line;
                const auto hash = raw.find('#');
                const std::string content = trim(std::string_view(raw).substr(0, hash));
                if (content.empty())
                    continue;
                const auto eq = content.find('=');
                if (eq == std::string::npos)
                    throw ConfigError("", "expected 'key = value', got '" + content + "'", line);
                const std::string key = trim(std::string_view(content).substr(0, eq));
                const std::string value = trim(std::string_view(content).substr(eq + 1));
                if (key.empty())
                    throw ConfigError("", "missing key before '='", line);
                const auto &keys = known_keys();
                if (std::find(keys.begin(), keys.end(), key) == keys.end())
                    throw ConfigError(key, "unknown key '" + key + "'", line);
                if (r.has(key))
                    throw ConfigError(key, "duplicate key", line);
                if (value.empty())
                    throw ConfigError(key, "missing value", line);
                r.entries.emplace(key, Entry{value, line});
            }
        }

        ScenarioConfig c;
        if (r.has("preset"))
        {
            try
            {
                c = preset_config(r.entries.at("preset").value);
            }
            catch (const ConfigError &e)
            {
                r.fail("preset", e.what());
            }
            if (r.has("scenario"))
            {
                Scenario s{};
                try
                {
                    s = parse_scenario(r.entries.at("scenario").value);
                }
                catch (const ConfigError &e)
                {
                    r.fail("scenario", e.what());
                }
                if (s != c.scenario)
                    r.fail("scenario", "does not match the scenario of preset " + c.preset);
            }
        }
        else if (r.has("scenario"))
        {
            Scenario s{};
            try
            {
                s = parse_scenario(r.entries.at("scenario").value);
            }
            catch (const ConfigError &e)
            {
                r.fail("scenario", e.what());
            }
            c = preset_config(default_preset(s));
        }
        else
            throw ConfigError("preset", "the document must name a preset or a scenario");

        if (r.has("mode"))
        {
            const std::string &m = r.entries.at("mode").value;
            if (m == "both")
                c.mode.reset();
            else
                c.mode = r.choice<Mode>("mode", {{"ncm", Mode::ncm}, {"sam", Mode::sam}});
        }

        // RIS sweep
        if (r.has("ris_kind") || r.has("ris_nx") || r.has("ris_ny") || r.has("ris_spacing"))
        {
            ArrayKind kind = c.ris_sweep.front().kind;
            std::vector<int> nx, ny;
            for (const auto &g : c.ris_sweep)
            {
                nx.push_back(g.n_x);
                ny.push_back(g.n_y);
            }
            double spacing = c.ris_sweep.front().spacing;
            if (r.has("ris_kind"))
                kind = r.choice("ris_kind", kinds);
            if (r.has("ris_nx"))
                nx = r.int_list("ris_nx");
            else if (kind != c.ris_sweep.front().kind)
                nx.assign(1, nx.front());
            if (r.has("ris_ny"))
                ny = r.int_list("ris_ny");
            auto collapse = [](std::vector<int> &v) {
                if (std::adjacent_find(v.begin(), v.end(), std::not_equal_to<>()) == v.end())
                    v.resize(1);
            };
            if (!r.has("ris_nx"))
                collapse(nx);
            if (!r.has("ris_ny"))
                collapse(ny);
            if (r.has("ris_spacing"))
                spacing = r.real("ris_spacing");
            c.ris_sweep = build_sweep(r, kind, nx, ny, spacing);
        }

        if (r.has("nb_kind"))
        {
            c.nb_geometry.kind = r.choice("nb_kind", kinds);
            if (c.nb_geometry.kind == ArrayKind::ula)
                c.nb_geometry.n_y = 1;
        }
        if (r.has("nb_nx"))
            c.nb_geometry.n_x = static_cast<int>(r.integer("nb_nx"));
        if (r.has("nb_ny"))
            c.nb_geometry.n_y = static_cast<int>(r.integer("nb_ny"));
        if (r.has("nb_spacing"))
            c.nb_geometry.spacing = r.real("nb_spacing");

        if (r.has("ue_antennas"))
            c.ue_antennas = static_cast<int>(r.integer("ue_antennas"));
        if (r.has("ues"))
            c.ues = static_cast<int>(r.integer("ues"));
        if (r.has("carrier_freq"))
            c.carrier_freq = r.real("carrier_freq");
        if (r.has("power"))
            c.budget.power = r.real("power");
        if (r.has("noise_var"))
            c.budget.noise_var = r.real("noise_var");
        if (r.has("trials"))
            c.trials = r.unsigned64("trials");
        if (r.has("seed"))
            c.seed = r.unsigned64("seed");
        if (r.has("threads"))
            c.threads = static_cast<unsigned>(r.unsigned64("threads"));
        if (r.has("nb_ris_model"))
            c.nb_ris_model = r.choice("nb_ris_model", models);
        if (r.has("ris_ue_model"))
            c.ris_ue_model = r.choice("ris_ue_model", models);
        if (r.has("ris_enabled"))
            c.ris_enabled = r.boolean("ris_enabled");
        if (r.has("quant_bits"))
            c.quant_bits = static_cast<int>(r.integer("quant_bits"));
        if (r.has("normalize"))
            c.normalize = r.boolean("normalize");
        if (r.has("branches"))
            c.branches = static_cast<int>(r.integer("branches"));
        if (r.has("jt_variants"))
        {
            c.jt_variants.clear();
            for (const auto &v : r.list("jt_variants"))
                c.jt_variants.push_back(r.choice<JtVariant>("jt_variants", v,
                                                            {{"coherent", JtVariant::coherent},
                                                             {"noncoherent", JtVariant::noncoherent},
                                                             {"calibrated", JtVariant::calibrated},
                                                             {"dps", JtVariant::dps}}));
        }
        if (r.has("path_phase"))
            c.path_phase = r.real("path_phase");
        if (r.has("pa_phase_steps"))
            c.pa_grid.phase_steps = static_cast<int>(r.integer("pa_phase_steps"));
        if (r.has("pa_amp_steps"))
            c.pa_grid.amp_steps = static_cast<int>(r.integer("pa_amp_steps"));
        if (r.has("pa_constraint"))
            c.pa_constraint = r.choice<PaConstraint>("pa_constraint", {{"l1", PaConstraint::l1}, {"l2", PaConstraint::l2}});
        if (r.has("ofdma"))
            c.ofdma = r.boolean("ofdma");
        if (r.has("betas"))
            c.betas = r.real_list("betas");
        if (r.has("blocking_output"))
            c.blocking_output = r.choice<BlockingOutput>(
                "blocking_output", {{"per_ue", BlockingOutput::per_ue}, {"sum", BlockingOutput::sum}});
        if (r.has("interference_cases"))
        {
            c.interference_cases.clear();
            for (const auto &v : r.list("interference_cases"))
                c.interference_cases.push_back(r.choice<InterferenceCase>(
                    "interference_cases", v,
                    {{"null", InterferenceCase::null_space},
                     {"matched", InterferenceCase::matched},
                     {"random", InterferenceCase::random}}));
        }
        auto &ig = c.interference_geometry;
        if (r.has("scheme_normal_angle"))
            ig.normal_angle = r.real("scheme_normal_angle");
        if (r.has("scheme_beam_width_deg"))
            ig.beam_width = r.real("scheme_beam_width_deg") * deg;
        if (r.has("scheme_s0"))
            ig.s0 = r.real("scheme_s0");
        if (r.has("scheme_p_i0"))
            ig.p_i0 = r.real("scheme_p_i0");
        if (r.has("scheme_width_table"))
        {
            ig.width_table.clear();
            for (const auto &row : r.list("scheme_width_table"))
            {
                const auto colon = row.find(':');
                if (colon == std::string::npos)
                    r.fail("scheme_width_table", "rows are 'angle_rad:width_deg', got '" + row + "'");
                double bound = 0.0, width = 0.0;
                const std::string a = row.substr(0, colon), b = row.substr(colon + 1);
                const auto ra = std::from_chars(a.data(), a.data() + a.size(), bound);
                const auto rb = std::from_chars(b.data(), b.data() + b.size(), width);
                if (ra.ec != std::errc() || rb.ec != std::errc() || ra.ptr != a.data() + a.size() ||
                    rb.ptr != b.data() + b.size())
                    r.fail("scheme_width_table", "rows are 'angle_rad:width_deg', got '" + row + "'");
                ig.width_table.emplace_back(bound, width * deg);
            }
        }

        try
        {
            c.validate();
        }
        catch (const ConfigError &e)
        {
            // attach the line of the offending key when the document set it
            if (r.has(e.field()))
                throw ConfigError(e.field(), e.what(), r.entries.at(e.field()).line);
            throw;
        }
        return c;
    }

    ScenarioConfig load_config(const std::string &path)
    {
        std::ifstream in(path);
        if (!in)
            throw IoError("cannot read config file '" + path + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        return parse_config(ss.str());
    }
}
