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
#include "risnet/csv.hpp"
#include "risnet/errors.hpp"
#include "risnet/scenarios.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

namespace
{
    enum ExitCode
    {
        exit_ok = 0,
        exit_config = 2,
        exit_io = 3,
        exit_invariant = 4,
        exit_internal = 5
    };

    int report(const char *category, const std::string &message, int code)
    {
        std::cerr << "error: category=" << category << " message=" << message << '\n';
        return code;
    }

    struct Options
    {
        std::string config_path;
        std::string preset;
        std::optional<std::uint64_t> seed;
        std::optional<std::uint64_t> trials;
        std::optional<unsigned> threads;
        std::string out;
        std::string format = "csv";
        std::string ofdma;
        std::string mode;
    };

    void add_common(CLI::App *cmd, Options &o)
    {
        cmd->add_option("--config", o.config_path, "flat key = value config file")->check(CLI::ExistingFile);
        cmd->add_option("--preset", o.preset, "built-in configuration fig3..fig8");
        cmd->add_option("--seed", o.seed, "64-bit master seed");
        cmd->add_option("--trials", o.trials, "Monte Carlo trials per sweep point");
        cmd->add_option("--threads", o.threads, "worker threads (0 = all cores)");
        cmd->add_option("--out", o.out, "output path (default stdout)");
        cmd->add_option("--format", o.format, "table format")->check(CLI::IsMember({"csv", "tsv"}));
        cmd->add_option("--ofdma", o.ofdma, "orthogonal multi-UE access")->check(CLI::IsMember({"on", "off"}));
        cmd->add_option("--mode", o.mode, "keep only NCM or SAM curves")->check(CLI::IsMember({"ncm", "sam"}));
    }

    risnet::ScenarioConfig resolve(const Options &o, std::optional<risnet::Scenario> scenario)
    {
        using namespace risnet;
        ScenarioConfig cfg;
        if (!o.config_path.empty())
        {
            cfg = load_config(o.config_path);
            if (!o.preset.empty() && o.preset != cfg.preset)
                throw ConfigError("preset", "--preset " + o.preset + " conflicts with the config file");
        }
        else if (!o.preset.empty())
            cfg = preset_config(o.preset);
        else if (scenario)
            cfg = preset_config(default_preset(*scenario));
        else
            throw ConfigError("preset", "the preset subcommand needs --preset or --config");

        if (scenario && cfg.scenario != *scenario)
            throw ConfigError("scenario", "configuration describes " + std::string(to_string(cfg.scenario)) +
                                              ", not " + std::string(to_string(*scenario)));
        if (o.seed)
            cfg.seed = *o.seed;
        if (o.trials)
            cfg.trials = *o.trials;
        if (o.threads)
            cfg.threads = *o.threads;
        if (!o.ofdma.empty())
            cfg.ofdma = o.ofdma == "on";
        if (!o.mode.empty())
            cfg.mode = o.mode == "ncm" ? Mode::ncm : Mode::sam;
        cfg.validate();
        return cfg;
    }

    void print_scheme_report(const risnet::ScenarioConfig &cfg)
    {
        for (const auto &r : risnet::multi_cell_scheme_report(cfg))
        {
            std::fprintf(stderr,
                         "scheme M=%g strength=%.6g scheme1_admitted=%d p_I=%.6g I_e=%.6g scheme2_admitted=%d "
                         "scheme3_width_rad=%.6g\n",
                         r.x, r.strength, r.scheme1_admitted ? 1 : 0, r.scheme2.p_i, r.scheme2.i_e,
                         r.scheme2.admitted ? 1 : 0, r.scheme3_width);
        }
    }

    int execute(const Options &o, std::optional<risnet::Scenario> scenario)
    {
        using namespace risnet;
        const ScenarioConfig cfg = resolve(o, scenario);
        const CurveSet curves = run_experiment(cfg);
        if (cfg.scenario == Scenario::multi_cell)
            print_scheme_report(cfg);

        const auto format = o.format == "tsv" ? TableFormat::tsv : TableFormat::csv;
        if (o.out.empty())
        {
            emit_csv(curves, std::cout, format);
            std::cout.flush();
            if (!std::cout)
                throw IoError("write to stdout failed");
        }
        else
            write_csv(curves, o.out, format);

        const auto broken = check_invariants(cfg, curves);
        if (!broken.empty())
        {
            std::string msg;
            for (const auto &b : broken)
                msg += (msg.empty() ? "" : "; ") + b;
            throw InvariantError(msg);
        }
        return exit_ok;
    }
}

int main(int argc, char **argv)
{
    using risnet::Scenario;

    CLI::App app{"Link-level simulator for RIS-assisted networks"};
    app.require_subcommand(1);

    Options opts;
    std::optional<Scenario> chosen;
    const std::pair<const char *, std::optional<Scenario>> commands[] = {
        {"comp-jt", Scenario::comp_jt},
        {"multi-ue-pa", Scenario::multi_ue_pa},
        {"multi-ue-blocking", Scenario::multi_ue_blocking},
        {"multi-ue-noncollab", Scenario::multi_ue_noncollab},
        {"multi-cell", Scenario::multi_cell},
        {"preset", std::nullopt}};
    for (const auto &[name, scenario] : commands)
    {
        CLI::App *cmd = app.add_subcommand(name, scenario ? "run one scenario (default: its canonical preset)"
                                                          : "run a named preset or config file");
        add_common(cmd, opts);
        if (!scenario)
            cmd->add_option("name", opts.preset, "preset name fig3..fig8");
        cmd->callback([&chosen, s = scenario] { chosen = s; });
    }

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForAllHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        return report("usage", e.what(), exit_config);
    }

    try
    {
        return execute(opts, chosen);
    }
    catch (const risnet::ConfigError &e)
    {
        return report("config", e.what(), exit_config);
    }
    catch (const risnet::IoError &e)
    {
        return report("io", e.what(), exit_io);
    }
    catch (const risnet::InvariantError &e)
    {
        return report("invariant", e.what(), exit_invariant);
    }
    catch (const std::exception &e)
    {
        return report("internal", e.what(), exit_internal);
    }
}
