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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "risnet/config.hpp"
#include "risnet/csv.hpp"
#include "risnet/errors.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

using namespace risnet;

namespace
{
    // Returns the ConfigError raised by `text`, failing the test if none is raised.
    ConfigError config_error(const std::string &text)
    {
        try
        {
            parse_config(text);
        }
        catch (const ConfigError &e)
        {
            return e;
        }
        FAIL("document was accepted: " << text);
        return ConfigError("", "");
    }

    std::size_t count_lines(const std::string &s)
    {
        return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
    }

    CurveSet sample_set()
    {
        CurveSet cs;
        cs.scenario = "multi_ue_pa";
        cs.seed = 18446744073709551615ull;
        cs.x = {64, 128};
        cs.curves = {{"pa", "", {0.1, 1.0 / 3.0}, {1e-17, 2.5e-4}, {10, 10}},
                     {"ideal", "", {std::nextafter(1.0, 2.0), 123456.789}, {0.0, 5e-300}, {10, 10}}};
        cs.canonicalize();
        return cs;
    }
}

TEST_CASE("fig3 preset holds the 28 GHz joint-transmission setup")
{
    const ScenarioConfig c = parse_config("preset = fig3\n");
    CHECK(c.scenario == Scenario::comp_jt);
    REQUIRE(c.ris_sweep.size() == 4);
    const int my[] = {8, 16, 32, 64};
    for (std::size_t i = 0; i < 4; ++i)
    {
        CHECK(c.ris_sweep[i].kind == ArrayKind::upa);
        CHECK(c.ris_sweep[i].n_x == 20);
        CHECK(c.ris_sweep[i].n_y == my[i]);
    }
    CHECK(c.nb_geometry == ArrayGeometry::upa(8, 4));
    CHECK(c.carrier_freq == 28e9);
    CHECK(c.budget.noise_var == 3.16e-11);
    CHECK(c.budget.power == 1.0);
    CHECK(c.digest() == preset_config("fig3").digest());
}

TEST_CASE("multi-UE presets hold the 5 GHz access setup")
{
    for (const char *name : {"fig4", "fig5", "fig6", "fig7"})
    {
        const ScenarioConfig c = preset_config(name);
        REQUIRE(c.ris_sweep.size() == 5);
        for (std::size_t i = 0; i < 5; ++i)
            CHECK(c.ris_sweep[i] == ArrayGeometry::ula(64 << i));
        CHECK(c.nb_geometry == ArrayGeometry::ula(64));
        CHECK(c.ues == 2);
        CHECK(c.carrier_freq == 5e9);
        CHECK(c.ofdma);
    }
    CHECK(preset_config("fig5").blocking_output == BlockingOutput::per_ue);
    CHECK(preset_config("fig6").blocking_output == BlockingOutput::sum);
    CHECK(preset_config("fig5").betas == std::vector<double>{0.1, 0.2, 0.4, 0.5, 0.6, 0.8, 0.9});
    CHECK(preset_config("fig8").scenario == Scenario::multi_cell);
    CHECK_THROWS_AS(preset_config("fig9"), ConfigError);
}

TEST_CASE("document keys override the preset")
{
    const ScenarioConfig c = parse_config(R"(# custom sweep
scenario = multi_ue_pa
ris_nx = 32, 48   # two panel sizes
trials = 50
seed = 9
ofdma = off
pa_constraint = l2
pa_phase_steps = 8
mode = ncm
scheme_width_table = 0.5:6, 3.2:2
)");
    CHECK(c.preset == "fig4");
    CHECK(c.ris_sweep == std::vector<ArrayGeometry>{ArrayGeometry::ula(32), ArrayGeometry::ula(48)});
    CHECK(c.trials == 50);
    CHECK(c.seed == 9);
    CHECK_FALSE(c.ofdma);
    CHECK(c.pa_constraint == PaConstraint::l2);
    CHECK(c.pa_grid.phase_steps == 8);
    CHECK(c.pa_grid.amp_steps == 8);
    CHECK(c.mode == Mode::ncm);
    REQUIRE(c.interference_geometry.width_table.size() == 2);
    CHECK(c.interference_geometry.width_table[0].second == doctest::Approx(6.0 * std::numbers::pi / 180.0));

    const ScenarioConfig u = parse_config("preset = fig8\nris_ny = 4\nris_nx = 10, 20\n");
    CHECK(u.ris_sweep == std::vector<ArrayGeometry>{ArrayGeometry::upa(10, 4), ArrayGeometry::upa(20, 4)});
    const ScenarioConfig w = parse_config("preset = fig8\nris_ny = 8, 16, 32\n");
    CHECK(w.ris_sweep == std::vector<ArrayGeometry>{ArrayGeometry::upa(20, 8), ArrayGeometry::upa(20, 16),
                                                    ArrayGeometry::upa(20, 32)});
    CHECK_FALSE(parse_config("preset = fig3\nmode = both\n").mode.has_value());
}

TEST_CASE("invalid documents name the offending key")
{
    auto e = config_error("preset = fig3\ntrials = 0\n");
    CHECK(e.field() == "trials");
    CHECK(e.line() == 2);

    e = config_error("preset = fig3\nfoo = 1\n");
    CHECK(e.field() == "foo");
    CHECK(std::string(e.what()).find("foo") != std::string::npos);
    CHECK(e.line() == 2);

    CHECK(config_error("preset = fig3\njust text\n").line() == 2);
    CHECK(config_error("preset = fig3\nseed = 1\nseed = 2\n").field() == "seed");
    CHECK(config_error("preset = fig3\ncarrier_freq = fast\n").field() == "carrier_freq");
    CHECK(config_error("preset = fig3\nnoise_var = -1\n").field() == "noise_var");
    CHECK(config_error("preset = fig3\nris_nx = 1, 2, 3\nris_ny = 1, 2\n").field() == "ris_ny");
    CHECK(config_error("preset = fig3\nnb_ris_model = fading\n").field() == "nb_ris_model");
    CHECK(config_error("preset = fig3\nscenario = multi_cell\n").field() == "scenario");
    CHECK(config_error("preset = fig10\n").field() == "preset");
    CHECK(config_error("trials = 5\n").field() == "preset");
    CHECK(config_error("preset = fig5\nbetas = 0.5, 1.5\n").field() == "betas");
    CHECK(config_error("preset = fig3\nseed =\n").field() == "seed");
}

TEST_CASE("config files are read from disk")
{
    const auto path = std::filesystem::temp_directory_path() / "risnet_config_test.cfg";
    {
        std::ofstream(path) << "preset = fig6\ntrials = 12\n";
    }
    const ScenarioConfig c = load_config(path.string());
    CHECK(c.trials == 12);
    CHECK(c.blocking_output == BlockingOutput::sum);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(load_config(path.string()), IoError);
}

TEST_CASE("single-point table")
{
    CurveSet cs;
    cs.scenario = "comp_jt";
    cs.seed = 1;
    cs.x = {160};
    cs.curves = {{"coherent_jt", "ncm", {0.5}, {0.0}, {1}}};
    const std::string out = emit_csv(cs);
    CHECK(count_lines(out) == 2);
    CHECK(out.rfind("scenario,curve,x,mean_rate,stderr,trials,seed\n", 0) == 0);
    CHECK(out.find("comp_jt,coherent_jt,160,5.0000000000000000e-01,0.0000000000000000e+00,1,1\n") !=
          std::string::npos);
}

TEST_CASE("tables round-trip every carried field exactly")
{
    const CurveSet cs = sample_set();
    for (auto fmt : {TableFormat::csv, TableFormat::tsv})
    {
        const std::string text = emit_csv(cs, fmt);
        CHECK(parse_csv(text, fmt) == cs);
        CHECK(emit_csv(parse_csv(text, fmt), fmt) == text);
    }
    CHECK(emit_csv(cs, TableFormat::tsv).find('\t') != std::string::npos);
}

TEST_CASE("rows are ordered by label then x")
{
    CurveSet cs = sample_set();
    std::swap(cs.curves[0], cs.curves[1]);
    const std::string text = emit_csv(cs);
    std::istringstream is(text);
    std::string line;
    std::getline(is, line);
    std::vector<std::string> keys;
    while (std::getline(is, line))
        keys.push_back(line.substr(0, line.find(',', line.find(',', line.find(',') + 1) + 1)));
    CHECK(keys == std::vector<std::string>{"multi_ue_pa,ideal,64", "multi_ue_pa,ideal,128", "multi_ue_pa,pa,64",
                                           "multi_ue_pa,pa,128"});
}

TEST_CASE("significant digits of emitted rates")
{
    const std::string text = emit_csv(sample_set());
    CHECK(text.find("3.3333333333333331e-01") != std::string::npos);
}

TEST_CASE("malformed tables are rejected")
{
    CHECK_THROWS_AS(parse_csv(std::string("")), IoError);
    CHECK_THROWS_AS(parse_csv(std::string("a,b\n")), IoError);
    const std::string header = "scenario,curve,x,mean_rate,stderr,trials,seed\n";
    CHECK_THROWS_AS(parse_csv(header + "s,c,1,2,3\n"), IoError);
    CHECK_THROWS_AS(parse_csv(header + "s,c,1,abc,0,1,1\n"), IoError);
    CHECK_THROWS_AS(parse_csv(header + "s,c,1,1,0,1,1\ns,c,1,1,0,1,1\n"), IoError);
    CHECK_THROWS_AS(parse_csv(header + "s,c,1,1,0,1,1\nt,c,2,1,0,1,1\n"), IoError);
    CHECK_THROWS_AS(parse_csv(header + "s,c,1,1,0,1,1\ns,d,2,1,0,1,1\n"), IoError);
    CHECK(parse_csv(header).curves.empty());
}

TEST_CASE("fig3 preset emits two curves over four panel sizes")
{
    ScenarioConfig cfg = preset_config("fig3");
    cfg.trials = 20;
    const CurveSet cs = run_experiment(cfg);
    const std::string text = emit_csv(cs);
    CHECK(count_lines(text) == 1 + 8);
    CurveSet back = parse_csv(text);
    CurveSet carried = cs;
    carried.config_digest.clear();
    for (auto &c : carried.curves)
        c.mode.clear();
    CHECK(back == carried);
}

TEST_CASE("unwritable destinations raise an io error")
{
    CHECK_THROWS_AS(write_csv(sample_set(), "/nonexistent-dir/out.csv"), IoError);
}
