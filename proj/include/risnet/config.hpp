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

#include "risnet/scenarios.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace risnet
{
    // Preset names fig3..fig8.
    std::vector<std::string> preset_names();

    // Throws ConfigError("preset", ...) for an unknown name.
    ScenarioConfig preset_config(std::string_view name);

    // Canonical preset of a scenario (used when a document names a scenario but no preset).
    std::string default_preset(Scenario s);

    Scenario parse_scenario(std::string_view name);

    // Parses a flat `key = value` document (keys listed in README.md). Keys absent from the document
    // take the values of the named preset, or of the scenario's default preset. Unknown keys,
    // malformed values and invariant violations throw ConfigError naming the key and line.
    ScenarioConfig parse_config(std::string_view text);

    // Reads and parses a config file; throws IoError when it cannot be read.
    ScenarioConfig load_config(const std::string &path);
}
