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

#include <stdexcept>
#include <string>

namespace risnet
{
    // Invalid experiment configuration. `field()` names the offending key, `line()` is the
    // 1-based line of the config document when the error came from parsing (0 otherwise).
    class ConfigError : public std::runtime_error
    {
    public:
        ConfigError(std::string field, const std::string &message, int line = 0)
            : std::runtime_error(format(field, message, line)), field_(std::move(field)), line_(line)
        {
        }

        const std::string &field() const { return field_; }
        int line() const { return line_; }

    private:
        static std::string format(const std::string &field, const std::string &message, int line)
        {
            std::string out;
            if (line > 0)
                out += "line " + std::to_string(line) + ": ";
            if (!field.empty())
                out += field + ": ";
            return out + message;
        }

        std::string field_;
        int line_;
    };

    // A simulation result broke one of its output contracts (non-finite or negative rate,
    // NCM/SAM dominance, ...).
    class InvariantError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    class IoError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };
}
