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

#include "risnet/montecarlo.hpp"

#include <iosfwd>
#include <string>

namespace risnet
{
    enum class TableFormat
    {
        csv,
        tsv
    };

    // Writes the header `scenario,curve,x,mean_rate,stderr,trials,seed` followed by one row per
    // (curve, x) in label order then ascending x. Rates carry 17 significant digits, so parsing
    // the output restores every double exactly.
    void emit_csv(const CurveSet &curves, std::ostream &out, TableFormat format = TableFormat::csv);
    std::string emit_csv(const CurveSet &curves, TableFormat format = TableFormat::csv);

    // Writes to `path`; throws IoError on failure.
    void write_csv(const CurveSet &curves, const std::string &path, TableFormat format = TableFormat::csv);

    // Inverse of emit_csv. The result holds the columns present in the table: curve modes and
    // the config digest are left empty. Throws IoError on malformed input.
    CurveSet parse_csv(std::istream &in, TableFormat format = TableFormat::csv);
    CurveSet parse_csv(const std::string &text, TableFormat format = TableFormat::csv);
}
