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

#include "risnet/rng.hpp"

#include <cmath>
#include <numbers>

namespace risnet
{
    namespace
    {
        std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream_id, std::uint64_t lane)
        {
            auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v & 0xffffffffULL); };
            auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
            std::seed_seq seq{lo(seed), hi(seed), lo(stream_id), hi(stream_id), lo(lane), hi(lane)};
            return std::mt19937_64(seq);
        }
    }

    RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id, std::uint64_t lane)
        : seed_(seed), stream_id_(stream_id), lane_(lane), engine_(make_engine(seed, stream_id, lane))
    {
    }

    double RngStream::uniform_open0()
    {
        // (k + 1) / 2^53 with k uniform on [0, 2^53)
        const std::uint64_t k = engine_() >> 11;
        return static_cast<double>(k + 1) * 0x1.0p-53;
    }

    double RngStream::phase()
    {
        return 2.0 * std::numbers::pi * uniform_open0();
    }

    double RngStream::normal()
    {
        if (has_spare_)
        {
            has_spare_ = false;
            return spare_normal_;
        }
        const double u1 = uniform_open0();
        const double u2 = uniform_open0();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 2.0 * std::numbers::pi * u2;
        spare_normal_ = r * std::sin(t);
        has_spare_ = true;
        return r * std::cos(t);
    }

    std::complex<double> RngStream::complex_normal()
    {
        const double re = normal();
        const double im = normal();
        return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
    }
}
