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

#include <complex>
#include <cstdint>
#include <random>

namespace risnet
{
    // Counter-addressed random stream. A stream is identified by (seed, stream_id, lane);
    // the same identity always reproduces the same draws, independent of which thread
    // constructs it or in which order streams are created.
    class RngStream
    {
    public:
        RngStream(std::uint64_t seed, std::uint64_t stream_id, std::uint64_t lane = 0);

        std::uint64_t seed() const { return seed_; }
        std::uint64_t stream_id() const { return stream_id_; }
        std::uint64_t lane() const { return lane_; }

        std::uint64_t next_u64() { return engine_(); }

        // Uniform on (0, 1], 53-bit resolution.
        double uniform_open0();

        // Uniform on (lo, hi].
        double uniform(double lo, double hi) { return lo + (hi - lo) * uniform_open0(); }

        // Uniform phase on (0, 2*pi].
        double phase();

        // Standard normal (Box-Muller, both outputs used).
        double normal();

        // Circularly-symmetric complex Gaussian with E|z|^2 = 1.
        std::complex<double> complex_normal();

    private:
        std::uint64_t seed_;
        std::uint64_t stream_id_;
        std::uint64_t lane_;
        std::mt19937_64 engine_;
        double spare_normal_ = 0.0;
        bool has_spare_ = false;
    };
}
