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

#include "risnet/rng.hpp"

#include <cmath>
#include <numbers>

using risnet::RngStream;

TEST_CASE("identical stream identity replays identical draws")
{
    RngStream a(42, 7, 3), b(42, 7, 3);
    for (int i = 0; i < 1000; ++i)
        CHECK(a.next_u64() == b.next_u64());

    RngStream c(42, 7, 3), d(42, 7, 3);
    for (int i = 0; i < 1000; ++i)
    {
        CHECK(c.normal() == d.normal());
        CHECK(c.complex_normal() == d.complex_normal());
    }
}

TEST_CASE("seed, stream and lane each select a different sequence")
{
    const auto first = [](RngStream s) { return s.next_u64(); };
    const auto base = first(RngStream(1, 0, 0));
    CHECK(first(RngStream(2, 0, 0)) != base);
    CHECK(first(RngStream(1, 1, 0)) != base);
    CHECK(first(RngStream(1, 0, 1)) != base);
    // swapping halves of the identity must not collide
    CHECK(first(RngStream(0, 1, 0)) != first(RngStream(1, 0, 0)));
}

TEST_CASE("uniform and phase draws stay in their half-open ranges")
{
    RngStream s(9, 9);
    for (int i = 0; i < 100000; ++i)
    {
        const double u = s.uniform_open0();
        CHECK(u > 0.0);
        CHECK(u <= 1.0);
        const double p = s.phase();
        CHECK(p > 0.0);
        CHECK(p <= 2.0 * std::numbers::pi);
    }
}

TEST_CASE("gaussian draws have the requested moments")
{
    RngStream s(123, 0);
    constexpr int n = 200000;
    double sum = 0.0, sq = 0.0;
    std::complex<double> csum{};
    double cpow = 0.0, re_sq = 0.0;
    for (int i = 0; i < n; ++i)
    {
        const double x = s.normal();
        sum += x;
        sq += x * x;
        const auto z = s.complex_normal();
        csum += z;
        cpow += std::norm(z);
        re_sq += z.real() * z.real();
    }
    // 5-sigma bands of the sample moments
    CHECK(std::abs(sum / n) < 5.0 / std::sqrt(n));
    CHECK(std::abs(sq / n - 1.0) < 5.0 * std::sqrt(2.0 / n));
    CHECK(std::abs(csum) / n < 5.0 / std::sqrt(n));
    CHECK(std::abs(cpow / n - 1.0) < 5.0 / std::sqrt(n));
    CHECK(std::abs(re_sq / n - 0.5) < 5.0 * std::sqrt(0.5 / n));
}
