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

#include "risnet/channel.hpp"
#include "risnet/regulation.hpp"

#include <cmath>
#include <functional>
#include <numbers>

using namespace risnet;
using std::numbers::pi;

namespace
{
    constexpr cdouble j{0.0, 1.0};

    ComplexVector vec(std::initializer_list<cdouble> v)
    {
        ComplexVector out(static_cast<Eigen::Index>(v.size()));
        Eigen::Index i = 0;
        for (auto x : v)
            out(i++) = x;
        return out;
    }

    ComplexVector random_vector(Eigen::Index n, RngStream &rng)
    {
        ComplexVector v(n);
        for (Eigen::Index i = 0; i < n; ++i)
            v(i) = rng.complex_normal();
        return v;
    }

    double wrap(double p)
    {
        double w = std::fmod(p, 2 * pi);
        return w < 0 ? w + 2 * pi : w;
    }

    bool same_coefficients(const RegulationMatrix &a, const RegulationMatrix &b, double tol = 1e-12)
    {
        if (a.size() != b.size())
            return false;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (std::abs(a.coefficient(i) - b.coefficient(i)) > tol)
                return false;
        return true;
    }

    double mag_sum(const ComplexVector &h, const ComplexVector &g)
    {
        double s = 0.0;
        for (Eigen::Index i = 0; i < h.size(); ++i)
            s += std::abs(h(i)) * std::abs(g(i));
        return s;
    }

    // Sum rate computed element by element from the weights, without the library's objective code.
    double direct_sum_rate(const std::vector<UeCascade> &ues, const std::vector<ComplexVector> &own,
                           const std::vector<cdouble> &alpha, const LinkBudget &b, bool ofdma)
    {
        const Eigen::Index n = ues.front().h.size();
        ComplexVector phi = ComplexVector::Zero(n);
        for (std::size_t k = 0; k < own.size(); ++k)
            phi += alpha[k] * own[k];
        double total = 0.0;
        for (std::size_t k = 0; k < ues.size(); ++k)
        {
            auto gain = [&](std::size_t src) {
                cdouble s = 0.0;
                for (Eigen::Index i = 0; i < n; ++i)
                    s += ues[k].h(i) * phi(i) * ues[src].g(i);
                return std::norm(s);
            };
            double interference = 0.0;
            if (!ofdma)
                for (std::size_t i = 0; i < ues.size(); ++i)
                    if (i != k)
                        interference += gain(i);
            total += std::log2(1.0 + b.power * gain(k) / (b.power * interference + b.noise_var));
        }
        return total;
    }

    // Exhaustive search over the same lattice the optimizer is documented to use.
    double brute_force_optimum(const std::vector<UeCascade> &ues, const PaGrid &grid, const LinkBudget &b, bool ofdma)
    {
        std::vector<ComplexVector> own;
        for (const auto &u : ues)
            own.push_back(optimal_regulation(u.h, u.g).diagonal());
        const std::size_t K = ues.size();
        double best = -1.0;
        std::vector<cdouble> alpha(K);
        std::function<void(std::size_t, int)> rec = [&](std::size_t k, int amp_left) {
            if (k == K)
            {
                best = std::max(best, direct_sum_rate(ues, own, alpha, b, ofdma));
                return;
            }
            for (int jr = 0; jr <= amp_left; ++jr)
                for (int ip = 1; ip <= grid.phase_steps; ++ip)
                {
                    alpha[k] = std::polar(static_cast<double>(jr) / grid.amp_steps, -2 * pi * ip / grid.phase_steps);
                    rec(k + 1, amp_left - jr);
                }
        };
        rec(0, grid.amp_steps);
        std::vector<cdouble> equal(K, 1.0 / static_cast<double>(K));
        return std::max(best, direct_sum_rate(ues, own, equal, b, ofdma));
    }

    std::vector<UeCascade> random_ues(std::size_t K, Eigen::Index n, RngStream &rng)
    {
        std::vector<UeCascade> out;
        for (std::size_t k = 0; k < K; ++k)
            out.push_back({random_vector(n, rng), random_vector(n, rng)});
        return out;
    }
}

TEST_CASE("optimal regulation examples")
{
    const ComplexVector ones = ComplexVector::Ones(4);
    const RegulationMatrix id = optimal_regulation(ones, ones);
    CHECK(same_coefficients(id, RegulationMatrix::identity(4)));
    CHECK(std::abs(effective_gain(ones, id, ones) - 4.0) < 1e-12);

    const RegulationMatrix r = optimal_regulation(vec({1, j}), vec({1, 1}));
    CHECK(wrap(r.phases[0]) == doctest::Approx(0.0));
    CHECK(wrap(r.phases[1]) == doctest::Approx(1.5 * pi));
    CHECK(std::abs(effective_gain(vec({1, j}), r, vec({1, 1})) - 2.0) < 1e-12);

    RngStream rng(1, 0);
    for (int t = 0; t < 20; ++t)
    {
        const ComplexVector h = random_vector(64, rng), g = random_vector(64, rng);
        const cdouble e = effective_gain(h, optimal_regulation(h, g), g);
        CHECK(e.real() == doctest::Approx(mag_sum(h, g)).epsilon(1e-9));
        CHECK(std::abs(e.imag()) < 1e-9 * mag_sum(h, g));
    }
    CHECK_THROWS(optimal_regulation(ComplexVector::Ones(3), ComplexVector::Ones(4)));
}

TEST_CASE("random phase regulation")
{
    RngStream rng(2, 0);
    const RegulationMatrix one = random_phase_regulation(1, rng);
    CHECK(std::abs(std::abs(one.coefficient(0)) - 1.0) < 1e-12);

    RngStream a(8, 8), b(8, 8);
    CHECK(random_phase_regulation(50, a).phases == random_phase_regulation(50, b).phases);

    // fixed unit-gain line-of-sight cascade: mean power N, not N^2
    const int n = 64;
    const ComplexVector h = ula_steering(n, 0.3), g = ula_steering(n, -0.8);
    constexpr int draws = 100000;
    double total = 0.0;
    for (int t = 0; t < draws; ++t)
        total += std::norm(effective_gain(h, random_phase_regulation(n, rng), g));
    CHECK(total / draws == doctest::Approx(static_cast<double>(n)).epsilon(0.03));
}

TEST_CASE("global phase shift")
{
    RngStream rng(3, 0);
    const RegulationMatrix phi = random_phase_regulation(16, rng);
    CHECK(same_coefficients(apply_global_phase(phi, {}), phi));

    const RegulationMatrix shifted = apply_global_phase(RegulationMatrix::identity(2), {std::polar(1.0, -pi), 0.0});
    for (double p : shifted.phases)
        CHECK(std::abs(std::cos(p) + 1.0) < 1e-12);

    const ComplexVector h = random_vector(16, rng), g = random_vector(16, rng);
    const double base = std::abs(effective_gain(h, phi, g));
    for (double a : {0.1, 1.0, 2.5, 6.0})
        CHECK(std::abs(effective_gain(h, apply_global_phase(phi, PhaseOffset::from_phase(a)), g)) ==
              doctest::Approx(base).epsilon(1e-12));
    CHECK_THROWS(apply_global_phase(phi, {cdouble(2.0, 0.0), 0.0}));
}

TEST_CASE("phase offset estimation")
{
    CHECK(std::abs(estimate_phase_offset(1.0, 1.0).value - 1.0) < 1e-15);
    CHECK(std::abs(estimate_phase_offset(1.0, j).value - std::polar(1.0, -pi / 2)) < 1e-15);
    CHECK_THROWS(estimate_phase_offset(0.0, 1.0));
    CHECK_THROWS(estimate_phase_offset(1.0, 0.0));

    RngStream rng(4, 0);
    for (int t = 0; t < 1000; ++t)
    {
        const double pj = rng.phase(), pk = rng.phase();
        const cdouble obs_j = rng.uniform(0.1, 5.0) * std::polar(1.0, -pj);
        const cdouble obs_k = rng.uniform(0.1, 5.0) * std::polar(1.0, -pk);
        CHECK(std::abs(estimate_phase_offset(obs_j, obs_k).value - std::polar(1.0, -(pj - pk))) < 1e-9);
    }
}

TEST_CASE("calibration co-phases two branches")
{
    RngStream rng(5, 0);
    const RegulationMatrix phi = random_phase_regulation(8, rng);
    CHECK(same_coefficients(calibrate(phi, {}), phi));

    // two equal scalar branches in anti-phase: calibration turns cancellation into 4x power
    const ComplexVector one = ComplexVector::Ones(1);
    const RegulationMatrix b1 = RegulationMatrix::identity(1);
    const RegulationMatrix b2 = apply_global_phase(b1, PhaseOffset::from_phase(pi));
    const cdouble o1 = effective_gain(one, b1, one), o2 = effective_gain(one, b2, one);
    CHECK(std::abs(o1 + o2) < 1e-12);
    const RegulationMatrix fixed = calibrate(b2, estimate_phase_offset(o1, o2));
    CHECK(std::norm(o1 + effective_gain(one, fixed, one)) == doctest::Approx(4.0 * std::norm(o1)));

    for (int t = 0; t < 200; ++t)
    {
        const ComplexVector h1 = random_vector(32, rng), g1 = random_vector(32, rng);
        const ComplexVector h2 = random_vector(32, rng), g2 = random_vector(32, rng);
        const RegulationMatrix p1 = optimal_regulation(h1, g1), p2 = optimal_regulation(h2, g2);
        const double coherent = std::norm(effective_gain(h1, p1, g1) + effective_gain(h2, p2, g2));
        const RegulationMatrix q1 = apply_global_phase(p1, PhaseOffset::from_phase(rng.phase()));
        const RegulationMatrix q2 = apply_global_phase(p2, PhaseOffset::from_phase(rng.phase()));
        const cdouble e1 = effective_gain(h1, q1, g1), e2 = effective_gain(h2, q2, g2);
        const RegulationMatrix c2 = calibrate(q2, estimate_phase_offset(e1, e2));
        const double restored = std::norm(e1 + effective_gain(h2, c2, g2));
        CHECK(std::log2(1 + restored) == doctest::Approx(std::log2(1 + coherent)).epsilon(1e-9));
    }
}

TEST_CASE("pattern addition superposition")
{
    RngStream rng(6, 0);
    const RegulationMatrix a = random_phase_regulation(12, rng);
    CHECK(same_coefficients(pa_superpose({{1.0, a}}), a));
    CHECK(same_coefficients(pa_superpose({{0.5, a}, {0.5, a}}), a));

    const RegulationMatrix opposite = apply_global_phase(a, PhaseOffset::from_phase(pi));
    for (double amp : pa_superpose({{0.5, a}, {0.5, opposite}}).amplitudes)
        CHECK(amp < 1e-12);

    CHECK_THROWS(pa_superpose({}));
    CHECK_THROWS(pa_superpose({{0.6, a}, {0.6, a}}));
    CHECK_THROWS(pa_superpose({{0.5, a}, {0.5, random_phase_regulation(11, rng)}}));
    // the quadratic reading admits these weights but co-phased components break passivity
    CHECK_THROWS(pa_superpose({{0.7, a}, {0.7, a}}, PaConstraint::l2));
    CHECK_NOTHROW(pa_superpose({{0.7, a}, {0.7, opposite}}, PaConstraint::l2));
}

TEST_CASE("pattern addition optimum matches an exhaustive oracle")
{
    RngStream rng(7, 0);
    const LinkBudget b{1.0, 4.0};
    for (bool ofdma : {true, false})
        for (int t = 0; t < 4; ++t)
        {
            const auto ues = random_ues(2, 16, rng);
            const PaGrid grid{8, 4};
            const PaResult r = pa_optimize(ues, grid, {b, ofdma, PaConstraint::l1});
            CHECK(r.objective == doctest::Approx(brute_force_optimum(ues, grid, b, ofdma)).epsilon(1e-9));
            CHECK(r.objective == doctest::Approx(pa_sum_rate(ues, r.phi, {b, ofdma, PaConstraint::l1})).epsilon(1e-9));
            double rho = 0.0;
            for (double v : r.weights.rho)
                rho += v;
            CHECK(rho <= 1.0 + 1e-12);
        }

    const auto three = random_ues(3, 12, rng);
    const PaGrid small{4, 3};
    CHECK(pa_optimize(three, small, {b, true, PaConstraint::l1}).objective ==
          doctest::Approx(brute_force_optimum(three, small, b, true)).epsilon(1e-9));
}

TEST_CASE("pattern addition special cases")
{
    RngStream rng(8, 0);
    const LinkBudget b{1.0, 1.0};
    const PaObjectiveConfig cfg{b, true, PaConstraint::l1};

    const auto single = random_ues(1, 20, rng);
    const PaResult one = pa_optimize(single, {}, cfg);
    CHECK(one.weights.rho[0] == doctest::Approx(1.0));
    const double alone = std::log2(1.0 + std::pow(mag_sum(single[0].h, single[0].g), 2) / b.noise_var);
    CHECK(one.objective == doctest::Approx(alone).epsilon(1e-12));

    // identical UEs: co-phased weights reproduce the single-UE panel for both
    const std::vector<UeCascade> twins{single[0], single[0]};
    const PaResult tw = pa_optimize(twins, {}, cfg);
    CHECK(tw.objective == doctest::Approx(2.0 * alone).epsilon(1e-12));
    if (tw.weights.rho[0] > 0.0 && tw.weights.rho[1] > 0.0)
        CHECK(std::abs(tw.weights.alpha(0) / std::abs(tw.weights.alpha(0)) -
                       tw.weights.alpha(1) / std::abs(tw.weights.alpha(1))) < 1e-12);
    CHECK(tw.weights.rho[0] + tw.weights.rho[1] == doctest::Approx(1.0));
    CHECK(pa_equal_weight(twins, cfg).objective == doctest::Approx(2.0 * alone).epsilon(1e-12));

    CHECK_THROWS(pa_optimize({}, {}, cfg));
    CHECK_THROWS(pa_optimize(single, {1, 8}, cfg));
    CHECK_THROWS(pa_optimize(single, {16, 1}, cfg));
}

TEST_CASE("pattern addition ordering and grid refinement")
{
    RngStream rng(9, 0);
    const LinkBudget b{1.0, 10.0};
    const PaObjectiveConfig cfg{b, false, PaConstraint::l1};
    double eq_sum = 0.0, rnd_sum = 0.0;
    for (int t = 0; t < 200; ++t)
    {
        const auto ues = random_ues(2, 32, rng);
        const double opt = pa_optimize(ues, {}, cfg).objective;
        const double eq = pa_equal_weight(ues, cfg).objective;
        CHECK(opt >= eq - 1e-12);
        eq_sum += eq;
        rnd_sum += pa_sum_rate(ues, random_phase_regulation(32, rng), cfg);

        const double coarse = pa_optimize(ues, {4, 2}, cfg).objective;
        const double fine = pa_optimize(ues, {8, 4}, cfg).objective;
        CHECK(fine >= coarse - 1e-12);
    }
    CHECK(eq_sum > rnd_sum);
}

TEST_CASE("contiguous partitions and blocking")
{
    const BlockPartition p = contiguous_partition(10, {0.3, 0.7}, {0, 1});
    REQUIRE(p.blocks.size() == 2);
    CHECK(p.blocks[0].size() == 3);
    CHECK(p.blocks[1].size() == 7);
    CHECK(p.beta[0] == doctest::Approx(0.3));
    CHECK(p.beta[1] == doctest::Approx(0.7));
    CHECK_THROWS(contiguous_partition(10, {0.5}, {0, 1}));

    BlockPartition overlap{{{0, 1}, {1, 2}}, {0, 1}, {0.5, 0.5}};
    CHECK_THROWS(overlap.validate());

    RngStream rng(10, 0);
    const ComplexVector h = random_vector(40, rng), g = random_vector(40, rng);
    const RegulationMatrix full = optimal_regulation(h, g);

    const BlockPartition whole = contiguous_partition(40, {1.0}, {0});
    const RegulationMatrix composite = blocking_regulation(whole, {full});
    CHECK(composite.phases == full.phases);
    CHECK(composite.amplitudes == full.amplitudes);
    CHECK(blocked_received(h, g, whole, composite, 0) == effective_gain(h, full, g));

    // both UEs on one channel: each block carries the same optimal phases
    const BlockPartition half = contiguous_partition(40, {0.5, 0.5}, {0, 1});
    CHECK(same_coefficients(blocking_regulation(half, {full, full}), full));

    CHECK_THROWS(blocking_regulation(half, {full}));
}

TEST_CASE("blocking shifts rate from target to non-target as the foreign block grows")
{
    RngStream rng(11, 0);
    const std::vector<double> betas{0.1, 0.2, 0.4, 0.5, 0.6, 0.8, 0.9};
    std::vector<double> target(betas.size(), 0.0), other(betas.size(), 0.0);
    for (int t = 0; t < 2000; ++t)
    {
        const ComplexVector g = random_vector(64, rng);
        const ComplexVector h1 = random_vector(64, rng), h2 = random_vector(64, rng);
        const std::vector<RegulationMatrix> own{optimal_regulation(h1, g), optimal_regulation(h2, g)};
        for (std::size_t i = 0; i < betas.size(); ++i)
        {
            const BlockPartition p = contiguous_partition(64, {betas[i], 1.0 - betas[i]}, {0, 1});
            const RegulationMatrix c = blocking_regulation(p, own);
            target[i] += std::log2(1 + std::norm(blocked_received(h1, g, p, c, 0)));
            other[i] += std::log2(1 + std::norm(blocked_received(h2, g, p, c, 1)));
        }
    }
    for (std::size_t i = 1; i < betas.size(); ++i)
    {
        CHECK(target[i] > target[i - 1]);
        CHECK(other[i] < other[i - 1]);
    }
}

TEST_CASE("mixed channel regulation")
{
    RngStream rng(12, 0);
    const UeCascade a{random_vector(24, rng), random_vector(24, rng)};
    CHECK(same_coefficients(mixed_channel_regulation({a}), optimal_regulation(a.h, a.g)));
    CHECK(same_coefficients(mixed_channel_regulation({a, a}), optimal_regulation(a.h, a.g)));
    CHECK_THROWS(mixed_channel_regulation({}));

    // UE2 under the mixed matrix sits between random phase and its own perfect CSI
    constexpr int trials = 10000;
    std::vector<double> mixed, random, perfect;
    for (int t = 0; t < trials; ++t)
    {
        const ComplexVector g = random_vector(64, rng);
        const UeCascade u1{random_vector(64, rng), g}, u2{random_vector(64, rng), g};
        const auto rate = [&](const RegulationMatrix &phi) {
            return std::log2(1 + std::norm(effective_gain(u2.h, phi, u2.g)));
        };
        mixed.push_back(rate(mixed_channel_regulation({u1, u2})));
        random.push_back(rate(random_phase_regulation(64, rng)));
        perfect.push_back(rate(optimal_regulation(u2.h, u2.g)));
    }
    const auto ci = [](const std::vector<double> &v) {
        double m = 0.0, s = 0.0;
        for (double x : v)
            m += x;
        m /= static_cast<double>(v.size());
        for (double x : v)
            s += (x - m) * (x - m);
        const double se = std::sqrt(s / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()));
        return std::pair{m - 1.96 * se, m + 1.96 * se};
    };
    CHECK(ci(mixed).first > ci(random).second);
    CHECK(ci(perfect).first > ci(mixed).second);
}

TEST_CASE("phase quantization")
{
    RegulationMatrix phi = RegulationMatrix::identity(6);
    phi.phases = {0.0, pi / 4, 3 * pi / 4, pi / 2, 1.4 * pi, -0.1};
    const RegulationMatrix q = quantize(phi, 1);
    CHECK(q.quant_bits == 1);
    CHECK(q.phases[0] == 0.0);
    CHECK(q.phases[1] == 0.0);
    CHECK(q.phases[2] == doctest::Approx(pi));
    CHECK(q.phases[3] == 0.0);                 // tie between 0 and pi
    CHECK(q.phases[4] == doctest::Approx(pi));
    CHECK(q.phases[5] == 0.0);
    CHECK_THROWS(quantize(phi, 0));

    const RegulationMatrix q3 = quantize(phi, 3);
    for (double p : q3.phases)
    {
        const double k = p / (2 * pi / 8);
        CHECK(std::abs(k - std::round(k)) < 1e-12);
        CHECK(p >= 0.0);
        CHECK(p < 2 * pi);
    }

    RngStream rng(13, 0);
    double ratio = 0.0;
    constexpr int trials = 10000;
    for (int t = 0; t < trials; ++t)
    {
        const ComplexVector h = random_vector(256, rng), g = random_vector(256, rng);
        const RegulationMatrix opt = optimal_regulation(h, g);
        ratio += std::norm(effective_gain(h, quantize(opt, 1), g)) / std::norm(effective_gain(h, opt, g));
    }
    ratio /= trials;
    CHECK(ratio >= 0.35);
    CHECK(ratio <= 0.45);
}

TEST_CASE("every produced matrix is passive")
{
    RngStream rng(14, 0);
    const auto check = [](const RegulationMatrix &m) {
        for (double a : m.amplitudes)
        {
            CHECK(a >= 0.0);
            CHECK(a <= 1.0 + 1e-12);
        }
    };
    for (int t = 0; t < 50; ++t)
    {
        const auto ues = random_ues(2, 16, rng);
        check(optimal_regulation(ues[0].h, ues[0].g));
        check(random_phase_regulation(16, rng));
        check(mixed_channel_regulation(ues));
        check(pa_optimize(ues, {8, 4}).phi);
        check(pa_equal_weight(ues).phi);
        check(quantize(random_phase_regulation(16, rng), 2));
    }
}
