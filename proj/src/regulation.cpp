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

#include "risnet/regulation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace risnet
{
    namespace
    {
        constexpr double two_pi = 2.0 * std::numbers::pi;
        constexpr double passivity_slack = 1e-12;

        void require_same_length(const ComplexVector &h, const ComplexVector &g, const char *who)
        {
            if (h.size() != g.size())
                throw std::invalid_argument(std::string(who) + ": h and g differ in length");
        }

        double weight_norm(const std::vector<cdouble> &alphas, PaConstraint constraint)
        {
            double s = 0.0;
            for (const auto &a : alphas)
                s += constraint == PaConstraint::l1 ? std::abs(a) : std::norm(a);
            return s;
        }

        // cross[k][l][i] = sum_n h_k,n * Phi_l,n * g_i,n for the per-UE optimal matrices Phi_l.
        struct CrossGains
        {
            std::size_t K = 0;
            std::vector<cdouble> data;
            cdouble operator()(std::size_t k, std::size_t l, std::size_t i) const { return data[(k * K + l) * K + i]; }
        };

        CrossGains cross_gains(const std::vector<UeCascade> &channels, const std::vector<RegulationMatrix> &phis)
        {
            CrossGains c;
            c.K = channels.size();
            c.data.resize(c.K * c.K * c.K);
            for (std::size_t k = 0; k < c.K; ++k)
                for (std::size_t l = 0; l < c.K; ++l)
                    for (std::size_t i = 0; i < c.K; ++i)
                        c.data[(k * c.K + l) * c.K + i] = effective_gain(channels[k].h, phis[l], channels[i].g);
            return c;
        }

        // prod_k (1 + gamma_k), a monotone surrogate of the sum rate.
        double rate_product(const CrossGains &c, const std::vector<cdouble> &alphas, const PaObjectiveConfig &cfg)
        {
            double product = 1.0;
            for (std::size_t k = 0; k < c.K; ++k)
            {
                cdouble signal{0.0, 0.0};
                for (std::size_t l = 0; l < c.K; ++l)
                    signal += alphas[l] * c(k, l, k);
                double interference = 0.0;
                if (!cfg.ofdma)
                    for (std::size_t i = 0; i < c.K; ++i)
                    {
                        if (i == k)
                            continue;
                        cdouble leak{0.0, 0.0};
                        for (std::size_t l = 0; l < c.K; ++l)
                            leak += alphas[l] * c(k, l, i);
                        interference += std::norm(leak);
                    }
                product *= 1.0 + sinr_from_powers(std::norm(signal), interference, cfg.budget);
            }
            return product;
        }

        std::vector<RegulationMatrix> per_ue_optimal(const std::vector<UeCascade> &channels)
        {
            std::vector<RegulationMatrix> phis;
            phis.reserve(channels.size());
            for (const auto &c : channels)
                phis.push_back(optimal_regulation(c.h, c.g));
            return phis;
        }

        RegulationMatrix superpose_weights(const std::vector<RegulationMatrix> &phis, const PAWeights &w,
                                           PaConstraint constraint)
        {
            std::vector<PaComponent> comps;
            comps.reserve(phis.size());
            for (std::size_t k = 0; k < phis.size(); ++k)
                comps.push_back({w.alpha(k), phis[k]});
            return pa_superpose(comps, constraint);
        }
    }

    void PhaseOffset::validate() const
    {
        if (std::abs(std::abs(value) - 1.0) > 1e-12)
            throw std::invalid_argument("PhaseOffset: value is not unit-modulus");
        if (!std::isfinite(path_phase))
            throw std::invalid_argument("PhaseOffset: path phase is not finite");
    }

    std::size_t BlockPartition::elements() const
    {
        std::size_t n = 0;
        for (const auto &b : blocks)
            n += b.size();
        return n;
    }

    void BlockPartition::validate() const
    {
        if (blocks.empty())
            throw std::invalid_argument("BlockPartition: no blocks");
        if (owners.size() != blocks.size())
            throw std::invalid_argument("BlockPartition: one owner per block is required");
        const std::size_t n = elements();
        std::vector<char> seen(n, 0);
        for (const auto &b : blocks)
            for (std::size_t idx : b)
            {
                if (idx >= n || seen[idx])
                    throw std::invalid_argument("BlockPartition: blocks must be disjoint and cover 0..N-1");
                seen[idx] = 1;
            }
        for (std::size_t o : owners)
            if (o >= beta.size())
                throw std::invalid_argument("BlockPartition: block owner has no beta entry");
        for (double b : beta)
            if (!(b > 0.0 && b <= 1.0))
                throw std::invalid_argument("BlockPartition: beta outside (0, 1]");
    }

    BlockPartition contiguous_partition(std::size_t n, const std::vector<double> &fractions,
                                        const std::vector<std::size_t> &owners)
    {
        if (fractions.empty() || fractions.size() != owners.size())
            throw std::invalid_argument("contiguous_partition: one owner per fraction is required");
        BlockPartition p;
        p.owners = owners;
        std::size_t start = 0;
        for (std::size_t b = 0; b < fractions.size(); ++b)
        {
            std::size_t len = b + 1 == fractions.size()
                                  ? n - start
                                  : std::min(n - start, static_cast<std::size_t>(std::llround(fractions[b] * n)));
            std::vector<std::size_t> block(len);
            for (std::size_t i = 0; i < len; ++i)
                block[i] = start + i;
            start += len;
            p.blocks.push_back(std::move(block));
        }
        const std::size_t ues = *std::max_element(owners.begin(), owners.end()) + 1;
        std::vector<std::size_t> owned(ues, 0);
        for (std::size_t b = 0; b < p.blocks.size(); ++b)
            owned[owners[b]] += p.blocks[b].size();
        p.beta.resize(ues);
        for (std::size_t u = 0; u < ues; ++u)
            p.beta[u] = static_cast<double>(owned[u]) / static_cast<double>(n);
        p.validate();
        return p;
    }

    cdouble effective_gain(const ComplexVector &h, const RegulationMatrix &phi, const ComplexVector &g)
    {
        if (h.size() != g.size() || static_cast<std::size_t>(h.size()) != phi.size())
            throw std::invalid_argument("effective_gain: length mismatch");
        cdouble sum{0.0, 0.0};
        for (Eigen::Index n = 0; n < h.size(); ++n)
            sum += h(n) * phi.coefficient(static_cast<std::size_t>(n)) * g(n);
        return sum;
    }

    RegulationMatrix optimal_regulation(const ComplexVector &h, const ComplexVector &g)
    {
        require_same_length(h, g, "optimal_regulation");
        const auto n = static_cast<std::size_t>(h.size());
        RegulationMatrix out{std::vector<double>(n), std::vector<double>(n, 1.0), std::nullopt};
        for (std::size_t i = 0; i < n; ++i)
            out.phases[i] = -std::arg(h(static_cast<Eigen::Index>(i)) * g(static_cast<Eigen::Index>(i)));
        return out;
    }

    RegulationMatrix random_phase_regulation(std::size_t n, RngStream &rng)
    {
        RegulationMatrix out{std::vector<double>(n), std::vector<double>(n, 1.0), std::nullopt};
        for (auto &p : out.phases)
            p = rng.phase();
        return out;
    }

    RegulationMatrix apply_global_phase(const RegulationMatrix &phi, const PhaseOffset &c)
    {
        c.validate();
        const double shift = std::arg(c.value);
        RegulationMatrix out = phi;
        for (auto &p : out.phases)
            p += shift;
        if (shift != 0.0)
            out.quant_bits.reset();
        return out;
    }

    PhaseOffset estimate_phase_offset(cdouble obs_j, cdouble obs_k)
    {
        const double aj = std::abs(obs_j);
        const double ak = std::abs(obs_k);
        if (!(aj > 0.0) || !(ak > 0.0) || !std::isfinite(aj) || !std::isfinite(ak))
            throw std::runtime_error("estimate_phase_offset: zero or non-finite pilot observation");
        const cdouble v = (obs_j / aj) / (obs_k / ak);
        return {v / std::abs(v), 0.0};
    }

    RegulationMatrix calibrate(const RegulationMatrix &phi_2, const PhaseOffset &delta)
    {
        return apply_global_phase(phi_2, {delta.total(), 0.0});
    }

    RegulationMatrix pa_superpose(const std::vector<PaComponent> &components, PaConstraint constraint)
    {
        if (components.empty())
            throw std::invalid_argument("pa_superpose: no components");
        const std::size_t n = components.front().phi.size();
        std::vector<cdouble> alphas;
        for (const auto &c : components)
        {
            if (c.phi.size() != n || c.phi.amplitudes.size() != n)
                throw std::invalid_argument("pa_superpose: component lengths differ");
            alphas.push_back(c.weight);
        }
        if (weight_norm(alphas, constraint) > 1.0 + passivity_slack)
            throw std::invalid_argument("pa_superpose: weights violate the pattern-addition constraint");

        ComplexVector sum = ComplexVector::Zero(static_cast<Eigen::Index>(n));
        for (const auto &c : components)
            for (std::size_t i = 0; i < n; ++i)
                sum(static_cast<Eigen::Index>(i)) += c.weight * c.phi.coefficient(i);

        RegulationMatrix out = RegulationMatrix::from_coefficients(sum);
        for (double a : out.amplitudes)
            if (a > 1.0 + passivity_slack)
                throw std::invalid_argument("pa_superpose: superposition is not passive");
        // clamp rounding overshoot of co-phased unit components
        for (auto &a : out.amplitudes)
            a = std::min(a, 1.0);
        return out;
    }

    double pa_sum_rate(const std::vector<UeCascade> &channels, const RegulationMatrix &phi,
                       const PaObjectiveConfig &cfg)
    {
        double total = 0.0;
        for (std::size_t k = 0; k < channels.size(); ++k)
        {
            const double signal = std::norm(effective_gain(channels[k].h, phi, channels[k].g));
            double interference = 0.0;
            if (!cfg.ofdma)
                for (std::size_t i = 0; i < channels.size(); ++i)
                    if (i != k)
                        interference += std::norm(effective_gain(channels[k].h, phi, channels[i].g));
            total += achievable_rate(sinr_from_powers(signal, interference, cfg.budget));
        }
        return total;
    }

    PaResult pa_equal_weight(const std::vector<UeCascade> &channels, const PaObjectiveConfig &cfg)
    {
        if (channels.empty())
            throw std::invalid_argument("pa_equal_weight: no UE channels");
        const std::size_t K = channels.size();
        PaResult r;
        r.weights.rho.assign(K, 1.0 / static_cast<double>(K));
        r.weights.theta.assign(K, two_pi);
        r.phi = superpose_weights(per_ue_optimal(channels), r.weights, cfg.constraint);
        r.objective = pa_sum_rate(channels, r.phi, cfg);
        return r;
    }

    PaResult pa_optimize(const std::vector<UeCascade> &channels, const PaGrid &grid, const PaObjectiveConfig &cfg)
    {
        if (channels.empty())
            throw std::invalid_argument("pa_optimize: no UE channels");
        if (grid.phase_steps < 2 || grid.amp_steps < 2)
            throw std::invalid_argument("pa_optimize: grid needs at least 2 phase and 2 amplitude steps");
        cfg.budget.validate();

        const std::size_t K = channels.size();
        const auto P = static_cast<std::size_t>(grid.phase_steps);
        const auto A = static_cast<std::size_t>(grid.amp_steps);
        const double per_ue_points = static_cast<double>(P * (A + 1));
        if (std::pow(per_ue_points, static_cast<double>(K)) > 1e9)
            throw std::invalid_argument("pa_optimize: grid too large for exhaustive search");

        const auto phis = per_ue_optimal(channels);
        const CrossGains cross = cross_gains(channels, phis);

        std::vector<cdouble> phase_table(P);
        for (std::size_t i = 0; i < P; ++i)
            phase_table[i] = std::polar(1.0, -two_pi * static_cast<double>(i + 1) / static_cast<double>(P));

        // Lexicographic walk over (phase_1, amp_1, ..., phase_K, amp_K). Only strict improvements
        // replace the incumbent, so ties resolve to the smallest grid index.
        std::vector<std::size_t> phase_idx(K, 0), amp_idx(K, 0), best_phase(K, 0), best_amp(K, 0);
        std::vector<cdouble> alphas(K);
        double best = -1.0;

        auto amplitude = [&](std::size_t j) { return static_cast<double>(j) / static_cast<double>(A); };
        auto feasible = [&](std::size_t upto) {
            double s = 0.0;
            for (std::size_t k = 0; k <= upto; ++k)
                s += cfg.constraint == PaConstraint::l1 ? amplitude(amp_idx[k])
                                                        : amplitude(amp_idx[k]) * amplitude(amp_idx[k]);
            return s <= 1.0 + passivity_slack;
        };

        auto walk = [&](auto &&self, std::size_t k) -> void {
            if (k == K)
            {
                const double v = rate_product(cross, alphas, cfg);
                if (v > best)
                {
                    best = v;
                    best_phase = phase_idx;
                    best_amp = amp_idx;
                }
                return;
            }
            for (std::size_t p = 0; p < P; ++p)
            {
                phase_idx[k] = p;
                for (std::size_t a = 0; a <= A; ++a)
                {
                    amp_idx[k] = a;
                    // amplitudes only grow along this loop
                    if (!feasible(k))
                        break;
                    alphas[k] = amplitude(a) * phase_table[p];
                    self(self, k + 1);
                }
            }
        };
        walk(walk, 0);

        PaResult r;
        r.weights.rho.resize(K);
        r.weights.theta.resize(K);
        for (std::size_t k = 0; k < K; ++k)
        {
            r.weights.rho[k] = amplitude(best_amp[k]);
            r.weights.theta[k] = two_pi * static_cast<double>(best_phase[k] + 1) / static_cast<double>(P);
        }
        r.phi = superpose_weights(phis, r.weights, cfg.constraint);
        r.objective = pa_sum_rate(channels, r.phi, cfg);

        // the equal-weight point is off-grid when A is not a multiple of K
        const PaResult equal = pa_equal_weight(channels, cfg);
        if (equal.objective > r.objective)
            return equal;
        return r;
    }

    RegulationMatrix blocking_regulation(const BlockPartition &partition, const std::vector<RegulationMatrix> &per_ue)
    {
        partition.validate();
        if (per_ue.size() != partition.ue_count())
            throw std::invalid_argument("blocking_regulation: one regulation matrix per UE is required");
        const std::size_t n = partition.elements();
        for (const auto &m : per_ue)
            if (m.size() != n)
                throw std::invalid_argument("blocking_regulation: per-UE matrix does not cover the panel");

        RegulationMatrix out{std::vector<double>(n), std::vector<double>(n), std::nullopt};
        for (std::size_t b = 0; b < partition.blocks.size(); ++b)
        {
            const auto &src = per_ue[partition.owners[b]];
            for (std::size_t idx : partition.blocks[b])
            {
                out.phases[idx] = src.phases[idx];
                out.amplitudes[idx] = src.amplitudes[idx];
            }
        }
        return out;
    }

    cdouble blocked_received(const ComplexVector &h, const ComplexVector &g, const BlockPartition &partition,
                             const RegulationMatrix &composite, std::size_t ue)
    {
        require_same_length(h, g, "blocked_received");
        if (ue >= partition.ue_count())
            throw std::invalid_argument("blocked_received: unknown UE");
        const std::size_t n = partition.elements();
        if (static_cast<std::size_t>(h.size()) != n || composite.size() != n)
            throw std::invalid_argument("blocked_received: length mismatch with the partition");

        cdouble own{0.0, 0.0}, foreign{0.0, 0.0};
        std::size_t own_count = 0, foreign_count = 0;
        for (std::size_t b = 0; b < partition.blocks.size(); ++b)
        {
            const bool mine = partition.owners[b] == ue;
            for (std::size_t idx : partition.blocks[b])
            {
                const auto i = static_cast<Eigen::Index>(idx);
                const cdouble term = h(i) * composite.coefficient(idx) * g(i);
                (mine ? own : foreign) += term;
                ++(mine ? own_count : foreign_count);
            }
        }
        const double beta = partition.beta[ue];
        const double total = static_cast<double>(n);
        cdouble out{0.0, 0.0};
        if (own_count > 0)
            out += std::sqrt(beta * total / static_cast<double>(own_count)) * own;
        if (foreign_count > 0)
            out += std::sqrt((1.0 - beta) * total / static_cast<double>(foreign_count)) * foreign;
        return out;
    }

    RegulationMatrix mixed_channel_regulation(const std::vector<UeCascade> &cascades)
    {
        if (cascades.empty())
            throw std::invalid_argument("mixed_channel_regulation: no UE channels");
        const Eigen::Index n = cascades.front().h.size();
        ComplexVector mixed = ComplexVector::Zero(n);
        for (const auto &c : cascades)
        {
            require_same_length(c.h, c.g, "mixed_channel_regulation");
            if (c.h.size() != n)
                throw std::invalid_argument("mixed_channel_regulation: UE channels differ in length");
            mixed += c.h.cwiseProduct(c.g);
        }
        return optimal_regulation(mixed, ComplexVector::Ones(n));
    }

    RegulationMatrix quantize(const RegulationMatrix &phi, int bits)
    {
        if (bits < 1 || bits > 30)
            throw std::invalid_argument("quantize: bit count must be in [1, 30]");
        const double levels = std::ldexp(1.0, bits);
        const double step = two_pi / levels;
        RegulationMatrix out = phi;
        for (auto &p : out.phases)
        {
            double wrapped = std::fmod(p, two_pi);
            if (wrapped < 0.0)
                wrapped += two_pi;
            const double x = wrapped / step;
            const double lower = std::floor(x);
            // exact ties go to the smaller phase
            double k = (x - lower > 0.5) ? lower + 1.0 : lower;
            if (k >= levels)
                k -= levels;
            p = k * step;
        }
        out.quant_bits = bits;
        return out;
    }
}
