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

#include "risnet/metrics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace risnet
{
    void LinkBudget::validate() const
    {
        if (!(power > 0.0) || !std::isfinite(power))
            throw std::invalid_argument("LinkBudget: power must be positive");
        if (!(noise_var > 0.0) || !std::isfinite(noise_var))
            throw std::invalid_argument("LinkBudget: noise variance must be positive");
    }

    double sinr(const ComplexMatrix &desired, const std::vector<Interferer> &interferers, const LinkBudget &budget)
    {
        budget.validate();
        double interference = 0.0;
        for (const auto &i : interferers)
        {
            if (i.channel.rows() != desired.rows())
                throw std::invalid_argument("sinr: interferer has a different receive dimension");
            interference += i.channel.squaredNorm() * i.power;
        }
        return desired.squaredNorm() * budget.power / (interference + budget.noise_var);
    }

    double sinr_from_powers(double signal, double interference, const LinkBudget &budget)
    {
        return signal * budget.power / (interference * budget.power + budget.noise_var);
    }

    double achievable_rate(double gamma)
    {
        if (!(gamma >= 0.0))
            throw std::invalid_argument("achievable_rate: negative or NaN SINR");
        return std::log2(1.0 + gamma);
    }

    double rsrp(const ComplexMatrix &effective_channel, const ComplexMatrix &precoder, const LinkBudget &budget)
    {
        if (effective_channel.cols() != precoder.rows())
            throw std::invalid_argument("rsrp: precoder does not match the channel's transmit dimension");
        if (effective_channel.rows() == 0)
            throw std::invalid_argument("rsrp: channel has no receive antennas");
        return budget.power * (effective_channel * precoder).squaredNorm() /
               static_cast<double>(effective_channel.rows());
    }

    double to_dbm(double linear_mw)
    {
        return 10.0 * std::log10(linear_mw);
    }

    void InterferenceGeometry::validate() const
    {
        constexpr double two_pi = 2.0 * std::numbers::pi;
        if (!(beam_width > 0.0 && beam_width < two_pi))
            throw std::invalid_argument("InterferenceGeometry: beam width outside (0, 2pi)");
        if (!(s0 > 0.0))
            throw std::invalid_argument("InterferenceGeometry: s0 must be positive");
        if (!(p_i0 > 0.0 && p_i0 <= 1.0))
            throw std::invalid_argument("InterferenceGeometry: p_I0 outside (0, 1]");
        for (std::size_t i = 1; i < width_table.size(); ++i)
            if (!(width_table[i].first > width_table[i - 1].first))
                throw std::invalid_argument("InterferenceGeometry: width table bounds must increase");
        for (std::size_t i = 1; i < width_table.size(); ++i)
            if (width_table[i].second > width_table[i - 1].second)
                throw std::invalid_argument("InterferenceGeometry: beam widths must not grow with the angle");
    }

    bool scheme1_check(double s, const InterferenceGeometry &geom)
    {
        return s * std::cos(geom.normal_angle) <= geom.s0;
    }

    EquivalentInterference scheme2_equivalent_interference(double s, const InterferenceGeometry &geom)
    {
        constexpr double two_pi = 2.0 * std::numbers::pi;
        if (!(geom.beam_width > 0.0 && geom.beam_width < two_pi))
            throw std::invalid_argument("scheme2: beam width outside (0, 2pi)");
        EquivalentInterference out;
        out.p_i = geom.beam_width / two_pi;
        out.i_e = out.p_i * s;
        // theta = 2*pi*p_I0 is admitted within a relative tolerance
        out.admitted = out.p_i <= geom.p_i0 * (1.0 + 1e-12);
        return out;
    }

    double scheme3_select_width(double angle, const InterferenceGeometry &geom)
    {
        if (geom.width_table.empty())
            throw std::invalid_argument("scheme3: empty width table");
        for (const auto &[bound, width] : geom.width_table)
            if (bound > angle)
                return width;
        return geom.width_table.back().second;
    }
}
