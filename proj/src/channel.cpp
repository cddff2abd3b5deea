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

#include "risnet/channel.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace risnet
{
    namespace
    {
        constexpr double pi = std::numbers::pi;

        ComplexMatrix steering_from_spatial_frequency(int n, double u, double spacing)
        {
            ComplexMatrix a(n, 1);
            for (int k = 0; k < n; ++k)
                a(k, 0) = std::polar(1.0, 2.0 * pi * spacing * k * u);
            return a;
        }

        void check_dims(bool ok, const char *what)
        {
            if (!ok)
                throw std::invalid_argument(what);
        }
    }

    // --- RegulationMatrix (shared core type) ---

    RegulationMatrix RegulationMatrix::identity(std::size_t n)
    {
        return {std::vector<double>(n, 0.0), std::vector<double>(n, 1.0), std::nullopt};
    }

    RegulationMatrix RegulationMatrix::from_coefficients(const ComplexVector &coefficients)
    {
        RegulationMatrix out;
        const auto n = static_cast<std::size_t>(coefficients.size());
        out.phases.resize(n);
        out.amplitudes.resize(n);
        for (std::size_t i = 0; i < n; ++i)
        {
            out.phases[i] = std::arg(coefficients(i));
            out.amplitudes[i] = std::abs(coefficients(i));
        }
        return out;
    }

    cdouble RegulationMatrix::coefficient(std::size_t n) const
    {
        return std::polar(amplitudes[n], phases[n]);
    }

    ComplexVector RegulationMatrix::diagonal() const
    {
        ComplexVector d(static_cast<Eigen::Index>(size()));
        for (std::size_t n = 0; n < size(); ++n)
            d(static_cast<Eigen::Index>(n)) = coefficient(n);
        return d;
    }

    void RegulationMatrix::validate() const
    {
        if (phases.size() != amplitudes.size())
            throw std::invalid_argument("RegulationMatrix: phases and amplitudes differ in length");
        for (double a : amplitudes)
            if (!(a >= 0.0 && a <= 1.0 + 1e-12))
                throw std::invalid_argument("RegulationMatrix: amplitude outside [0, 1]");
    }

    // --- ArrayGeometry ---

    ArrayGeometry ArrayGeometry::ula(int n, double spacing)
    {
        return {ArrayKind::ula, n, 1, spacing};
    }

    ArrayGeometry ArrayGeometry::upa(int n_x, int n_y, double spacing)
    {
        return {ArrayKind::upa, n_x, n_y, spacing};
    }

    void ArrayGeometry::validate() const
    {
        if (n_x < 1 || n_y < 1)
            throw std::invalid_argument("ArrayGeometry: element counts must be >= 1");
        if (kind == ArrayKind::ula && n_y != 1)
            throw std::invalid_argument("ArrayGeometry: a ULA must have n_y = 1");
        if (!(spacing > 0.0) || !std::isfinite(spacing))
            throw std::invalid_argument("ArrayGeometry: spacing must be positive");
    }

    std::string ArrayGeometry::describe() const
    {
        std::ostringstream os;
        os << (kind == ArrayKind::ula ? "ula" : "upa") << ' ' << n_x << 'x' << n_y << " d=" << spacing;
        return os.str();
    }

    // --- ChannelSet ---

    Eigen::Index ChannelSet::nb_antennas() const
    {
        return branches.empty() ? (direct ? direct->cols() : 0) : branches.front().G.cols();
    }

    Eigen::Index ChannelSet::ue_antennas() const
    {
        return branches.empty() ? (direct ? direct->rows() : 0) : branches.front().H.cols();
    }

    void ChannelSet::validate() const
    {
        const auto nb = nb_antennas();
        const auto ue = ue_antennas();
        for (const auto &b : branches)
        {
            check_dims(b.G.cols() == nb, "ChannelSet: NB antenna count differs across branches");
            check_dims(b.H.cols() == ue, "ChannelSet: UE antenna count differs across branches");
            check_dims(b.G.rows() == b.H.rows(), "ChannelSet: G and H disagree on RIS element count");
        }
        if (direct)
            check_dims(direct->rows() == ue && direct->cols() == nb, "ChannelSet: direct link has wrong shape");
    }

    // --- steering vectors ---

    ComplexMatrix ula_steering(int n, double angle, double spacing)
    {
        if (n < 1)
            throw std::invalid_argument("ula_steering: element count must be positive");
        if (!std::isfinite(angle))
            throw std::invalid_argument("ula_steering: angle is not finite");
        return steering_from_spatial_frequency(n, std::sin(angle), spacing);
    }

    ComplexMatrix upa_steering(const ArrayGeometry &geom, double azimuth, double elevation)
    {
        if (geom.kind != ArrayKind::upa)
            throw std::invalid_argument("upa_steering: geometry is not a UPA");
        geom.validate();
        if (!std::isfinite(azimuth) || !std::isfinite(elevation))
            throw std::invalid_argument("upa_steering: angle is not finite");

        const ComplexMatrix ax =
            steering_from_spatial_frequency(geom.n_x, std::sin(azimuth) * std::cos(elevation), geom.spacing);
        const ComplexMatrix ay = steering_from_spatial_frequency(geom.n_y, std::sin(elevation), geom.spacing);

        ComplexMatrix a(geom.elements(), 1);
        for (int ix = 0; ix < geom.n_x; ++ix)
            for (int iy = 0; iy < geom.n_y; ++iy)
                a(ix * geom.n_y + iy, 0) = ax(ix, 0) * ay(iy, 0);
        return a;
    }

    ComplexMatrix steering(const ArrayGeometry &geom, double azimuth, double elevation)
    {
        if (geom.kind == ArrayKind::ula)
        {
            geom.validate();
            return ula_steering(geom.n_x, azimuth, geom.spacing);
        }
        return upa_steering(geom, azimuth, elevation);
    }

    ComplexMatrix gen_channel(ChannelModel model, const ArrayGeometry &rx_geom, const ArrayGeometry &tx_geom,
                              RngStream &rng)
    {
        rx_geom.validate();
        tx_geom.validate();

        if (model == ChannelModel::rayleigh)
        {
            ComplexMatrix h(rx_geom.elements(), tx_geom.elements());
            for (Eigen::Index c = 0; c < h.cols(); ++c)
                for (Eigen::Index r = 0; r < h.rows(); ++r)
                    h(r, c) = rng.complex_normal();
            return h;
        }

        // Front-hemisphere visibility: azimuth on (-pi/2, pi/2), elevation on (-pi/4, pi/4).
        auto draw = [&rng](const ArrayGeometry &g) {
            const double az = rng.uniform(-pi / 2.0, pi / 2.0);
            const double el = g.kind == ArrayKind::upa ? rng.uniform(-pi / 4.0, pi / 4.0) : 0.0;
            return steering(g, az, el);
        };
        const ComplexMatrix a_rx = draw(rx_geom);
        const ComplexMatrix a_tx = draw(tx_geom);
        const cdouble gain = std::polar(1.0, rng.phase());
        return gain * a_rx * a_tx.adjoint();
    }

    ComplexMatrix cascaded_channel(const ComplexMatrix &H, const RegulationMatrix &phi, const ComplexMatrix &G,
                                   const std::optional<ComplexMatrix> &direct)
    {
        const auto n = static_cast<Eigen::Index>(phi.size());
        check_dims(phi.amplitudes.size() == phi.size(), "cascaded_channel: malformed regulation matrix");
        check_dims(H.rows() == n && G.rows() == n, "cascaded_channel: RIS element count mismatch");

        const ComplexVector d = phi.diagonal();
        ComplexMatrix out = H.cols() <= G.cols() ? ComplexMatrix((H.adjoint() * d.asDiagonal()) * G)
                                                 : ComplexMatrix(H.adjoint() * (d.asDiagonal() * G));
        if (direct)
        {
            check_dims(direct->rows() == out.rows() && direct->cols() == out.cols(),
                       "cascaded_channel: direct link has wrong shape");
            out += *direct;
        }
        return out;
    }

    ComplexMatrix comp_jt_channel(const std::vector<JtBranch> &branches)
    {
        if (branches.empty())
            throw std::invalid_argument("comp_jt_channel: no branches");
        ComplexMatrix sum = cascaded_channel(branches.front().H, branches.front().phi, branches.front().G);
        for (std::size_t i = 1; i < branches.size(); ++i)
        {
            const auto &b = branches[i];
            check_dims(b.H.cols() == sum.rows() && b.G.cols() == sum.cols(),
                       "comp_jt_channel: branch outer dimensions differ");
            sum += cascaded_channel(b.H, b.phi, b.G);
        }
        return sum;
    }

    ComplexVector rx_row(const ComplexMatrix &H, Eigen::Index antenna)
    {
        check_dims(antenna >= 0 && antenna < H.cols(), "rx_row: antenna index out of range");
        return H.col(antenna).conjugate();
    }
}
