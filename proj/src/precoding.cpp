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

#include "risnet/scenarios.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

namespace risnet
{
    namespace
    {
        // Rotates v until its reference entry is real and positive.
        void normalize_phase(ComplexVector &v)
        {
            const double scale = v.norm();
            Eigen::Index ref = 0;
            while (ref < v.size() && std::abs(v(ref)) <= 1e-12 * scale)
                ++ref;
            if (ref == v.size())
                return;
            v *= std::conj(v(ref)) / std::abs(v(ref));
            v(ref) = std::abs(v(ref));
        }

        ComplexVector dominant_from_gram(const ComplexMatrix &gram)
        {
            Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(gram);
            if (es.info() != Eigen::Success)
                throw std::runtime_error("mrt_precoder: eigen decomposition failed");
            return es.eigenvectors().col(gram.cols() - 1);
        }
    }

    ComplexMatrix mrt_precoder(const ComplexMatrix &channel)
    {
        const double fro = channel.norm();
        if (!(fro > 0.0) || !std::isfinite(fro))
            throw std::invalid_argument("mrt_precoder: zero or non-finite channel");

        ComplexVector v;
        if (channel.rows() <= channel.cols())
        {
            // Few receive antennas: v = H^H u / ||H^H u|| with u the dominant left singular vector.
            ComplexVector u = channel.rows() == 1 ? ComplexVector::Ones(1)
                                                  : dominant_from_gram(channel * channel.adjoint());
            v = channel.adjoint() * u;
        }
        else
        {
            // Tall channel (NB -> RIS): power iteration on H^H H started from the strongest row.
            // Rank-1 line-of-sight links converge on the first step; otherwise fall back to the
            // eigen decomposition of the Gram matrix.
            Eigen::Index strongest = 0;
            channel.rowwise().squaredNorm().maxCoeff(&strongest);
            v = channel.row(strongest).adjoint();
            v.normalize();
            bool converged = false;
            for (int it = 0; it < 64 && !converged; ++it)
            {
                ComplexVector w = channel.adjoint() * (channel * v);
                const cdouble lambda = v.dot(w);
                converged = (w - lambda * v).norm() <= 1e-12 * w.norm();
                v = w.normalized();
            }
            if (!converged)
                v = dominant_from_gram(channel.adjoint() * channel);
        }
        v.normalize();
        normalize_phase(v);
        return v;
    }
}
