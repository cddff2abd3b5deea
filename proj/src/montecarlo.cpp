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

#include "risnet/montecarlo.hpp"

#include "risnet/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace risnet
{
    namespace
    {
        // Neumaier compensated summation.
        struct CompensatedSum
        {
            double sum = 0.0;
            double carry = 0.0;

            void add(double v)
            {
                const double t = sum + v;
                if (std::abs(sum) >= std::abs(v))
                    carry += (sum - t) + v;
                else
                    carry += (v - t) + sum;
                sum = t;
            }
            double value() const { return sum + carry; }
        };
    }

    const Curve &CurveSet::curve(const std::string &label) const
    {
        for (const auto &c : curves)
            if (c.label == label)
                return c;
        throw std::out_of_range("CurveSet: no curve labelled '" + label + "'");
    }

    Curve &CurveSet::curve(const std::string &label)
    {
        return const_cast<Curve &>(std::as_const(*this).curve(label));
    }

    bool CurveSet::has_curve(const std::string &label) const
    {
        return std::any_of(curves.begin(), curves.end(), [&](const Curve &c) { return c.label == label; });
    }

    void CurveSet::canonicalize()
    {
        std::stable_sort(curves.begin(), curves.end(),
                         [](const Curve &a, const Curve &b) { return a.label < b.label; });
        std::vector<std::size_t> order(x.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
        auto permute = [&order](auto &v) {
            auto copy = v;
            for (std::size_t i = 0; i < order.size(); ++i)
                v[i] = copy[order[i]];
        };
        permute(x);
        for (auto &c : curves)
        {
            permute(c.mean);
            permute(c.stderr_);
            permute(c.trials);
        }
    }

    Aggregate aggregate(std::span<const double> samples)
    {
        if (samples.empty())
            throw std::invalid_argument("aggregate: no samples");
        const double n = static_cast<double>(samples.size());

        CompensatedSum s;
        for (double v : samples)
            s.add(v);
        const double mean = s.value() / n;

        if (samples.size() == 1)
            return {mean, 0.0};

        CompensatedSum ss;
        for (double v : samples)
            ss.add((v - mean) * (v - mean));
        const double variance = ss.value() / (n - 1.0);
        return {mean, std::sqrt(variance / n)};
    }

    CurveSet run_trials(const TrialLayout &layout, const TrialFunction &trial, const RunOptions &options)
    {
        if (options.trials < 1)
            throw std::invalid_argument("run_trials: at least one trial is required");
        if (layout.x.empty() || layout.curves.empty())
            throw std::invalid_argument("run_trials: empty layout");

        const std::size_t points = layout.x.size();
        const std::size_t width = points * layout.curves.size();
        const std::uint64_t trials = options.trials;

        // results[c * points + i][t]
        std::vector<std::vector<double>> results(width, std::vector<double>(trials));

        std::atomic<std::uint64_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;

        auto worker = [&] {
            for (;;)
            {
                const std::uint64_t t = next.fetch_add(1);
                if (t >= trials)
                    return;
                try
                {
                    const TrialSamples s = trial(t);
                    if (s.size() != width)
                        throw std::logic_error("run_trials: trial returned the wrong number of samples");
                    for (std::size_t k = 0; k < width; ++k)
                    {
                        if (!std::isfinite(s[k]) || s[k] < 0.0)
                            throw InvariantError("trial " + std::to_string(t) + ": rate for curve '" +
                                                 layout.curves[k / points].label + "' is negative or not finite");
                        results[k][t] = s[k];
                    }
                }
                catch (...)
                {
                    std::lock_guard lock(failure_mutex);
                    if (!failure)
                        failure = std::current_exception();
                    next.store(trials);
                    return;
                }
            }
        };

        unsigned threads = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : options.threads;
        threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, trials));
        if (threads <= 1)
            worker();
        else
        {
            std::vector<std::jthread> pool;
            pool.reserve(threads);
            for (unsigned i = 0; i < threads; ++i)
                pool.emplace_back(worker);
        }
        if (failure)
            std::rethrow_exception(failure);

        CurveSet out;
        out.scenario = layout.scenario;
        out.x = layout.x;
        out.seed = options.seed;
        for (std::size_t c = 0; c < layout.curves.size(); ++c)
        {
            Curve curve;
            curve.label = layout.curves[c].label;
            curve.mode = layout.curves[c].mode;
            for (std::size_t i = 0; i < points; ++i)
            {
                const auto a = aggregate(results[c * points + i]);
                curve.mean.push_back(a.mean);
                curve.stderr_.push_back(a.stderr_);
                curve.trials.push_back(trials);
            }
            out.curves.push_back(std::move(curve));
        }
        return out;
    }
}
