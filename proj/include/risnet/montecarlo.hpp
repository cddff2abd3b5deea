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

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace risnet
{
    struct Curve
    {
        std::string label;
        std::string mode; // "ncm", "sam" or empty; not part of the CSV schema
        std::vector<double> mean;
        std::vector<double> stderr_;
        std::vector<std::uint64_t> trials;

        bool operator==(const Curve &) const = default;
    };

    // Aggregated Monte Carlo output: one mean/stderr per (curve, x).
    struct CurveSet
    {
        std::string scenario;
        std::vector<double> x;
        std::vector<Curve> curves;
        std::uint64_t seed = 0;
        std::string config_digest;

        const Curve &curve(const std::string &label) const;
        Curve &curve(const std::string &label);
        bool has_curve(const std::string &label) const;

        // Sort curves by label and points by ascending x (the CSV row order).
        void canonicalize();

        bool operator==(const CurveSet &) const = default;
    };

    struct Aggregate
    {
        double mean = 0.0;
        double stderr_ = 0.0;
    };

    // Mean and standard error (sample std with n-1 denominator over sqrt(n); 0 for n = 1).
    // Sums are Neumaier-compensated so the result is stable under permutation of the input.
    Aggregate aggregate(std::span<const double> samples);

    struct CurveSpec
    {
        std::string label;
        std::string mode;
    };

    struct TrialLayout
    {
        std::string scenario;
        std::vector<double> x;
        std::vector<CurveSpec> curves;
    };

    // samples[c * x.size() + i] is curve c at sweep point i for one trial.
    using TrialSamples = std::vector<double>;
    using TrialFunction = std::function<TrialSamples(std::uint64_t trial)>;

    struct RunOptions
    {
        std::uint64_t trials = 1;
        std::uint64_t seed = 0;
        unsigned threads = 1; // 0 = hardware concurrency
    };

    // Runs `trial` for indices 0..trials-1 on a worker pool and aggregates per (curve, x) in
    // trial-index order, so the result does not depend on the number of workers.
    CurveSet run_trials(const TrialLayout &layout, const TrialFunction &trial, const RunOptions &options);
}
