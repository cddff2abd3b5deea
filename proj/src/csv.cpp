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

#include "risnet/csv.hpp"

#include "risnet/errors.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace risnet
{
    namespace
    {
        constexpr const char *columns[] = {"scenario", "curve", "x", "mean_rate", "stderr", "trials", "seed"};

        std::string number(double v)
        {
            std::array<char, 64> buf{};
            const auto r = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::scientific, 16);
            return std::string(buf.data(), r.ptr);
        }

        // Sweep coordinates use the shortest round-trip form.
        std::string coordinate(double v)
        {
            std::array<char, 64> buf{};
            const auto r = std::to_chars(buf.data(), buf.data() + buf.size(), v);
            return std::string(buf.data(), r.ptr);
        }

        template <typename T>
        T parse_field(const std::string &s, const char *name, int line)
        {
            T v{};
            const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
            if (r.ec != std::errc() || r.ptr != s.data() + s.size())
                throw IoError("table line " + std::to_string(line) + ": bad " + name + " '" + s + "'");
            return v;
        }

        std::vector<std::string> split(const std::string &line, char sep)
        {
            std::vector<std::string> out;
            std::string cell;
            std::istringstream is(line);
            while (std::getline(is, cell, sep))
                out.push_back(cell);
            if (!line.empty() && line.back() == sep)
                out.emplace_back();
            return out;
        }
    }

    void emit_csv(const CurveSet &curves, std::ostream &out, TableFormat format)
    {
        const char sep = format == TableFormat::csv ? ',' : '\t';
        CurveSet sorted = curves;
        sorted.canonicalize();
        for (std::size_t i = 0; i < std::size(columns); ++i)
            out << (i ? std::string(1, sep) : "") << columns[i];
        out << '\n';
        for (const Curve &c : sorted.curves)
            for (std::size_t i = 0; i < sorted.x.size(); ++i)
                out << sorted.scenario << sep << c.label << sep << coordinate(sorted.x[i]) << sep << number(c.mean[i])
                    << sep << number(c.stderr_[i]) << sep << c.trials[i] << sep << sorted.seed << '\n';
    }

    std::string emit_csv(const CurveSet &curves, TableFormat format)
    {
        std::ostringstream os;
        emit_csv(curves, os, format);
        return os.str();
    }

    void write_csv(const CurveSet &curves, const std::string &path, TableFormat format)
    {
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw IoError("cannot open '" + path + "' for writing");
        emit_csv(curves, out, format);
        out.flush();
        if (!out)
            throw IoError("write to '" + path + "' failed");
    }

    CurveSet parse_csv(std::istream &in, TableFormat format)
    {
        const char sep = format == TableFormat::csv ? ',' : '\t';
        std::string line;
        if (!std::getline(in, line))
            throw IoError("table is empty");
        const auto header = split(line, sep);
        if (!std::equal(header.begin(), header.end(), std::begin(columns), std::end(columns)))
            throw IoError("unexpected table header '" + line + "'");

        struct Point
        {
            double mean, stderr_;
            std::uint64_t trials;
        };
        CurveSet out;
        std::vector<std::string> labels;
        std::map<std::string, std::map<double, Point>> rows;
        bool first = true;
        int lineno = 1;
        while (std::getline(in, line))
        {
            ++lineno;
            if (line.empty())
                continue;
            const auto f = split(line, sep);
            if (f.size() != std::size(columns))
                throw IoError("table line " + std::to_string(lineno) + ": expected 7 fields");
            const auto seed = parse_field<std::uint64_t>(f[6], "seed", lineno);
            if (first)
            {
                out.scenario = f[0];
                out.seed = seed;
                first = false;
            }
            else if (f[0] != out.scenario || seed != out.seed)
                throw IoError("table line " + std::to_string(lineno) + ": mixed scenario or seed");
            const double x = parse_field<double>(f[2], "x", lineno);
            if (!rows.contains(f[1]))
                labels.push_back(f[1]);
            const Point p{parse_field<double>(f[3], "mean_rate", lineno), parse_field<double>(f[4], "stderr", lineno),
                          parse_field<std::uint64_t>(f[5], "trials", lineno)};
            if (!rows[f[1]].emplace(x, p).second)
                throw IoError("table line " + std::to_string(lineno) + ": duplicate point");
        }
        if (rows.empty())
            return out;
        for (const auto &[x, _] : rows.begin()->second)
            out.x.push_back(x);
        for (const auto &label : labels)
        {
            const auto &pts = rows.at(label);
            if (pts.size() != out.x.size())
                throw IoError("curve '" + label + "' does not cover every x");
            Curve c;
            c.label = label;
            for (double x : out.x)
            {
                const auto it = pts.find(x);
                if (it == pts.end())
                    throw IoError("curve '" + label + "' does not cover every x");
                c.mean.push_back(it->second.mean);
                c.stderr_.push_back(it->second.stderr_);
                c.trials.push_back(it->second.trials);
            }
            out.curves.push_back(std::move(c));
        }
        out.canonicalize();
        return out;
    }

    CurveSet parse_csv(const std::string &text, TableFormat format)
    {
        std::istringstream is(text);
        return parse_csv(is, format);
    }
}
