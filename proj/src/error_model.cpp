// SPDX-License-Identifier: Apache-2.0
//
// Copyright (C) 2026 The lcpa authors
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

#include "lcpa/error_model.hpp"

#include "lcpa/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <string>

namespace lcpa {

void LearningTask::validate() const
{
    if (!(a >= 0.0) || !(b >= 0.0))
        throw InvalidArgument("learning task: a and b must be nonnegative");
    if (!(rho >= 1.0))
        throw InvalidArgument("learning task: rho must be >= 1");
    if (!(bits_per_sample >= 1.0))
        throw InvalidArgument("learning task: bits_per_sample must be >= 1");
    if (!(initial_samples >= 0.0))
        throw InvalidArgument("learning task: initial_samples must be nonnegative");
}

std::size_t GridAxis::size() const
{
    if (!(step > 0.0) || !(hi >= lo) || !std::isfinite(lo) || !std::isfinite(hi))
        return 0;
    return static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
}

double model_error(const LearningTask& task, double v, bool weighted)
{
    if (!(v > 0.0))
        throw DomainError("model_error: sample size must be positive, got " + std::to_string(v));
    const double value = task.a * std::pow(v, -task.b);
    return weighted ? task.rho * value : value;
}

double extrapolate(const LearningTask& task, double v_future)
{
    return model_error(task, v_future, false);
}

double fit_mse(std::span<const FitPoint> points, double a, double b)
{
    double acc = 0.0;
    for (const auto& pt : points) {
        const double r = pt.observed_error - a * std::pow(pt.sample_size, -b);
        acc += r * r;
    }
    return acc / static_cast<double>(points.size());
}

namespace {

struct GridBest {
    double a;
    double b;
    double mse;
};

GridBest search_grid(std::span<const FitPoint> points, const GridAxis& a_axis, const GridAxis& b_axis)
{
    const std::size_t na = a_axis.size();
    const std::size_t nb = b_axis.size();
    if (na == 0 || nb == 0)
        throw InvalidArgument("fit: empty search grid");

    const double q = static_cast<double>(points.size());
    std::vector<double> decay(points.size());
    GridBest best{0.0, 0.0, std::numeric_limits<double>::infinity()};

    // b outer, a inner, strict improvement only: ties keep the smaller b, then a.
    for (std::size_t j = 0; j < nb; ++j) {
        const double b = b_axis.at(j);
        for (std::size_t i = 0; i < points.size(); ++i)
            decay[i] = std::pow(points[i].sample_size, -b);
        for (std::size_t i = 0; i < na; ++i) {
            const double a = a_axis.at(i);
            double acc = 0.0;
            for (std::size_t p = 0; p < points.size(); ++p) {
                const double r = points[p].observed_error - a * decay[p];
                acc += r * r;
            }
            const double mse = acc / q;
            if (mse < best.mse)
                best = {a, b, mse};
        }
    }
    return best;
}

} // namespace

FitResult fit(std::span<const FitPoint> points, const FitGridSpec& grid)
{
    std::set<double> sizes;
    for (const auto& pt : points) {
        if (!(pt.sample_size > 0.0))
            throw InvalidArgument("fit: sample sizes must be positive");
        if (!(pt.observed_error >= 0.0 && pt.observed_error <= 1.0))
            throw InvalidArgument("fit: observed errors must lie in [0, 1]");
        sizes.insert(pt.sample_size);
    }
    if (sizes.size() < 2)
        throw InsufficientDataError("fit: need at least 2 distinct sample sizes");
    if (grid.a.lo < 0.0 || grid.b.lo < 0.0)
        throw InvalidArgument("fit: grid must stay within a >= 0, b >= 0");
    if (grid.refine_rounds < 0 || !(grid.refine_factor > 1.0))
        throw InvalidArgument("fit: refinement needs rounds >= 0 and factor > 1");

    GridAxis a_axis = grid.a;
    GridAxis b_axis = grid.b;
    GridBest best = search_grid(points, a_axis, b_axis);

    for (int round = 0; round < grid.refine_rounds; ++round) {
        const double a_step = a_axis.step;
        const double b_step = b_axis.step;
        a_axis = {std::max(0.0, best.a - a_step), best.a + a_step, a_step / grid.refine_factor};
        b_axis = {std::max(0.0, best.b - b_step), best.b + b_step, b_step / grid.refine_factor};
        const GridBest refined = search_grid(points, a_axis, b_axis);
        // the refined grid need not contain the coarse optimum exactly
        if (refined.mse <= best.mse)
            best = refined;
    }
    return {best.a, best.b, best.mse};
}

namespace {

double parse_field(const std::string& text, std::size_t line_no, const char* what)
{
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    std::string rest = text.substr(std::min(used, text.size()));
    rest.erase(std::remove_if(rest.begin(), rest.end(), [](unsigned char c) { return std::isspace(c); }),
               rest.end());
    if (used == 0 || !rest.empty() || !std::isfinite(value)) {
        std::ostringstream msg;
        msg << "line " << line_no << ": invalid " << what << " '" << text << "'";
        throw ParseError(msg.str());
    }
    return value;
}

} // namespace

std::vector<FitPoint> read_fit_points(std::istream& in)
{
    std::vector<FitPoint> points;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (!header_seen) {
            std::string compact = line;
            compact.erase(std::remove_if(compact.begin(), compact.end(),
                                         [](unsigned char c) { return std::isspace(c); }),
                          compact.end());
            if (compact != "sample_size,error")
                throw ParseError("line " + std::to_string(line_no) +
                                 ": expected header 'sample_size,error'");
            header_seen = true;
            continue;
        }
        if (line.find_first_not_of(" \t") == std::string::npos)
            continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos)
            throw ParseError("line " + std::to_string(line_no) + ": expected exactly two columns");
        FitPoint pt;
        pt.sample_size = parse_field(line.substr(0, comma), line_no, "sample_size");
        pt.observed_error = parse_field(line.substr(comma + 1), line_no, "error");
        if (!(pt.sample_size > 0.0))
            throw ParseError("line " + std::to_string(line_no) + ": sample_size must be positive");
        if (pt.observed_error < 0.0 || pt.observed_error > 1.0)
            throw ParseError("line " + std::to_string(line_no) + ": error must lie in [0, 1]");
        points.push_back(pt);
    }
    if (!header_seen)
        throw ParseError("line 1: missing header 'sample_size,error'");
    return points;
}

std::vector<FitPoint> read_fit_points(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open " + path.string());
    try {
        return read_fit_points(in);
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

} // namespace lcpa
