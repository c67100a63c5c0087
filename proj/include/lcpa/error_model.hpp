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

#pragma once

#include <filesystem>
#include <istream>
#include <span>
#include <vector>

namespace lcpa {

/// Learning-curve parameters and data cost of one user's classification task.
///
/// The modeled error at sample size v is a * v^(-b); rho >= 1 inflates it to
/// absorb model mismatch. bits_per_sample is the upload cost of one sample and
/// initial_samples the data already held at the edge (may be fractional).
struct LearningTask {
    double a = 0.0;
    double b = 0.0;
    double rho = 1.0;
    double bits_per_sample = 1.0;
    double initial_samples = 0.0;

    /// Throws InvalidArgument when an invariant is violated.
    void validate() const;
};

struct FitPoint {
    double sample_size = 0.0;
    double observed_error = 0.0;
};

/// Axis of a regular search grid: values lo, lo + step, ..., up to hi.
struct GridAxis {
    double lo = 0.0;
    double hi = 0.0;
    double step = 0.0;

    std::size_t size() const;
    double at(std::size_t i) const { return lo + static_cast<double>(i) * step; }
};

/// Coarse grid plus the number of refinement rounds. Each round searches
/// +-1 step around the current optimum with a step `refine_factor` times
/// smaller.
struct FitGridSpec {
    GridAxis a{0.0, 100.0, 0.1};
    GridAxis b{0.0, 3.0, 0.01};
    int refine_rounds = 1;
    double refine_factor = 10.0;
};

struct FitResult {
    double a = 0.0;
    double b = 0.0;
    double mse = 0.0;
};

/// a * v^(-b), times rho when `weighted`. Throws DomainError for v <= 0.
double model_error(const LearningTask& task, double v, bool weighted = false);

/// Named alias of the unweighted model, used when predicting beyond the
/// sample sizes the parameters were fitted on.
double extrapolate(const LearningTask& task, double v_future);

/// Mean squared error of a * v^(-b) over the points.
double fit_mse(std::span<const FitPoint> points, double a, double b);

/// Brute-force least-squares fit of (a, b) over the grid, with a, b >= 0.
/// Ties go to the smaller b, then the smaller a.
FitResult fit(std::span<const FitPoint> points, const FitGridSpec& grid = {});

/// Parses `sample_size,error` CSV with a mandatory header line.
/// Errors name the offending line number.
std::vector<FitPoint> read_fit_points(std::istream& in);
std::vector<FitPoint> read_fit_points(const std::filesystem::path& path);

} // namespace lcpa
