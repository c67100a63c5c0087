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

#include "lcpa/channel.hpp"
#include "lcpa/error_model.hpp"

#include <functional>
#include <span>
#include <vector>

namespace lcpa {

// Exhaustive 1-D reference for two-user problems: with sum(p) = P the
// simplex is the segment p = (x, P - x), scanned at x = i * P / steps.
// Only the objective definitions are used, never a solver.

struct GridOptimum {
    std::vector<double> powers;
    double value = 0.0;
};

using TwoUserObjective = std::function<double(std::span<const double> powers)>;

GridOptimum scan_two_user(const TwoUserObjective& objective, double total_power, std::size_t steps, bool minimize);

/// Grid minimum of max_k rho_k phi_k.
GridOptimum lcpa_grid_optimum(const GainMatrix& gains, const SystemConfig& config,
                              std::span<const LearningTask> tasks, std::size_t steps = 10000);

/// Grid maximum of the minimum rate.
GridOptimum min_rate_grid_optimum(const GainMatrix& gains, const SystemConfig& config, std::size_t steps = 10000);

/// Grid maximum of the sum rate.
GridOptimum sum_rate_grid_optimum(const GainMatrix& gains, const SystemConfig& config, std::size_t steps = 10000);

} // namespace lcpa
