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

#include "lcpa/grid_oracle.hpp"

#include "lcpa/baselines.hpp"
#include "lcpa/errors.hpp"
#include "lcpa/mm_solver.hpp"

#include <limits>

namespace lcpa {

GridOptimum scan_two_user(const TwoUserObjective& objective, double total_power, std::size_t steps, bool minimize)
{
    if (steps == 0)
        throw InvalidArgument("scan_two_user: need at least one step");
    GridOptimum best;
    best.value = minimize ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
    std::vector<double> p(2);
    for (std::size_t i = 0; i <= steps; ++i) {
        p[0] = total_power * static_cast<double>(i) / static_cast<double>(steps);
        p[1] = total_power - p[0];
        double v = 0.0;
        try {
            v = objective(p);
        } catch (const DomainError&) {
            continue;
        }
        if (minimize ? v < best.value : v > best.value) {
            best.value = v;
            best.powers = p;
        }
    }
    return best;
}

namespace {

void require_two_users(const GainMatrix& gains)
{
    if (gains.size() != 2)
        throw InvalidArgument("grid oracle only handles two users");
}

} // namespace

GridOptimum lcpa_grid_optimum(const GainMatrix& gains, const SystemConfig& config,
                              std::span<const LearningTask> tasks, std::size_t steps)
{
    require_two_users(gains);
    return scan_two_user(
        [&](std::span<const double> p) { return lcpa_objective(gains, config, tasks, p); },
        config.total_power_w, steps, true);
}

GridOptimum min_rate_grid_optimum(const GainMatrix& gains, const SystemConfig& config, std::size_t steps)
{
    require_two_users(gains);
    return scan_two_user([&](std::span<const double> p) { return min_rate(gains, p, config.noise_power_w); },
                         config.total_power_w, steps, false);
}

GridOptimum sum_rate_grid_optimum(const GainMatrix& gains, const SystemConfig& config, std::size_t steps)
{
    require_two_users(gains);
    return scan_two_user([&](std::span<const double> p) { return sum_rate(gains, p, config.noise_power_w); },
                         config.total_power_w, steps, false);
}

} // namespace lcpa
