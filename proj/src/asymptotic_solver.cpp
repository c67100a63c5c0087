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

#include "lcpa/asymptotic_solver.hpp"

#include "lcpa/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace lcpa {

double power_at_level(const LearningTask& task, double g_kk, const SystemConfig& config, double mu)
{
    if (!(mu > 0.0))
        throw DomainError("power_at_level: error level must be positive");
    if (!(g_kk > 0.0))
        throw DomainError("power_at_level: channel gain must be positive");
    if (!(task.a > 0.0) || !(task.b > 0.0))
        throw DomainError("power_at_level: needs a > 0 and b > 0");

    const double samples_needed = std::pow(mu / (task.rho * task.a), -1.0 / task.b);
    const double exponent = task.bits_per_sample * std::numbers::ln2 /
                            (config.bandwidth_hz * config.time_budget_s) *
                            (samples_needed - task.initial_samples);
    const double p = config.noise_power_w / g_kk * std::expm1(exponent);
    return std::max(p, 0.0);
}

double zero_power_level(const LearningTask& task)
{
    return task.rho * task.a * std::pow(std::max(task.initial_samples, 1.0), -task.b);
}

namespace {

double total_at(const std::vector<double>& diag, const SystemConfig& config, std::span<const LearningTask> tasks,
                double mu)
{
    double sum = 0.0;
    for (std::size_t k = 0; k < tasks.size(); ++k)
        sum += power_at_level(tasks[k], diag[k], config, mu);
    return sum;
}

} // namespace

ErrorLevelSolution solve_asymptotic(const GainMatrix& gains, const SystemConfig& config,
                                    std::span<const LearningTask> tasks, const AsymptoticOptions& options)
{
    if (gains.size() != tasks.size() || tasks.empty())
        throw InvalidArgument("solve_asymptotic: gain matrix and task list disagree on the user count");
    if (!(config.total_power_w > 0.0))
        throw InvalidArgument("solve_asymptotic: total power must be positive");
    if (!(options.eps > 0.0) || options.max_iterations < 1)
        throw InvalidArgument("solve_asymptotic: need eps > 0 and max_iterations >= 1");
    for (const auto& task : tasks)
        if (!(task.a > 0.0) || !(task.b > 0.0))
            throw DomainError("solve_asymptotic: every task needs a > 0 and b > 0");

    const std::vector<double> diag = gains.diagonal();
    const double budget = config.total_power_w;

    double hi = 0.0;
    for (const auto& task : tasks)
        hi = std::max(hi, zero_power_level(task));
    // only reachable with A_k < 1, where the bracket top still asks for power
    while (total_at(diag, config, tasks, hi) > budget)
        hi *= 2.0;
    double lo = hi;
    while (total_at(diag, config, tasks, lo) < budget) {
        hi = lo;
        lo *= 0.5;
    }

    ErrorLevelSolution out;
    for (int it = 1; it <= options.max_iterations; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double total = total_at(diag, config, tasks, mid);
        out.bisection_iterations = it;
        if (std::abs(total - budget) <= options.eps * budget) {
            out.mu_star = mid;
            out.powers.resize(tasks.size());
            for (std::size_t k = 0; k < tasks.size(); ++k)
                out.powers[k] = power_at_level(tasks[k], diag[k], config, mid);
            return out;
        }
        // total power decreases with the error level
        if (total > budget)
            lo = mid;
        else
            hi = mid;
    }
    throw ConvergenceError("solve_asymptotic: bisection did not meet eps within the iteration cap");
}

} // namespace lcpa
