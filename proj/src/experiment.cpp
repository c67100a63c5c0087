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

#include "lcpa/experiment.hpp"

#include "lcpa/asymptotic_solver.hpp"
#include "lcpa/baselines.hpp"
#include "lcpa/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>

namespace lcpa {

std::uint64_t run_seed(std::uint64_t seed, std::size_t run_index)
{
    return seed + 1000003ULL * static_cast<std::uint64_t>(run_index);
}

PowerAllocation allocate(Scheme scheme, const GainMatrix& gains, const SystemConfig& config,
                         std::span<const LearningTask> tasks, const SolverSettings& solver)
{
    switch (scheme) {
    case Scheme::lcpa_mm: {
        MmOptions opts;
        opts.max_iterations = solver.mm_max_iterations;
        opts.mm_tol = solver.mm_tol;
        opts.subproblem.tol = solver.subproblem_tol;
        opts.subproblem.per_user_cap = solver.per_user_cap_w;
        return solve_lcpa(gains, config, tasks, opts);
    }
    case Scheme::lcpa_asymptotic: {
        AsymptoticOptions opts;
        opts.eps = solver.asymptotic_eps;
        ErrorLevelSolution sol = solve_asymptotic(gains, config, tasks, opts);
        PowerAllocation out;
        out.powers = std::move(sol.powers);
        out.objective = sol.mu_star;
        out.iterations = sol.bisection_iterations;
        out.converged = true;
        return out;
    }
    case Scheme::max_min: {
        MaxMinOptions opts;
        opts.tol = solver.max_min_tol;
        return max_min_fairness(gains, config, opts);
    }
    case Scheme::sum_rate: {
        SumRateOptions opts;
        opts.max_iterations = solver.sum_rate_max_iterations;
        return sum_rate_max(gains, config, opts);
    }
    case Scheme::water_filling:
        return water_filling(gains, config);
    case Scheme::uniform:
        return uniform(config);
    }
    throw InvalidArgument("allocate: unknown scheme");
}

LearningOutcome evaluate_allocation(const GainMatrix& gains, const SystemConfig& config,
                                    std::span<const LearningTask> tasks, std::span<const double> powers)
{
    LearningOutcome out;
    out.discrete_samples.resize(tasks.size());
    double worst = 0.0;
    for (std::size_t k = 0; k < tasks.size(); ++k) {
        const double r = rate(gains, powers, config.noise_power_w, k);
        const double v = sample_count(config, r, tasks[k], true);
        // no data at all: the model diverges, which reports as the clamp
        const double err = v > 0.0 ? model_error(tasks[k], v, true) : std::numeric_limits<double>::infinity();
        worst = std::max(worst, err);
        out.discrete_samples[k] = sample_count(config, r, tasks[k], false);
    }
    out.modeled_max_error = std::clamp(worst, 0.0, 1.0);
    return out;
}

SystemConfig config_at(const ExperimentSpec& spec, double sweep_value)
{
    SystemConfig c = spec.config;
    if (spec.sweep_axis == SweepAxis::time_budget_s)
        c.time_budget_s = sweep_value;
    else
        c.num_antennas = static_cast<std::size_t>(sweep_value);
    return c;
}

std::vector<ExperimentRow> run_experiment(const ExperimentSpec& spec)
{
    spec.validate();
    if (spec.sweep_values.empty())
        throw InvalidArgument("run_experiment: empty sweep value list");

    const std::size_t K = spec.tasks.size();
    const auto runs = static_cast<std::size_t>(spec.runs);
    std::vector<ExperimentRow> rows;

    for (double value : spec.sweep_values) {
        const SystemConfig config = config_at(spec, value);
        std::vector<ExperimentRow> cell(spec.schemes.size());
        for (std::size_t s = 0; s < spec.schemes.size(); ++s) {
            cell[s].sweep_value = value;
            cell[s].scheme = spec.schemes[s];
            cell[s].mean_powers_mw.assign(K, 0.0);
            cell[s].mean_discrete_samples.assign(K, 0.0);
        }

        for (std::size_t r = 0; r < runs; ++r) {
            const GainMatrix gains = gains_from_channels(draw_channels(config, run_seed(spec.seed, r)));
            for (auto& row : cell) {
                if (row.failed)
                    continue;
                try {
                    const PowerAllocation alloc = allocate(row.scheme, gains, config, spec.tasks, spec.solver);
                    const LearningOutcome outcome = evaluate_allocation(gains, config, spec.tasks, alloc.powers);
                    for (std::size_t k = 0; k < K; ++k) {
                        row.mean_powers_mw[k] += alloc.powers[k] * 1e3;
                        row.mean_discrete_samples[k] += outcome.discrete_samples[k];
                    }
                    row.mean_modeled_max_error += outcome.modeled_max_error;
                } catch (const Error& e) {
                    row.failed = true;
                    row.failure = "run " + std::to_string(r) + ": " + e.what();
                }
            }
        }

        const double nan = std::numeric_limits<double>::quiet_NaN();
        for (auto& row : cell) {
            const double scale = 1.0 / static_cast<double>(runs);
            for (std::size_t k = 0; k < K; ++k) {
                row.mean_powers_mw[k] = row.failed ? nan : row.mean_powers_mw[k] * scale;
                row.mean_discrete_samples[k] = row.failed ? nan : row.mean_discrete_samples[k] * scale;
            }
            row.mean_modeled_max_error = row.failed ? nan : row.mean_modeled_max_error * scale;
            rows.push_back(std::move(row));
        }
    }

    std::stable_sort(rows.begin(), rows.end(), [](const ExperimentRow& x, const ExperimentRow& y) {
        if (x.sweep_value != y.sweep_value)
            return x.sweep_value < y.sweep_value;
        return scheme_name(x.scheme) < scheme_name(y.scheme);
    });
    return rows;
}

namespace {

std::string format_number(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

} // namespace

void write_csv(const std::vector<ExperimentRow>& rows, std::ostream& out)
{
    out << "sweep_value,scheme,user,power_mw,modeled_max_error,samples\n";
    for (const auto& row : rows) {
        for (std::size_t k = 0; k < row.mean_powers_mw.size(); ++k) {
            out << format_number(row.sweep_value) << ',' << scheme_name(row.scheme) << ',' << k << ','
                << format_number(row.mean_powers_mw[k]) << ',' << format_number(row.mean_modeled_max_error) << ','
                << format_number(row.mean_discrete_samples[k]) << '\n';
        }
    }
}

void emit_csv(const std::vector<ExperimentRow>& rows, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error("cannot open " + path.string() + " for writing");
    write_csv(rows, out);
    out.flush();
    if (!out)
        throw Error("write failed for " + path.string());
}

} // namespace lcpa
