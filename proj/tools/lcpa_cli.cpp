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

// Command-line front end of the lcpa library, one subcommand per task.

#include "lcpa/asymptotic_solver.hpp"
#include "lcpa/baselines.hpp"
#include "lcpa/config.hpp"
#include "lcpa/error_model.hpp"
#include "lcpa/errors.hpp"
#include "lcpa/experiment.hpp"
#include "lcpa/grid_oracle.hpp"
#include "lcpa/mm_solver.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

namespace {

struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<int> runs;
    std::optional<std::string> schemes;
    std::optional<std::string> sweep_axis;
    std::optional<std::string> sweep_values;
};

void apply(const Overrides& o, lcpa::ExperimentSpec& spec)
{
    if (o.seed)
        spec.seed = *o.seed;
    if (o.runs)
        spec.runs = *o.runs;
    if (o.schemes)
        spec.schemes = lcpa::parse_scheme_list(*o.schemes);
    if (o.sweep_axis)
        spec.sweep_axis = lcpa::parse_sweep_axis(*o.sweep_axis);
    if (o.sweep_values)
        spec.sweep_values = lcpa::parse_value_list(*o.sweep_values);
    spec.validate();
}

void print_powers(const std::vector<double>& powers)
{
    for (std::size_t k = 0; k < powers.size(); ++k)
        std::printf("%s%.6f", k ? " " : "", powers[k] * 1e3);
}

int run_fit(const std::string& path, const lcpa::FitGridSpec& grid)
{
    const auto points = lcpa::read_fit_points(path);
    const lcpa::FitResult r = lcpa::fit(points, grid);
    std::printf("a=%.4f b=%.4f mse=%.6g\n", r.a, r.b, r.mse);
    return 0;
}

int run_allocate(const lcpa::ExperimentSpec& spec)
{
    const lcpa::SystemConfig& config = spec.config;
    const lcpa::GainMatrix gains = lcpa::gains_from_channels(lcpa::draw_channels(config, spec.seed));
    std::printf("# seed %llu, N=%zu, K=%zu, T=%g s\n", static_cast<unsigned long long>(spec.seed),
                config.num_antennas, config.num_users(), config.time_budget_s);
    std::printf("%-16s %-28s %-18s %s\n", "scheme", "powers_mw", "modeled_max_error", "samples");
    for (lcpa::Scheme scheme : spec.schemes) {
        const std::string name(lcpa::scheme_name(scheme));
        try {
            const auto alloc = lcpa::allocate(scheme, gains, config, spec.tasks, spec.solver);
            const auto outcome = lcpa::evaluate_allocation(gains, config, spec.tasks, alloc.powers);
            std::printf("%-16s ", name.c_str());
            print_powers(alloc.powers);
            std::printf("   %.6f          ", outcome.modeled_max_error);
            for (std::size_t k = 0; k < outcome.discrete_samples.size(); ++k)
                std::printf("%s%.0f", k ? " " : "", outcome.discrete_samples[k]);
            std::printf("\n");
        } catch (const lcpa::Error& e) {
            std::printf("%-16s FAILED: %s\n", name.c_str(), e.what());
        }
    }
    return 0;
}

int run_sweep(const lcpa::ExperimentSpec& spec, const std::string& out)
{
    const auto rows = lcpa::run_experiment(spec);
    lcpa::emit_csv(rows, out);
    std::printf("# modeled_max_error is max_k rho_k a_k v_k^-b_k at the achieved sample counts;\n"
                "# no classifier is retrained. samples are floor(B T R_k / D_k) + A_k.\n");
    std::printf("# %zu rows written to %s\n", rows.size(), out.c_str());
    int failures = 0;
    for (const auto& row : rows) {
        if (row.failed) {
            ++failures;
            std::fprintf(stderr, "sweep %g %s failed: %s\n", row.sweep_value,
                         std::string(lcpa::scheme_name(row.scheme)).c_str(), row.failure.c_str());
        }
    }
    return failures ? 3 : 0;
}

int run_oracle(const lcpa::ExperimentSpec& spec)
{
    if (spec.tasks.size() != 2)
        throw lcpa::InvalidArgument("oracle: grid oracles need exactly two users");
    const lcpa::SystemConfig& config = spec.config;
    std::printf("%-5s %-14s %-14s %-14s %-14s\n", "run", "lcpa_gap", "maxmin_gap", "sumrate_gap", "asym_vs_mm");
    double worst[4] = {0, 0, 0, 0};
    for (int r = 0; r < spec.runs; ++r) {
        const auto gains = lcpa::gains_from_channels(
            lcpa::draw_channels(config, lcpa::run_seed(spec.seed, static_cast<std::size_t>(r))));
        const auto lcpa_alloc = lcpa::allocate(lcpa::Scheme::lcpa_mm, gains, config, spec.tasks, spec.solver);
        const double lcpa_gap = lcpa_alloc.objective - lcpa::lcpa_grid_optimum(gains, config, spec.tasks).value;
        const auto mm = lcpa::max_min_fairness(gains, config);
        const double maxmin_gap = lcpa::min_rate_grid_optimum(gains, config).value - mm.objective;
        const auto sr = lcpa::sum_rate_max(gains, config);
        const double sumrate_gap = lcpa::sum_rate_grid_optimum(gains, config).value - sr.objective;

        const auto diag = gains.diagonal_only();
        const auto asym = lcpa::solve_asymptotic(diag, config, spec.tasks);
        const auto mm_diag = lcpa::allocate(lcpa::Scheme::lcpa_mm, diag, config, spec.tasks, spec.solver);
        double discrepancy = 0.0;
        for (std::size_t k = 0; k < 2; ++k)
            discrepancy = std::max(discrepancy, std::abs(asym.powers[k] - mm_diag.powers[k]) / config.total_power_w);

        std::printf("%-5d %-14.3e %-14.3e %-14.3e %-14.3e\n", r, lcpa_gap, maxmin_gap, sumrate_gap, discrepancy);
        const double gaps[4] = {lcpa_gap, maxmin_gap, sumrate_gap, discrepancy};
        for (int i = 0; i < 4; ++i)
            worst[i] = std::max(worst[i], gaps[i]);
    }
    std::printf("worst %-14.3e %-14.3e %-14.3e %-14.3e\n", worst[0], worst[1], worst[2], worst[3]);
    std::printf("# gaps are solver minus grid optimum (positive = grid better, step 1e-4 P_sum);\n"
                "# asym_vs_mm is the max power difference / P_sum on interference-free gains\n");
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Learning-centric power allocation toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    Overrides overrides;

    auto add_common = [&](CLI::App* sub, bool with_sweep) {
        sub->add_option("--config", config_path, "Experiment config (INI)")->required()->check(CLI::ExistingFile);
        sub->add_option("--seed", overrides.seed, "Base seed");
        sub->add_option("--runs", overrides.runs, "Monte-Carlo draws");
        sub->add_option("--schemes", overrides.schemes, "Comma-separated scheme list");
        if (with_sweep) {
            sub->add_option("--sweep-axis", overrides.sweep_axis, "time_budget_s or num_antennas");
            sub->add_option("--sweep-values", overrides.sweep_values, "Comma-separated, strictly increasing");
        }
    };

    std::string points_path;
    lcpa::FitGridSpec grid;
    auto* fit = app.add_subcommand("fit", "Fit a * v^-b to learning-curve points");
    fit->add_option("points", points_path, "CSV with header sample_size,error")->required();
    fit->add_option("--a-max", grid.a.hi, "Upper end of the a grid");
    fit->add_option("--a-step", grid.a.step, "Coarse a step");
    fit->add_option("--b-max", grid.b.hi, "Upper end of the b grid");
    fit->add_option("--b-step", grid.b.step, "Coarse b step");
    fit->add_option("--refine-rounds", grid.refine_rounds, "Refinement rounds");

    auto* alloc = app.add_subcommand("allocate", "Allocate power on a single channel draw");
    add_common(alloc, false);

    auto* sweep = app.add_subcommand("sweep", "Monte-Carlo sweep written as CSV");
    add_common(sweep, true);
    sweep->add_option("--out", out_path, "Output CSV path")->required();

    auto* oracle = app.add_subcommand("oracle", "Compare two-user solvers with exhaustive grids");
    add_common(oracle, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (fit->parsed())
            return run_fit(points_path, grid);
        lcpa::ExperimentSpec spec = lcpa::load_experiment(config_path);
        apply(overrides, spec);
        if (alloc->parsed())
            return run_allocate(spec);
        if (sweep->parsed())
            return run_sweep(spec, out_path);
        if (oracle->parsed())
            return run_oracle(spec);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
