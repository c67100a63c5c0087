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

#include "lcpa/errors.hpp"
#include "lcpa/experiment.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace {

using namespace lcpa;

std::string csv_of(const std::vector<ExperimentRow>& rows)
{
    std::ostringstream out;
    write_csv(rows, out);
    return out.str();
}

std::size_t count_lines(const std::string& s)
{
    return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

ExperimentSpec small_spec()
{
    ExperimentSpec spec = lcpa::testing::reference(4);
    spec.sweep_values = {5.0, 10.0};
    spec.runs = 3;
    spec.seed = 77;
    return spec;
}

TEST(RunSeed, Formula)
{
    EXPECT_EQ(run_seed(5, 0), 5u);
    EXPECT_EQ(run_seed(5, 3), 5u + 3u * 1000003u);
}

TEST(EvaluateAllocation, ClampsAndFloors)
{
    const auto spec = lcpa::testing::reference(4);
    const auto g = gains_from_channels(draw_channels(spec.config, 1));
    const std::vector<double> p{0.01, 0.01};
    const auto out = evaluate_allocation(g, spec.config, spec.tasks, p);
    double worst = 0.0;
    for (std::size_t k = 0; k < 2; ++k) {
        const double r = rate(g, p, spec.config.noise_power_w, k);
        const double v = spec.config.bandwidth_hz * spec.config.time_budget_s * r / spec.tasks[k].bits_per_sample;
        EXPECT_EQ(out.discrete_samples[k], std::floor(v) + spec.tasks[k].initial_samples);
        worst = std::max(worst, spec.tasks[k].rho * spec.tasks[k].a *
                                    std::pow(v + spec.tasks[k].initial_samples, -spec.tasks[k].b));
    }
    EXPECT_DOUBLE_EQ(out.modeled_max_error, worst);

    // a model that exceeds 1 is reported as 1
    auto tasks = spec.tasks;
    tasks[0].a = 1e4;
    EXPECT_EQ(evaluate_allocation(g, spec.config, tasks, p).modeled_max_error, 1.0);
}

TEST(RunExperiment, SingleRunUniformByHand)
{
    ExperimentSpec spec = lcpa::testing::reference(4);
    spec.schemes = {Scheme::uniform};
    spec.sweep_values = {5.0};
    spec.runs = 1;
    spec.seed = 31;
    const auto rows = run_experiment(spec);
    ASSERT_EQ(rows.size(), 1u);
    const auto g = gains_from_channels(draw_channels(spec.config, 31));
    const std::vector<double> p{0.01, 0.01};
    const auto expected = evaluate_allocation(g, spec.config, spec.tasks, p);
    EXPECT_DOUBLE_EQ(rows[0].mean_powers_mw[0], 10.0);
    EXPECT_DOUBLE_EQ(rows[0].mean_modeled_max_error, expected.modeled_max_error);
    EXPECT_EQ(rows[0].mean_discrete_samples, expected.discrete_samples);
}

TEST(RunExperiment, SortedBySweepValueThenSchemeName)
{
    auto spec = small_spec();
    spec.schemes = {Scheme::water_filling, Scheme::lcpa_mm, Scheme::uniform, Scheme::max_min};
    const auto rows = run_experiment(spec);
    ASSERT_EQ(rows.size(), 8u);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& a = rows[i - 1];
        const auto& b = rows[i];
        EXPECT_TRUE(a.sweep_value < b.sweep_value ||
                    (a.sweep_value == b.sweep_value && scheme_name(a.scheme) < scheme_name(b.scheme)));
    }
}

TEST(RunExperiment, BudgetConservedInEveryRow)
{
    auto spec = small_spec();
    for (const auto& row : run_experiment(spec)) {
        ASSERT_FALSE(row.failed) << row.failure;
        double sum = 0.0;
        for (double x : row.mean_powers_mw)
            sum += x;
        EXPECT_NEAR(sum, 20.0, 1e-6) << scheme_name(row.scheme);
    }
}

TEST(RunExperiment, FailuresAreMarkedPerRow)
{
    auto spec = small_spec();
    spec.tasks[1].b = 0.0;  // the closed form is undefined without decay
    spec.schemes = {Scheme::lcpa_asymptotic, Scheme::uniform};
    const auto rows = run_experiment(spec);
    ASSERT_EQ(rows.size(), 4u);
    for (const auto& row : rows) {
        if (row.scheme == Scheme::lcpa_asymptotic) {
            EXPECT_TRUE(row.failed);
            EXPECT_FALSE(row.failure.empty());
            EXPECT_TRUE(std::isnan(row.mean_modeled_max_error));
        } else {
            EXPECT_FALSE(row.failed);
        }
    }
}

TEST(RunExperiment, LcpaDominatesAndErrorFallsWithTime)
{
    auto spec = small_spec();
    spec.sweep_values = {2.0, 5.0, 10.0, 20.0};
    const auto rows = run_experiment(spec);
    std::map<Scheme, std::vector<double>> by_scheme;
    std::map<double, double> lcpa;
    for (const auto& row : rows) {
        by_scheme[row.scheme].push_back(row.mean_modeled_max_error);
        if (row.scheme == Scheme::lcpa_mm)
            lcpa[row.sweep_value] = row.mean_modeled_max_error;
    }
    for (const auto& [scheme, series] : by_scheme)
        for (std::size_t i = 1; i < series.size(); ++i)
            EXPECT_LT(series[i], series[i - 1]) << scheme_name(scheme);
    for (const auto& row : rows)
        EXPECT_LE(lcpa[row.sweep_value], row.mean_modeled_max_error + 1e-9) << scheme_name(row.scheme);
}

TEST(RunExperiment, RejectsEmptySweep)
{
    auto spec = small_spec();
    spec.sweep_values.clear();
    EXPECT_THROW(run_experiment(spec), InvalidArgument);
}

TEST(Csv, HeaderOnlyForNoRows)
{
    EXPECT_EQ(csv_of({}), "sweep_value,scheme,user,power_mw,modeled_max_error,samples\n");
}

TEST(Csv, OneLinePerRowAndUser)
{
    auto spec = small_spec();
    spec.schemes = {Scheme::uniform};
    const auto rows = run_experiment(spec);
    ASSERT_EQ(rows.size(), 2u);
    const std::string text = csv_of(rows);
    EXPECT_EQ(count_lines(text), 1u + 4u);
    EXPECT_EQ(text.find('\r'), std::string::npos);
    std::istringstream in(text);
    std::string header, first;
    std::getline(in, header);
    std::getline(in, first);
    EXPECT_EQ(first.rfind("5,uniform,0,10,", 0), 0u) << first;
}

TEST(Csv, TenSignificantDigits)
{
    ExperimentRow row;
    row.sweep_value = 1.0 / 3.0;
    row.scheme = Scheme::max_min;
    row.mean_powers_mw = {2.0 / 3.0};
    row.mean_modeled_max_error = 0.125;
    row.mean_discrete_samples = {443.0};
    EXPECT_EQ(csv_of({row}), "sweep_value,scheme,user,power_mw,modeled_max_error,samples\n"
                             "0.3333333333,max_min,0,0.6666666667,0.125,443\n");
}

TEST(Csv, IdenticalSpecGivesIdenticalBytes)
{
    const auto spec = small_spec();
    EXPECT_EQ(csv_of(run_experiment(spec)), csv_of(run_experiment(spec)));
}

TEST(Csv, EmitWritesFileAndReportsPath)
{
    const auto path = std::filesystem::temp_directory_path() / "lcpa_emit_test.csv";
    emit_csv({}, path);
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    EXPECT_EQ(ss.str(), csv_of({}));
    std::filesystem::remove(path);

    try {
        emit_csv({}, "/nonexistent-dir/out.csv");
        FAIL();
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("/nonexistent-dir/out.csv"), std::string::npos);
    }
}

TEST(ConfigAt, AppliesSweepValue)
{
    auto spec = small_spec();
    EXPECT_EQ(config_at(spec, 12.5).time_budget_s, 12.5);
    spec.sweep_axis = SweepAxis::num_antennas;
    EXPECT_EQ(config_at(spec, 64).num_antennas, 64u);
}

} // namespace
