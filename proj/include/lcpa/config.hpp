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

#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lcpa {

enum class Scheme { lcpa_mm, lcpa_asymptotic, max_min, sum_rate, water_filling, uniform };

std::string_view scheme_name(Scheme scheme);
/// Throws ParseError for unknown names.
Scheme parse_scheme(std::string_view name);
/// Comma-separated list, whitespace tolerant.
std::vector<Scheme> parse_scheme_list(std::string_view text);
const std::vector<Scheme>& all_schemes();

enum class SweepAxis { time_budget_s, num_antennas };

std::string_view sweep_axis_name(SweepAxis axis);
SweepAxis parse_sweep_axis(std::string_view name);
std::vector<double> parse_value_list(std::string_view text);

struct SolverSettings {
    int mm_max_iterations = 50;
    double mm_tol = 1e-6;
    double subproblem_tol = 1e-6;
    double asymptotic_eps = 1e-9;
    double max_min_tol = 1e-9;
    int sum_rate_max_iterations = 100;
    /// Optional per-user power cap (W), honoured by lcpa_mm only.
    std::optional<double> per_user_cap_w;
};

struct ExperimentSpec {
    SystemConfig config;
    std::vector<LearningTask> tasks;
    std::vector<Scheme> schemes = all_schemes();
    SweepAxis sweep_axis = SweepAxis::time_budget_s;
    std::vector<double> sweep_values;
    int runs = 10;
    std::uint64_t seed = 1;
    SolverSettings solver;

    /// Empty sweep_values means "evaluate the base config only" and is
    /// allowed here; run_experiment requires a nonempty list.
    void validate() const;
};

double dbm_to_watts(double dbm);
double db_to_linear(double db);

/// Reads the INI-style experiment description. Sections: [system],
/// [task.<name>] (one per user, in file order), [experiment], [solver].
/// Units live in the key names (bandwidth_khz, total_power_dbm, ...).
ExperimentSpec parse_experiment(std::istream& in);
ExperimentSpec load_experiment(const std::filesystem::path& path);

/// Two-user reference system: 180 kHz, 5 s,
/// -87 dBm noise, 13 dBm budget, -100 dB path loss, CNN + SVM tasks.
ExperimentSpec reference_experiment(std::size_t num_antennas);

} // namespace lcpa
