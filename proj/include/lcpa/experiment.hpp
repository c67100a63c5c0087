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

#include "lcpa/config.hpp"
#include "lcpa/mm_solver.hpp"

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace lcpa {

/// Seed of Monte-Carlo run `run_index`: seed + 1000003 * run_index (mod 2^64).
std::uint64_t run_seed(std::uint64_t seed, std::size_t run_index);

/// Allocation of one scheme on one channel draw.
PowerAllocation allocate(Scheme scheme, const GainMatrix& gains, const SystemConfig& config,
                         std::span<const LearningTask> tasks, const SolverSettings& solver = {});

/// What a scheme's allocation buys on the learning side.
struct LearningOutcome {
    /// max_k rho_k a_k v_k^(-b_k) with continuous v_k, clamped to [0, 1].
    double modeled_max_error = 0.0;
    /// floor(B T R_k / D_k) + A_k per user.
    std::vector<double> discrete_samples;
};

LearningOutcome evaluate_allocation(const GainMatrix& gains, const SystemConfig& config,
                                    std::span<const LearningTask> tasks, std::span<const double> powers);

struct ExperimentRow {
    double sweep_value = 0.0;
    Scheme scheme = Scheme::uniform;
    std::vector<double> mean_powers_mw;
    double mean_modeled_max_error = 0.0;
    std::vector<double> mean_discrete_samples;
    /// Set when any run of this cell threw; the means are then NaN.
    bool failed = false;
    std::string failure;
};

/// Spec with the sweep value applied to the corresponding config field.
SystemConfig config_at(const ExperimentSpec& spec, double sweep_value);

/// Full Monte-Carlo sweep. Rows come out sorted by (sweep value, scheme
/// name); solver failures are recorded per row instead of aborting.
std::vector<ExperimentRow> run_experiment(const ExperimentSpec& spec);

/// One line per (row, user) under the header
/// `sweep_value,scheme,user,power_mw,modeled_max_error,samples`.
void write_csv(const std::vector<ExperimentRow>& rows, std::ostream& out);
void emit_csv(const std::vector<ExperimentRow>& rows, const std::filesystem::path& path);

} // namespace lcpa
