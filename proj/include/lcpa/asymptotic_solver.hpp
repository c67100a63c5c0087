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

#include <span>
#include <vector>

namespace lcpa {

/// Closed-form LCPA for interference-free (many-antenna) links.
struct ErrorLevelSolution {
    double mu_star = 0.0;        // common weighted error level
    std::vector<double> powers;  // W
    int bisection_iterations = 0;
};

/// Smallest power that brings user k's weighted modeled error down to `mu`:
///
///   [ (noise/g_kk) * (exp(D_k ln2 / (B T) * ((mu / (rho_k a_k))^(-1/b_k) - A_k)) - 1) ]^+
///
/// Throws DomainError for mu <= 0, g_kk <= 0, a_k = 0 or b_k = 0.
double power_at_level(const LearningTask& task, double g_kk, const SystemConfig& config, double mu);

/// Weighted error level reached without any uploaded data,
/// rho_k a_k max(A_k, 1)^(-b_k); above it the user needs no power.
double zero_power_level(const LearningTask& task);

struct AsymptoticOptions {
    /// Budget tolerance relative to the total power.
    double eps = 1e-9;
    int max_iterations = 200;
};

/// Bisection on mu until the powers from power_at_level use the whole budget.
/// Only the diagonal of `gains` is read.
ErrorLevelSolution solve_asymptotic(const GainMatrix& gains, const SystemConfig& config,
                                    std::span<const LearningTask> tasks, const AsymptoticOptions& options = {});

} // namespace lcpa
