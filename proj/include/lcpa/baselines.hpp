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
#include "lcpa/mm_solver.hpp"

#include <vector>

namespace lcpa {

// Throughput-oriented reference allocators. Each returns a feasible
// PowerAllocation whose `objective` is the quantity the scheme optimizes
// (minimum rate, sum rate, ...), in bit/s/Hz.

struct MaxMinOptions {
    /// Relative bisection tolerance on the common SINR target.
    double tol = 1e-9;
    int max_fixed_point_iterations = 100000;
};

/// Max-min rate fairness: the largest common SINR target whose balancing
/// powers fit the budget, found by bisection. Power for a target comes from
/// the fixed point p_k = target * (sum_{l != k} G(k,l) p_l + noise) / G(k,k).
PowerAllocation max_min_fairness(const GainMatrix& gains, const SystemConfig& config,
                                 const MaxMinOptions& options = {});

struct SumRateOptions {
    /// Stop when the relative sum-rate gain of an outer step drops below this.
    double tol = 1e-9;
    int max_iterations = 100;
    /// Sum rate after each outer iterate, starting from the uniform split.
    std::vector<double>* trace = nullptr;
};

/// Sum-rate maximization by successive convex approximation: the
/// interference log term is linearized at the current iterate and the
/// resulting concave program is solved exactly. Starts from the uniform split.
PowerAllocation sum_rate_max(const GainMatrix& gains, const SystemConfig& config,
                             const SumRateOptions& options = {});

/// Interference-free water-filling on the diagonal gains. Deliberately ignores
/// off-diagonal entries.
PowerAllocation water_filling(const GainMatrix& gains, const SystemConfig& config);

/// P_sum / K for every user.
PowerAllocation uniform(const SystemConfig& config);

double sum_rate(const GainMatrix& gains, std::span<const double> powers, double noise_power_w);
double min_rate(const GainMatrix& gains, std::span<const double> powers, double noise_power_w);

} // namespace lcpa
