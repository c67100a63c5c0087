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

#include <Eigen/Dense>

#include <functional>
#include <optional>
#include <vector>

namespace lcpa {

/// Value and (optionally) derivatives of a smooth convex function of the
/// power vector. `value` is +infinity outside the function's domain.
struct FunctionEval {
    double value = 0.0;
    Eigen::VectorXd gradient;
    Eigen::MatrixXd hessian;
};

using ConvexFunction = std::function<FunctionEval(const Eigen::VectorXd& powers, bool derivatives)>;

/// Feasible set {p : sum(p) = budget, 0 <= p_k <= cap}.
struct PowerSimplex {
    double budget = 0.0;
    std::optional<double> per_user_cap;
};

struct BarrierOptions {
    /// Stop once the duality-gap bound drops below this (function units).
    double gap_tol = 1e-9;
    /// Typical magnitude of the objective; only used to condition the problem.
    double value_scale = 1.0;
    double barrier_growth = 10.0;
    int max_newton_steps = 2000;
};

struct MinimaxResult {
    Eigen::VectorXd powers;
    double objective = 0.0;
    double gap_bound = 0.0;
    int newton_steps = 0;
};

/// Minimizes max_k f_k(p) over the power simplex with a log-barrier
/// interior-point method on the epigraph form
///
///     min t   s.t.  f_k(p) <= t,  sum(p) = budget,  0 < p_k (< cap).
///
/// `start` must be strictly inside the simplex and inside every f_k's domain.
/// Throws ConvergenceError when the Newton budget runs out before the
/// gap bound meets `gap_tol`.
MinimaxResult minimize_max_on_simplex(const std::vector<ConvexFunction>& functions,
                                      const PowerSimplex& simplex, const Eigen::VectorXd& start,
                                      const BarrierOptions& options = {});

/// (1 - weight) * p + weight * uniform. Strictly interior for feasible p and
/// weight in (0, 1], provided the caps leave room for the uniform split.
Eigen::VectorXd interior_blend(const Eigen::VectorXd& p, const PowerSimplex& simplex, double weight);

/// Throws InvalidArgument if the simplex is empty or degenerate.
void validate_simplex(const PowerSimplex& simplex, std::size_t num_users);

} // namespace lcpa
