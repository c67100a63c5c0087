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

#include <optional>
#include <span>
#include <vector>

namespace lcpa {

/// Output of every allocator in the library.
struct PowerAllocation {
    std::vector<double> powers;  // W
    double objective = 0.0;      // scheme-specific; LCPA reports max_k rho_k Phi_k
    int iterations = 0;
    bool converged = false;
};

/// Modeled error of user k as a function of all powers:
/// a_k * (B*T/D_k * R_k(p) + A_k)^(-b_k). Unweighted (no rho).
/// Throws DomainError when the bracket is not positive.
double phi(const GainMatrix& gains, const SystemConfig& config, std::span<const LearningTask> tasks,
           std::span<const double> powers, std::size_t k);

/// max_k rho_k * phi_k(p), the LCPA objective.
double lcpa_objective(const GainMatrix& gains, const SystemConfig& config,
                      std::span<const LearningTask> tasks, std::span<const double> powers);

/// Expansion point of the convex upper bounds used by the MM iteration,
/// with the interference-plus-noise at the anchor cached per user.
class SurrogateState {
public:
    SurrogateState(const GainMatrix& gains, const SystemConfig& config, std::vector<double> anchor);

    const std::vector<double>& anchor() const { return anchor_; }
    double anchor_interference(std::size_t k) const { return anchor_interference_[k]; }

private:
    std::vector<double> anchor_;
    std::vector<double> anchor_interference_;
};

/// Convex majorizer of phi_k around the anchor p*:
///
///   a_k { B*T/(D_k ln2) [ ln(S_k(p)) - I_k(p)/I_k(p*) - ln I_k(p*) + 1 ] + A_k }^(-b_k)
///
/// with S_k(p) = sum_l G(k,l) p_l + noise and I_k(p) = S_k(p) - G(k,k) p_k.
/// The log of the interference term is replaced by its tangent at p*, which
/// makes the bracket concave. Returns +infinity where the bracket is <= 0.
double surrogate_phi(const SurrogateState& state, const GainMatrix& gains, const SystemConfig& config,
                     std::span<const LearningTask> tasks, std::span<const double> powers, std::size_t k);

/// Gradient of surrogate_phi with respect to the powers (finite region only).
std::vector<double> surrogate_phi_gradient(const SurrogateState& state, const GainMatrix& gains,
                                           const SystemConfig& config, std::span<const LearningTask> tasks,
                                           std::span<const double> powers, std::size_t k);

struct SubproblemOptions {
    /// Relative optimality tolerance on the surrogate min-max value.
    double tol = 1e-6;
    std::optional<double> per_user_cap;
    int max_newton_steps = 2000;
};

/// Minimizes max_k rho_k * surrogate_phi_k(p | anchor) over the power simplex.
/// Never returns a point whose surrogate objective exceeds the anchor's.
std::vector<double> solve_subproblem(const SurrogateState& state, const GainMatrix& gains,
                                     const SystemConfig& config, std::span<const LearningTask> tasks,
                                     const SubproblemOptions& options = {});

struct MmOptions {
    int max_iterations = 50;
    /// Stop once the relative objective decrease falls below this.
    double mm_tol = 1e-6;
    SubproblemOptions subproblem;
    /// True objective of every subproblem output, starting with the uniform
    /// initializer. Recorded before the guard that keeps the best iterate.
    std::vector<double>* trace = nullptr;
};

/// LCPA by majorization-minimization, started from the uniform split.
PowerAllocation solve_lcpa(const GainMatrix& gains, const SystemConfig& config,
                           std::span<const LearningTask> tasks, const MmOptions& options = {});

} // namespace lcpa
