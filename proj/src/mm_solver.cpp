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

#include "lcpa/mm_solver.hpp"

#include "lcpa/barrier_solver.hpp"
#include "lcpa/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace lcpa {

namespace {

void check_sizes(const GainMatrix& gains, std::span<const LearningTask> tasks, std::size_t num_powers)
{
    if (gains.size() != tasks.size() || gains.size() != num_powers)
        throw InvalidArgument("gain matrix, task list and power vector disagree on the user count");
}

double total_received(const GainMatrix& gains, std::span<const double> powers, double noise, std::size_t k)
{
    double acc = noise;
    for (std::size_t l = 0; l < gains.size(); ++l)
        acc += gains(k, l) * powers[l];
    return acc;
}

// B*T / (D_k ln 2): converts nats of rate into samples.
double samples_per_nat(const SystemConfig& config, const LearningTask& task)
{
    return config.bandwidth_hz * config.time_budget_s / (task.bits_per_sample * std::numbers::ln2);
}

// Concave bracket of the surrogate; <= 0 marks the excluded region.
double surrogate_bracket(const SurrogateState& state, const GainMatrix& gains, const SystemConfig& config,
                         const LearningTask& task, std::span<const double> powers, std::size_t k)
{
    const double received = total_received(gains, powers, config.noise_power_w, k);
    const double interference = interference_plus_noise(gains, powers, config.noise_power_w, k);
    const double anchor = state.anchor_interference(k);
    return samples_per_nat(config, task) *
               (std::log(received) - interference / anchor - std::log(anchor) + 1.0) +
           task.initial_samples;
}

// Gradient of the bracket with respect to the powers.
Eigen::VectorXd bracket_gradient(const SurrogateState& state, const GainMatrix& gains, const SystemConfig& config,
                                 const LearningTask& task, std::span<const double> powers, std::size_t k)
{
    const std::size_t K = gains.size();
    const double c = samples_per_nat(config, task);
    const double received = total_received(gains, powers, config.noise_power_w, k);
    const double anchor = state.anchor_interference(k);
    Eigen::VectorXd grad(static_cast<Eigen::Index>(K));
    for (std::size_t l = 0; l < K; ++l) {
        const double off = (l == k) ? 0.0 : gains(k, l) / anchor;
        grad[static_cast<Eigen::Index>(l)] = c * (gains(k, l) / received - off);
    }
    return grad;
}

// rho_k * surrogate_phi_k with derivatives, in the form the barrier solver expects.
ConvexFunction weighted_surrogate(const SurrogateState& state, const GainMatrix& gains, const SystemConfig& config,
                                  const LearningTask& task, std::size_t k)
{
    return [&state, &gains, &config, &task, k](const Eigen::VectorXd& p, bool derivatives) {
        const std::span<const double> powers(p.data(), static_cast<std::size_t>(p.size()));
        FunctionEval e;
        const double u = surrogate_bracket(state, gains, config, task, powers, k);
        if (!(u > 0.0)) {
            e.value = std::numeric_limits<double>::infinity();
            return e;
        }
        const double scale = task.rho * task.a;
        e.value = scale * std::pow(u, -task.b);
        if (!derivatives)
            return e;

        const std::size_t K = gains.size();
        const Eigen::VectorXd du = bracket_gradient(state, gains, config, task, powers, k);
        Eigen::VectorXd row(static_cast<Eigen::Index>(K));
        for (std::size_t l = 0; l < K; ++l)
            row[static_cast<Eigen::Index>(l)] = gains(k, l);
        const double received = total_received(gains, powers, config.noise_power_w, k);
        const double c = samples_per_nat(config, task);
        // Hessian of the bracket is -c * row row^T / received^2
        const double first = -scale * task.b * std::pow(u, -task.b - 1.0);
        const double second = scale * task.b * (task.b + 1.0) * std::pow(u, -task.b - 2.0);
        e.gradient = first * du;
        e.hessian = second * du * du.transpose() - first * c / (received * received) * row * row.transpose();
        return e;
    };
}

} // namespace

double phi(const GainMatrix& gains, const SystemConfig& config, std::span<const LearningTask> tasks,
           std::span<const double> powers, std::size_t k)
{
    check_sizes(gains, tasks, powers.size());
    const LearningTask& task = tasks[k];
    const double bracket = sample_count(config, rate(gains, powers, config.noise_power_w, k), task, true);
    if (!(bracket > 0.0))
        throw DomainError("phi: no samples for user " + std::to_string(k) + " (A_k = 0 and zero rate)");
    return task.a * std::pow(bracket, -task.b);
}

double lcpa_objective(const GainMatrix& gains, const SystemConfig& config, std::span<const LearningTask> tasks,
                      std::span<const double> powers)
{
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < tasks.size(); ++k)
        worst = std::max(worst, tasks[k].rho * phi(gains, config, tasks, powers, k));
    return worst;
}

SurrogateState::SurrogateState(const GainMatrix& gains, const SystemConfig& config, std::vector<double> anchor)
    : anchor_(std::move(anchor))
{
    if (anchor_.size() != gains.size())
        throw InvalidArgument("surrogate anchor has the wrong length");
    for (double p : anchor_)
        if (!(p >= 0.0) || !std::isfinite(p))
            throw InvalidArgument("surrogate anchor must be nonnegative and finite");
    anchor_interference_.resize(anchor_.size());
    for (std::size_t k = 0; k < anchor_.size(); ++k)
        anchor_interference_[k] = interference_plus_noise(gains, anchor_, config.noise_power_w, k);
}

double surrogate_phi(const SurrogateState& state, const GainMatrix& gains, const SystemConfig& config,
                     std::span<const LearningTask> tasks, std::span<const double> powers, std::size_t k)
{
    check_sizes(gains, tasks, powers.size());
    const double u = surrogate_bracket(state, gains, config, tasks[k], powers, k);
    if (!(u > 0.0))
        return std::numeric_limits<double>::infinity();
    return tasks[k].a * std::pow(u, -tasks[k].b);
}

std::vector<double> surrogate_phi_gradient(const SurrogateState& state, const GainMatrix& gains,
                                           const SystemConfig& config, std::span<const LearningTask> tasks,
                                           std::span<const double> powers, std::size_t k)
{
    check_sizes(gains, tasks, powers.size());
    const LearningTask& task = tasks[k];
    const double u = surrogate_bracket(state, gains, config, task, powers, k);
    if (!(u > 0.0))
        throw DomainError("surrogate_phi_gradient: point outside the surrogate domain");
    const Eigen::VectorXd du = bracket_gradient(state, gains, config, task, powers, k);
    const double factor = -task.a * task.b * std::pow(u, -task.b - 1.0);
    std::vector<double> out(gains.size());
    for (std::size_t l = 0; l < out.size(); ++l)
        out[l] = factor * du[static_cast<Eigen::Index>(l)];
    return out;
}

namespace {

double surrogate_objective(const SurrogateState& state, const GainMatrix& gains, const SystemConfig& config,
                           std::span<const LearningTask> tasks, std::span<const double> powers)
{
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < tasks.size(); ++k)
        worst = std::max(worst, tasks[k].rho * surrogate_phi(state, gains, config, tasks, powers, k));
    return worst;
}

} // namespace

std::vector<double> solve_subproblem(const SurrogateState& state, const GainMatrix& gains,
                                     const SystemConfig& config, std::span<const LearningTask> tasks,
                                     const SubproblemOptions& options)
{
    const std::size_t K = gains.size();
    check_sizes(gains, tasks, state.anchor().size());
    if (!(options.tol > 0.0))
        throw InvalidArgument("solve_subproblem: tol must be positive");

    const PowerSimplex simplex{config.total_power_w, options.per_user_cap};
    validate_simplex(simplex, K);

    const std::vector<double>& anchor = state.anchor();
    const double anchor_value = surrogate_objective(state, gains, config, tasks, anchor);
    if (!std::isfinite(anchor_value))
        throw DomainError("solve_subproblem: anchor lies outside the surrogate domain");
    if (K == 1)
        return {config.total_power_w};

    std::vector<ConvexFunction> functions;
    functions.reserve(K);
    for (std::size_t k = 0; k < K; ++k)
        functions.push_back(weighted_surrogate(state, gains, config, tasks[k], k));

    // The anchor may sit on the boundary; nudge it inside while staying in
    // every surrogate's domain.
    const Eigen::VectorXd anchor_vec = Eigen::Map<const Eigen::VectorXd>(anchor.data(), static_cast<Eigen::Index>(K));
    Eigen::VectorXd start;
    double weight = 1e-3;
    for (;; weight *= 0.5) {
        if (weight < 1e-15)
            throw DomainError("solve_subproblem: no strictly feasible start near the anchor");
        start = interior_blend(anchor_vec, simplex, weight);
        const std::span<const double> sp(start.data(), K);
        if (std::isfinite(surrogate_objective(state, gains, config, tasks, sp)))
            break;
    }

    BarrierOptions barrier;
    barrier.value_scale = anchor_value;
    barrier.gap_tol = options.tol * anchor_value;
    barrier.max_newton_steps = options.max_newton_steps;
    const MinimaxResult result = minimize_max_on_simplex(functions, simplex, start, barrier);

    std::vector<double> out(result.powers.data(), result.powers.data() + K);
    // the surrogate is tangent at the anchor, so this keeps MM monotone
    if (!(surrogate_objective(state, gains, config, tasks, out) <= anchor_value))
        return anchor;
    return out;
}

PowerAllocation solve_lcpa(const GainMatrix& gains, const SystemConfig& config, std::span<const LearningTask> tasks,
                           const MmOptions& options)
{
    const std::size_t K = gains.size();
    check_sizes(gains, tasks, K);
    if (options.max_iterations < 1 || !(options.mm_tol >= 0.0))
        throw InvalidArgument("solve_lcpa: need max_iterations >= 1 and mm_tol >= 0");

    std::vector<double> p(K, config.total_power_w / static_cast<double>(K));
    double value = lcpa_objective(gains, config, tasks, p);
    if (options.trace) {
        options.trace->clear();
        options.trace->push_back(value);
    }

    PowerAllocation out;
    for (int it = 1; it <= options.max_iterations; ++it) {
        const SurrogateState state(gains, config, p);
        std::vector<double> next = solve_subproblem(state, gains, config, tasks, options.subproblem);
        const double next_value = lcpa_objective(gains, config, tasks, next);
        out.iterations = it;
        const double decrease = value - next_value;
        if (next_value <= value) {
            p = std::move(next);
            value = next_value;
        }
        if (options.trace)
            options.trace->push_back(next_value);
        if (decrease <= options.mm_tol * std::abs(value)) {
            out.converged = true;
            break;
        }
    }
    out.powers = std::move(p);
    out.objective = value;
    return out;
}

} // namespace lcpa
