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

#include "lcpa/baselines.hpp"

#include "lcpa/barrier_solver.hpp"
#include "lcpa/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>

namespace lcpa {

double sum_rate(const GainMatrix& gains, std::span<const double> powers, double noise_power_w)
{
    double acc = 0.0;
    for (std::size_t k = 0; k < gains.size(); ++k)
        acc += rate(gains, powers, noise_power_w, k);
    return acc;
}

double min_rate(const GainMatrix& gains, std::span<const double> powers, double noise_power_w)
{
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < gains.size(); ++k)
        worst = std::min(worst, rate(gains, powers, noise_power_w, k));
    return worst;
}

PowerAllocation uniform(const SystemConfig& config)
{
    const std::size_t K = config.num_users();
    if (K == 0)
        throw InvalidArgument("uniform: no users");
    PowerAllocation out;
    out.powers.assign(K, config.total_power_w / static_cast<double>(K));
    out.converged = true;
    return out;
}

namespace {

void check_gains(const GainMatrix& gains, const SystemConfig& config)
{
    if (gains.size() == 0 || gains.size() != config.num_users())
        throw InvalidArgument("gain matrix does not match the configured user count");
    for (std::size_t k = 0; k < gains.size(); ++k)
        if (!(gains(k, k) > 0.0))
            throw DomainError("diagonal channel gains must be positive");
}

// Powers meeting SINR `target` for everyone, or nullopt once the iteration
// proves they exceed the budget. Iterates increase monotonically from zero.
std::optional<std::vector<double>> balance_powers(const GainMatrix& gains, const SystemConfig& config, double target,
                                                  int max_iterations)
{
    const std::size_t K = gains.size();
    std::vector<double> p(K, 0.0);
    std::vector<double> next(K);
    for (int it = 0; it < max_iterations; ++it) {
        double change = 0.0;
        double largest = 0.0;
        for (std::size_t k = 0; k < K; ++k) {
            next[k] = target * interference_plus_noise(gains, p, config.noise_power_w, k) / gains(k, k);
            change = std::max(change, std::abs(next[k] - p[k]));
            largest = std::max(largest, next[k]);
        }
        p.swap(next);
        if (std::accumulate(p.begin(), p.end(), 0.0) > config.total_power_w)
            return std::nullopt;
        if (change <= 1e-14 * largest)
            return p;
    }
    throw ConvergenceError("max_min_fairness: SINR balancing fixed point did not converge");
}

} // namespace

PowerAllocation max_min_fairness(const GainMatrix& gains, const SystemConfig& config, const MaxMinOptions& options)
{
    check_gains(gains, config);
    const std::size_t K = gains.size();
    PowerAllocation out;
    if (K == 1) {
        out.powers = {config.total_power_w};
        out.objective = min_rate(gains, out.powers, config.noise_power_w);
        out.converged = true;
        return out;
    }

    // no user can beat its interference-free single-user SINR
    double hi = 0.0;
    for (std::size_t k = 0; k < K; ++k)
        hi = std::max(hi, gains(k, k) * config.total_power_w / config.noise_power_w);
    double lo = 0.0;
    std::vector<double> best(K, 0.0);
    while (hi - lo > options.tol * hi) {
        const double mid = 0.5 * (lo + hi);
        ++out.iterations;
        if (auto p = balance_powers(gains, config, mid, options.max_fixed_point_iterations)) {
            lo = mid;
            best = std::move(*p);
        } else {
            hi = mid;
        }
    }
    if (!(lo > 0.0))
        throw ConvergenceError("max_min_fairness: no positive SINR target fits the budget");

    // spend the slack left by the bisection; every SINR only grows
    const double total = std::accumulate(best.begin(), best.end(), 0.0);
    for (double& p : best)
        p *= config.total_power_w / total;
    out.powers = std::move(best);
    out.objective = min_rate(gains, out.powers, config.noise_power_w);
    out.converged = true;
    return out;
}

PowerAllocation water_filling(const GainMatrix& gains, const SystemConfig& config)
{
    check_gains(gains, config);
    const std::size_t K = gains.size();
    std::vector<double> floor_level(K);
    for (std::size_t k = 0; k < K; ++k)
        floor_level[k] = config.noise_power_w / gains(k, k);

    // exact water level: fill the lowest floors first
    std::vector<double> sorted = floor_level;
    std::sort(sorted.begin(), sorted.end());
    double level = 0.0;
    double prefix = 0.0;
    for (std::size_t m = 1; m <= K; ++m) {
        prefix += sorted[m - 1];
        const double candidate = (config.total_power_w + prefix) / static_cast<double>(m);
        if (m == K || candidate <= sorted[m]) {
            level = candidate;
            break;
        }
    }

    PowerAllocation out;
    out.powers.resize(K);
    for (std::size_t k = 0; k < K; ++k)
        out.powers[k] = std::max(level - floor_level[k], 0.0);
    out.objective = sum_rate(gains.diagonal_only(), out.powers, config.noise_power_w);
    out.converged = true;
    return out;
}

namespace {

// Negated concave lower bound of the sum rate (in nats) around `anchor`,
// shifted to vanish at the anchor.
ConvexFunction sum_rate_minorizer(const GainMatrix& gains, const SystemConfig& config,
                                  const std::vector<double>& anchor)
{
    const std::size_t K = gains.size();
    std::vector<double> received(K);
    std::vector<double> interference(K);
    for (std::size_t k = 0; k < K; ++k) {
        interference[k] = interference_plus_noise(gains, anchor, config.noise_power_w, k);
        received[k] = interference[k] + gains(k, k) * anchor[k];
    }
    return [&gains, &config, received, interference, K](const Eigen::VectorXd& p, bool derivatives) {
        FunctionEval e;
        e.value = 0.0;
        if (derivatives) {
            e.gradient = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(K));
            e.hessian = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(K), static_cast<Eigen::Index>(K));
        }
        const std::span<const double> powers(p.data(), K);
        for (std::size_t k = 0; k < K; ++k) {
            const double inter = interference_plus_noise(gains, powers, config.noise_power_w, k);
            const double recv = inter + gains(k, k) * p[static_cast<Eigen::Index>(k)];
            e.value -= std::log(recv / received[k]) - (inter - interference[k]) / interference[k];
            if (!derivatives)
                continue;
            Eigen::VectorXd row(static_cast<Eigen::Index>(K));
            for (std::size_t l = 0; l < K; ++l) {
                const auto li = static_cast<Eigen::Index>(l);
                row[li] = gains(k, l);
                const double off = (l == k) ? 0.0 : gains(k, l) / interference[k];
                e.gradient[li] -= gains(k, l) / recv - off;
            }
            e.hessian += row * row.transpose() / (recv * recv);
        }
        return e;
    };
}

} // namespace

PowerAllocation sum_rate_max(const GainMatrix& gains, const SystemConfig& config, const SumRateOptions& options)
{
    check_gains(gains, config);
    const std::size_t K = gains.size();
    PowerAllocation out = uniform(config);
    out.converged = false;
    double value = sum_rate(gains, out.powers, config.noise_power_w);
    if (options.trace) {
        options.trace->clear();
        options.trace->push_back(value);
    }
    if (K == 1) {
        out.objective = value;
        out.converged = true;
        return out;
    }

    const PowerSimplex simplex{config.total_power_w, std::nullopt};
    for (int it = 1; it <= options.max_iterations; ++it) {
        const std::vector<std::function<FunctionEval(const Eigen::VectorXd&, bool)>> fns{
            sum_rate_minorizer(gains, config, out.powers)};
        const Eigen::VectorXd anchor = Eigen::Map<const Eigen::VectorXd>(out.powers.data(), static_cast<Eigen::Index>(K));
        BarrierOptions barrier;
        barrier.gap_tol = 1e-12;
        const MinimaxResult step = minimize_max_on_simplex(fns, simplex, interior_blend(anchor, simplex, 1e-3), barrier);

        std::vector<double> next(step.powers.data(), step.powers.data() + K);
        const double next_value = sum_rate(gains, next, config.noise_power_w);
        out.iterations = it;
        const double gain = next_value - value;
        if (gain > 0.0) {
            out.powers = std::move(next);
            value = next_value;
        }
        if (options.trace)
            options.trace->push_back(value);
        if (gain <= options.tol * value) {
            out.converged = true;
            break;
        }
    }
    out.objective = value;
    return out;
}

} // namespace lcpa
