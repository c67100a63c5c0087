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
#include "lcpa/mm_solver.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace {

using namespace lcpa;
using lcpa::testing::Instance;
using lcpa::testing::random_instance;
using lcpa::testing::random_simplex_point;
using lcpa::testing::relative_gap;

// Independent evaluation of the modeled error from the rate formula.
double phi_direct(const Instance& in, std::span<const double> p, std::size_t k)
{
    double interference = in.config.noise_power_w;
    for (std::size_t l = 0; l < p.size(); ++l)
        if (l != k)
            interference += in.gains(k, l) * p[l];
    const double r = std::log2(1.0 + in.gains(k, k) * p[k] / interference);
    const auto& t = in.tasks[k];
    const double v = in.config.bandwidth_hz * in.config.time_budget_s / t.bits_per_sample * r + t.initial_samples;
    return t.a * std::pow(v, -t.b);
}

// Minimum over p_0 = i * P / 10000 of max_k rho_k f_k(p).
template <class F>
double grid_min(double budget, std::size_t users, F&& weighted_max)
{
    EXPECT_EQ(users, 2u);
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 10000; ++i) {
        const double x = budget * i / 10000.0;
        const std::vector<double> p{x, budget - x};
        best = std::min(best, weighted_max(p));
    }
    return best;
}

TEST(Phi, ZeroPowerUsesInitialSamples)
{
    const auto spec = lcpa::testing::reference();
    const auto g = gains_from_channels(draw_channels(spec.config, 1));
    const std::vector<double> p{0.0, 0.0};
    // 7.3 * 300^-0.69 = 0.142596...
    EXPECT_NEAR(phi(g, spec.config, spec.tasks, p, 0), 7.3 * std::exp(-0.69 * std::log(300.0)), 1e-15);
    EXPECT_NEAR(phi(g, spec.config, spec.tasks, p, 0), 0.1425966, 1e-7);
}

TEST(Phi, ZeroExponentIgnoresPower)
{
    auto spec = lcpa::testing::reference();
    spec.tasks[0].b = 0.0;
    const auto g = gains_from_channels(draw_channels(spec.config, 2));
    for (double x : {0.0, 0.005, 0.02}) {
        const std::vector<double> p{x, 0.02 - x};
        EXPECT_EQ(phi(g, spec.config, spec.tasks, p, 0), spec.tasks[0].a);
    }
}

TEST(Phi, SingleUserStrictlyDecreasing)
{
    auto spec = lcpa::testing::reference();
    spec.config.path_loss_linear.resize(1);
    spec.tasks.resize(1);
    const auto g = gains_from_channels(draw_channels(spec.config, 3));
    double prev = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 50; ++i) {
        const std::vector<double> p{0.02 * i / 50.0};
        const double v = phi(g, spec.config, spec.tasks, p, 0);
        EXPECT_LT(v, prev);
        prev = v;
    }
}

TEST(Phi, MatchesDirectEvaluation)
{
    std::mt19937_64 gen(5);
    for (int trial = 0; trial < 50; ++trial) {
        const auto in = random_instance(3, trial);
        const auto p = random_simplex_point(3, in.config.total_power_w, gen);
        for (std::size_t k = 0; k < 3; ++k)
            EXPECT_LE(relative_gap(phi(in.gains, in.config, in.tasks, p, k), phi_direct(in, p, k)), 1e-12);
    }
}

TEST(Phi, EmptyBracketIsADomainError)
{
    auto spec = lcpa::testing::reference();
    spec.tasks[0].initial_samples = 0.0;
    const auto g = gains_from_channels(draw_channels(spec.config, 4));
    const std::vector<double> p{0.0, 0.02};
    EXPECT_THROW(phi(g, spec.config, spec.tasks, p, 0), DomainError);
}

TEST(LcpaObjective, IsWeightedMaximum)
{
    std::mt19937_64 gen(6);
    const auto in = random_instance(3, 77);
    const auto p = random_simplex_point(3, in.config.total_power_w, gen);
    double expected = 0.0;
    for (std::size_t k = 0; k < 3; ++k)
        expected = std::max(expected, in.tasks[k].rho * phi_direct(in, p, k));
    EXPECT_LE(relative_gap(lcpa_objective(in.gains, in.config, in.tasks, p), expected), 1e-12);
}

TEST(Surrogate, TangentAtAnchor)
{
    std::mt19937_64 gen(7);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t K = 2 + trial % 3;
        const auto in = random_instance(K, 100 + trial);
        const auto anchor = random_simplex_point(K, in.config.total_power_w, gen);
        const SurrogateState state(in.gains, in.config, anchor);
        for (std::size_t k = 0; k < K; ++k) {
            const double s = surrogate_phi(state, in.gains, in.config, in.tasks, anchor, k);
            EXPECT_LE(relative_gap(s, phi(in.gains, in.config, in.tasks, anchor, k)), 1e-12);
        }
    }
}

TEST(Surrogate, UpperBoundsPhi)
{
    std::mt19937_64 gen(8);
    int checked = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const auto in = random_instance(2, 2000 + trial);
        const auto anchor = random_simplex_point(2, in.config.total_power_w, gen);
        const auto p = random_simplex_point(2, in.config.total_power_w, gen);
        const SurrogateState state(in.gains, in.config, anchor);
        for (std::size_t k = 0; k < 2; ++k) {
            const double s = surrogate_phi(state, in.gains, in.config, in.tasks, p, k);
            const double f = phi(in.gains, in.config, in.tasks, p, k);
            EXPECT_GE(s, f * (1.0 - 1e-12));
            ++checked;
        }
    }
    EXPECT_EQ(checked, 2000);
}

TEST(Surrogate, GradientMatchesPhiAtAnchor)
{
    std::mt19937_64 gen(9);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t K = 2 + trial % 3;
        const auto in = random_instance(K, 300 + trial);
        const auto anchor = random_simplex_point(K, in.config.total_power_w, gen);
        const SurrogateState state(in.gains, in.config, anchor);
        for (std::size_t k = 0; k < K; ++k) {
            const auto grad = surrogate_phi_gradient(state, in.gains, in.config, in.tasks, anchor, k);
            for (std::size_t j = 0; j < K; ++j) {
                const double h = 1e-6 * in.config.total_power_w;
                auto up = anchor, down = anchor;
                up[j] += h;
                down[j] = std::max(0.0, down[j] - h);
                const double fd = (phi_direct(in, up, k) - phi_direct(in, down, k)) / (up[j] - down[j]);
                const double scale = std::max(std::abs(fd), 1e-3 * std::abs(grad[k]));
                EXPECT_LE(std::abs(grad[j] - fd), 1e-5 * scale) << "k=" << k << " j=" << j;
            }
        }
    }
}

TEST(Surrogate, GradientMatchesOwnFiniteDifferences)
{
    std::mt19937_64 gen(10);
    const auto in = random_instance(3, 55);
    const auto anchor = random_simplex_point(3, in.config.total_power_w, gen);
    // a point away from the anchor but inside the surrogate's domain
    auto p = random_simplex_point(3, in.config.total_power_w, gen);
    for (std::size_t j = 0; j < 3; ++j)
        p[j] = 0.7 * anchor[j] + 0.3 * p[j];
    const SurrogateState state(in.gains, in.config, anchor);
    for (std::size_t k = 0; k < 3; ++k) {
        const auto grad = surrogate_phi_gradient(state, in.gains, in.config, in.tasks, p, k);
        for (std::size_t j = 0; j < 3; ++j) {
            const double h = 1e-6 * p[j];
            auto up = p, down = p;
            up[j] += h;
            down[j] -= h;
            const double fd = (surrogate_phi(state, in.gains, in.config, in.tasks, up, k) -
                               surrogate_phi(state, in.gains, in.config, in.tasks, down, k)) / (2 * h);
            EXPECT_LE(std::abs(grad[j] - fd), 1e-5 * std::max(std::abs(fd), 1e-12));
        }
    }
}

TEST(Surrogate, MidpointConvex)
{
    std::mt19937_64 gen(11);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto in = random_instance(2, 5000 + trial);
        const double P = in.config.total_power_w;
        const auto anchor = random_simplex_point(2, P, gen);
        const auto p = random_simplex_point(2, P, gen);
        const auto q = random_simplex_point(2, P, gen);
        std::vector<double> mid(2);
        for (std::size_t j = 0; j < 2; ++j)
            mid[j] = 0.5 * (p[j] + q[j]);
        const SurrogateState state(in.gains, in.config, anchor);
        for (std::size_t k = 0; k < 2; ++k) {
            const double fp = surrogate_phi(state, in.gains, in.config, in.tasks, p, k);
            const double fq = surrogate_phi(state, in.gains, in.config, in.tasks, q, k);
            const double fm = surrogate_phi(state, in.gains, in.config, in.tasks, mid, k);
            if (std::isfinite(fp) && std::isfinite(fq))
                EXPECT_LE(fm, 0.5 * (fp + fq) + 1e-12);
        }
    }
}

TEST(Surrogate, EmptyBracketEvaluatesToInfinity)
{
    // A = 0 and a strong interferer far from the anchor: the tangent of the
    // interference log overshoots and the bracket goes negative.
    SystemConfig c;
    c.noise_power_w = 1.0;
    c.total_power_w = 100.0;
    c.bandwidth_hz = 1.0;
    c.time_budget_s = 1.0;
    c.path_loss_linear = {1.0, 1.0};
    GainMatrix g(2);
    g(0, 0) = 1.0; g(0, 1) = 1.0; g(1, 0) = 1.0; g(1, 1) = 1.0;
    const std::vector<LearningTask> tasks{{1.0, 0.5, 1.0, 1.0, 0.0}, {1.0, 0.5, 1.0, 1.0, 0.0}};
    const SurrogateState state(g, c, {100.0, 0.0});
    const std::vector<double> p{0.0, 100.0};
    EXPECT_EQ(surrogate_phi(state, g, c, tasks, p, 0), std::numeric_limits<double>::infinity());
}

TEST(Subproblem, SingleUserTakesWholeBudget)
{
    auto spec = lcpa::testing::reference();
    spec.config.path_loss_linear.resize(1);
    spec.tasks.resize(1);
    const auto g = gains_from_channels(draw_channels(spec.config, 12));
    const SurrogateState state(g, spec.config, {spec.config.total_power_w});
    const auto p = solve_subproblem(state, g, spec.config, spec.tasks);
    ASSERT_EQ(p.size(), 1u);
    EXPECT_EQ(p[0], spec.config.total_power_w);
}

TEST(Subproblem, SymmetricInstanceSplitsEvenly)
{
    SystemConfig c = lcpa::testing::reference().config;
    GainMatrix g(2);
    g(0, 0) = g(1, 1) = 4e-10;
    g(0, 1) = g(1, 0) = 3e-11;
    const LearningTask t{7.3, 0.69, 1.0, 6276.0, 300.0};
    const std::vector<LearningTask> tasks{t, t};
    const double P = c.total_power_w;
    const SurrogateState state(g, c, {0.3 * P, 0.7 * P});
    const auto p = solve_subproblem(state, g, c, tasks);
    // the anchor is asymmetric, so only the solver can restore the symmetry
    EXPECT_NEAR(p[0], P / 2, 1e-4 * P);
    EXPECT_NEAR(p[1], P / 2, 1e-4 * P);
    const auto mm = solve_lcpa(g, c, tasks);
    EXPECT_NEAR(mm.powers[0], P / 2, 1e-6 * P);
}

TEST(Subproblem, MatchesGridOnRandomInstances)
{
    std::mt19937_64 gen(13);
    for (int trial = 0; trial < 20; ++trial) {
        const auto in = random_instance(2, 7000 + trial);
        const double P = in.config.total_power_w;
        const auto anchor = random_simplex_point(2, P, gen);
        const SurrogateState state(in.gains, in.config, anchor);
        auto surrogate_max = [&](std::span<const double> p) {
            double m = 0.0;
            for (std::size_t k = 0; k < 2; ++k)
                m = std::max(m, in.tasks[k].rho * surrogate_phi(state, in.gains, in.config, in.tasks, p, k));
            return m;
        };
        const auto p = solve_subproblem(state, in.gains, in.config, in.tasks);
        EXPECT_NEAR(lcpa::testing::total(p), P, 1e-9 * P);
        const double value = surrogate_max(p);
        const double grid = grid_min(P, 2, surrogate_max);
        EXPECT_LE(std::abs(value - grid), 1e-3);
        EXPECT_LE(value, grid * (1.0 + 1e-6)) << "trial " << trial;
    }
}

TEST(Subproblem, NeverWorseThanAnchor)
{
    std::mt19937_64 gen(14);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t K = 2 + trial % 4;
        const auto in = random_instance(K, 8000 + trial);
        const auto anchor = random_simplex_point(K, in.config.total_power_w, gen);
        const SurrogateState state(in.gains, in.config, anchor);
        auto weighted = [&](std::span<const double> p) {
            double m = 0.0;
            for (std::size_t k = 0; k < K; ++k)
                m = std::max(m, in.tasks[k].rho * surrogate_phi(state, in.gains, in.config, in.tasks, p, k));
            return m;
        };
        const auto p = solve_subproblem(state, in.gains, in.config, in.tasks);
        EXPECT_LE(weighted(p), weighted(anchor));
        for (double x : p)
            EXPECT_GE(x, 0.0);
    }
}

TEST(Subproblem, HonoursPerUserCap)
{
    const auto in = random_instance(3, 99);
    const double P = in.config.total_power_w;
    SubproblemOptions opts;
    opts.per_user_cap = 0.4 * P;
    MmOptions mm;
    mm.subproblem = opts;
    const auto alloc = solve_lcpa(in.gains, in.config, in.tasks, mm);
    for (double x : alloc.powers)
        EXPECT_LE(x, 0.4 * P * (1.0 + 1e-9));
    EXPECT_NEAR(lcpa::testing::total(alloc.powers), P, 1e-9 * P);
}

TEST(SolveLcpa, SingleUserOneIteration)
{
    auto spec = lcpa::testing::reference();
    spec.config.path_loss_linear.resize(1);
    spec.tasks.resize(1);
    const auto g = gains_from_channels(draw_channels(spec.config, 15));
    const auto alloc = solve_lcpa(g, spec.config, spec.tasks);
    EXPECT_EQ(alloc.powers[0], spec.config.total_power_w);
    EXPECT_LE(alloc.iterations, 1);
    EXPECT_TRUE(alloc.converged);
}

TEST(SolveLcpa, ObjectiveSequenceNonincreasing)
{
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t K = 2 + trial % 3;
        const auto in = random_instance(K, 9000 + trial);
        std::vector<double> trace;
        MmOptions opts;
        opts.trace = &trace;
        const auto alloc = solve_lcpa(in.gains, in.config, in.tasks, opts);
        ASSERT_FALSE(trace.empty());
        const std::vector<double> start(K, in.config.total_power_w / static_cast<double>(K));
        EXPECT_DOUBLE_EQ(trace.front(), lcpa_objective(in.gains, in.config, in.tasks, start));
        for (std::size_t i = 1; i < trace.size(); ++i)
            EXPECT_LE(trace[i], trace[i - 1] + 1e-9);
        EXPECT_DOUBLE_EQ(alloc.objective, lcpa_objective(in.gains, in.config, in.tasks, alloc.powers));
    }
}

TEST(SolveLcpa, FeasibleAndNearGridOptimum)
{
    for (int trial = 0; trial < 20; ++trial) {
        const auto in = random_instance(2, 11000 + trial);
        const double P = in.config.total_power_w;
        const auto alloc = solve_lcpa(in.gains, in.config, in.tasks);
        EXPECT_NEAR(lcpa::testing::total(alloc.powers), P, 1e-9 * P);
        for (double x : alloc.powers)
            EXPECT_GE(x, 0.0);
        const double grid = grid_min(P, 2, [&](std::span<const double> p) {
            double m = 0.0;
            for (std::size_t k = 0; k < 2; ++k)
                m = std::max(m, in.tasks[k].rho * phi_direct(in, p, k));
            return m;
        });
        EXPECT_LE(alloc.objective, grid + 1e-3);
        EXPECT_LE(std::abs(alloc.objective - grid), 1e-3);
    }
}

TEST(SolveLcpa, NoWorseThanUniformOrOtherVertices)
{
    for (int trial = 0; trial < 20; ++trial) {
        const auto in = random_instance(4, 12000 + trial);
        const double P = in.config.total_power_w;
        const auto alloc = solve_lcpa(in.gains, in.config, in.tasks);
        const std::vector<double> flat(4, P / 4);
        EXPECT_LE(alloc.objective, lcpa_objective(in.gains, in.config, in.tasks, flat) + 1e-12);
    }
}

} // namespace
