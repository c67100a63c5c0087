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

#include "lcpa/barrier_solver.hpp"

#include "lcpa/errors.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace lcpa {

void validate_simplex(const PowerSimplex& simplex, std::size_t num_users)
{
    if (num_users == 0)
        throw InvalidArgument("power simplex: no users");
    if (!(simplex.budget > 0.0) || !std::isfinite(simplex.budget))
        throw InvalidArgument("power simplex: budget must be positive");
    if (simplex.per_user_cap) {
        const double cap = *simplex.per_user_cap;
        if (!(cap * static_cast<double>(num_users) > simplex.budget))
            throw InvalidArgument("power simplex: per-user cap leaves no interior (cap * K <= budget)");
    }
}

Eigen::VectorXd interior_blend(const Eigen::VectorXd& p, const PowerSimplex& simplex, double weight)
{
    const double uniform = simplex.budget / static_cast<double>(p.size());
    return (1.0 - weight) * p + Eigen::VectorXd::Constant(p.size(), weight * uniform);
}

namespace {

// Barrier problem in normalized variables x = p / budget (so sum(x) = 1) and
// values scaled by 1 / value_scale. z = (x, t).
class EpigraphBarrier {
public:
    EpigraphBarrier(const std::vector<ConvexFunction>& fns, std::size_t num_users, const PowerSimplex& simplex,
                    double value_scale)
        : fns_(fns), budget_(simplex.budget), scale_(value_scale), n_users_(num_users),
          cap_(simplex.per_user_cap && *simplex.per_user_cap < simplex.budget
                   ? std::optional<double>(*simplex.per_user_cap / simplex.budget)
                   : std::nullopt)
    {
    }

    // Scaled function values at x; +inf outside the domain.
    Eigen::VectorXd values(const Eigen::VectorXd& x) const
    {
        Eigen::VectorXd out(fns_.size());
        const Eigen::VectorXd p = budget_ * x;
        for (std::size_t k = 0; k < fns_.size(); ++k) {
            const double v = fns_[k](p, false).value;
            out[static_cast<Eigen::Index>(k)] = std::isfinite(v) ? v / scale_ : std::numeric_limits<double>::infinity();
        }
        return out;
    }

    bool in_domain(const Eigen::VectorXd& z) const
    {
        const auto n = static_cast<Eigen::Index>(n_users_);
        const double t = z[n];
        for (Eigen::Index j = 0; j < n; ++j) {
            if (!(z[j] > 0.0))
                return false;
            if (cap_ && !(z[j] < *cap_))
                return false;
        }
        const Eigen::VectorXd f = values(z.head(n));
        for (Eigen::Index k = 0; k < f.size(); ++k)
            if (!(t - f[k] > 0.0))
                return false;
        return true;
    }

    double objective(const Eigen::VectorXd& z, double tau) const
    {
        const auto n = static_cast<Eigen::Index>(n_users_);
        const double t = z[n];
        double acc = tau * t;
        const Eigen::VectorXd f = values(z.head(n));
        for (Eigen::Index k = 0; k < f.size(); ++k)
            acc -= std::log(t - f[k]);
        for (Eigen::Index j = 0; j < n; ++j) {
            acc -= std::log(z[j]);
            if (cap_)
                acc -= std::log(*cap_ - z[j]);
        }
        return acc;
    }

    void derivatives(const Eigen::VectorXd& z, double tau, Eigen::VectorXd& grad, Eigen::MatrixXd& hess) const
    {
        const auto n = static_cast<Eigen::Index>(n_users_);
        const double t = z[n];
        const Eigen::VectorXd p = budget_ * z.head(n);
        grad = Eigen::VectorXd::Zero(n + 1);
        hess = Eigen::MatrixXd::Zero(n + 1, n + 1);
        grad[n] = tau;

        for (const auto& fn : fns_) {
            const FunctionEval e = fn(p, true);
            const double slack = t - e.value / scale_;
            // chain rule for x = p / budget and the value scaling
            const Eigen::VectorXd g = e.gradient * (budget_ / scale_);
            const Eigen::MatrixXd h = e.hessian * (budget_ * budget_ / scale_);
            Eigen::VectorXd a(n + 1);
            a.head(n) = g;
            a[n] = -1.0;
            grad += a / slack;
            hess += a * a.transpose() / (slack * slack);
            hess.topLeftCorner(n, n) += h / slack;
        }
        for (Eigen::Index j = 0; j < n; ++j) {
            grad[j] -= 1.0 / z[j];
            hess(j, j) += 1.0 / (z[j] * z[j]);
            if (cap_) {
                const double r = *cap_ - z[j];
                grad[j] += 1.0 / r;
                hess(j, j) += 1.0 / (r * r);
            }
        }
    }

private:
    const std::vector<ConvexFunction>& fns_;
    double budget_;
    double scale_;
    std::size_t n_users_;
    std::optional<double> cap_;
};

} // namespace

MinimaxResult minimize_max_on_simplex(const std::vector<ConvexFunction>& functions,
                                      const PowerSimplex& simplex, const Eigen::VectorXd& start,
                                      const BarrierOptions& options)
{
    const auto n = static_cast<Eigen::Index>(start.size());
    validate_simplex(simplex, static_cast<std::size_t>(n));
    if (functions.empty())
        throw InvalidArgument("minimize_max_on_simplex: no functions");
    if (!(options.gap_tol > 0.0) || !(options.value_scale > 0.0) || !(options.barrier_growth > 1.0))
        throw InvalidArgument("minimize_max_on_simplex: invalid options");

    const EpigraphBarrier barrier(functions, static_cast<std::size_t>(n), simplex, options.value_scale);

    Eigen::VectorXd z(n + 1);
    z.head(n) = start / simplex.budget;
    z.head(n) /= z.head(n).sum();
    {
        const Eigen::VectorXd f = barrier.values(z.head(n));
        const double fmax = f.maxCoeff();
        if (!std::isfinite(fmax))
            throw InvalidArgument("minimize_max_on_simplex: start lies outside a function's domain");
        z[n] = fmax + std::max(1.0, std::abs(fmax));
    }
    if (!barrier.in_domain(z))
        throw InvalidArgument("minimize_max_on_simplex: start is not strictly feasible");

    const auto num_constraints = static_cast<double>(functions.size()) +
                                 static_cast<double>(n) * (simplex.per_user_cap ? 2.0 : 1.0);
    const double gap_tol = options.gap_tol / options.value_scale;
    double tau = num_constraints;  // initial gap bound of ~1 in scaled units
    int steps = 0;

    // Null-space basis of sum(x) = 1: columns e_j - e_{n-1} for j < n-1, then e_t.
    Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(n + 1, n);
    for (Eigen::Index j = 0; j + 1 < n; ++j) {
        basis(j, j) = 1.0;
        basis(n - 1, j) = -1.0;
    }
    basis(n, n - 1) = 1.0;

    Eigen::VectorXd grad;
    Eigen::MatrixXd hess;
    constexpr int kMaxCenteringSteps = 200;

    for (;;) {
        // centering; a well-conditioned restart needs a few dozen steps, so a
        // long crawl means the direction is dominated by rounding
        for (int inner = 0; inner < kMaxCenteringSteps; ++inner) {
            if (steps >= options.max_newton_steps)
                throw ConvergenceError("barrier solver: Newton step budget exhausted (gap bound " +
                                       std::to_string(num_constraints / tau * options.value_scale) + ")");
            barrier.derivatives(z, tau, grad, hess);
            const Eigen::VectorXd g = basis.transpose() * grad;
            const Eigen::MatrixXd h = basis.transpose() * hess * basis;
            // Jacobi scaling tames the 1/slack^2 entries near the kink
            const Eigen::VectorXd d = h.diagonal().cwiseMax(1e-300).cwiseSqrt().cwiseInverse();
            const Eigen::MatrixXd scaled = d.asDiagonal() * h * d.asDiagonal();
            const Eigen::VectorXd w = scaled.ldlt().solve(-d.cwiseProduct(g));
            const Eigen::VectorXd dy = d.cwiseProduct(w);
            const Eigen::VectorXd dz = basis * dy;
            const double decrement2 = -g.dot(dy);
            ++steps;
            const double phi0 = barrier.objective(z, tau);
            // below this the Armijo test only sees rounding noise in phi0
            const double noise = 1e-14 * std::max(1.0, std::abs(phi0));
            if (!std::isfinite(decrement2) || decrement2 / 2.0 <= std::max(1e-10, noise))
                break;

            double step = 1.0;
            double phi1 = phi0;
            while (step > 1e-12) {
                const Eigen::VectorXd cand = z + step * dz;
                if (barrier.in_domain(cand)) {
                    const double value = barrier.objective(cand, tau);
                    if (value <= phi0 - 0.25 * step * decrement2) {
                        z = cand;
                        phi1 = value;
                        break;
                    }
                }
                step *= 0.5;
            }
            // no measurable progress left at this tau
            if (!(phi0 - phi1 > noise))
                break;
        }
        if (num_constraints / tau <= gap_tol)
            break;
        tau *= options.barrier_growth;
    }

    MinimaxResult out;
    out.powers = simplex.budget * z.head(n);
    const Eigen::VectorXd f = barrier.values(z.head(n));
    out.objective = f.maxCoeff() * options.value_scale;
    out.gap_bound = num_constraints / tau * options.value_scale;
    out.newton_steps = steps;
    return out;
}

} // namespace lcpa
