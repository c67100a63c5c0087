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

#include "lcpa/channel.hpp"

#include "lcpa/errors.hpp"
#include "lcpa/rng.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace lcpa {

void SystemConfig::validate() const
{
    auto positive = [](double x) { return std::isfinite(x) && x > 0.0; };
    if (!positive(bandwidth_hz) || !positive(time_budget_s) || !positive(noise_power_w) ||
        !positive(total_power_w))
        throw InvalidArgument("system config: bandwidth, time budget, noise and power must be positive");
    if (num_antennas < 1)
        throw InvalidArgument("system config: need at least one antenna");
    if (path_loss_linear.empty())
        throw InvalidArgument("system config: need at least one user");
    for (double pl : path_loss_linear)
        if (!std::isfinite(pl) || pl < 0.0)
            throw InvalidArgument("system config: path loss must be finite and nonnegative");
}

GainMatrix::GainMatrix(std::size_t num_users) : n_(num_users), data_(num_users * num_users, 0.0) {}

GainMatrix GainMatrix::diagonal_only() const
{
    GainMatrix out(n_);
    for (std::size_t k = 0; k < n_; ++k)
        out(k, k) = (*this)(k, k);
    return out;
}

std::vector<double> GainMatrix::diagonal() const
{
    std::vector<double> d(n_);
    for (std::size_t k = 0; k < n_; ++k)
        d[k] = (*this)(k, k);
    return d;
}

ChannelRealization draw_channels(const SystemConfig& config, std::uint64_t seed)
{
    GaussianSource source(seed);
    ChannelRealization ch;
    ch.vectors.resize(config.num_users());
    for (std::size_t k = 0; k < config.num_users(); ++k) {
        auto& h = ch.vectors[k];
        h.resize(config.num_antennas);
        for (auto& entry : h)
            entry = source.complex_normal(config.path_loss_linear[k]);
    }
    return ch;
}

GainMatrix gains_from_channels(const ChannelRealization& channels)
{
    const std::size_t K = channels.num_users();
    std::vector<double> norm2(K, 0.0);
    for (std::size_t k = 0; k < K; ++k) {
        for (const auto& x : channels.vectors[k])
            norm2[k] += std::norm(x);
        if (!(norm2[k] > 0.0))
            throw DegenerateChannelError("channel of user " + std::to_string(k) + " is all zero");
    }

    GainMatrix g(K);
    for (std::size_t k = 0; k < K; ++k) {
        g(k, k) = norm2[k];
        for (std::size_t l = k + 1; l < K; ++l) {
            const auto& hk = channels.vectors[k];
            const auto& hl = channels.vectors[l];
            if (hk.size() != hl.size())
                throw InvalidArgument("channel vectors differ in length");
            std::complex<double> inner{0.0, 0.0};
            for (std::size_t n = 0; n < hk.size(); ++n)
                inner += std::conj(hk[n]) * hl[n];
            const double cross = std::norm(inner);
            g(k, l) = cross / norm2[k];
            g(l, k) = cross / norm2[l];
        }
    }
    return g;
}

double interference_plus_noise(const GainMatrix& gains, std::span<const double> powers,
                               double noise_power_w, std::size_t k)
{
    double acc = noise_power_w;
    for (std::size_t l = 0; l < gains.size(); ++l)
        if (l != k)
            acc += gains(k, l) * powers[l];
    return acc;
}

double rate(const GainMatrix& gains, std::span<const double> powers, double noise_power_w,
            std::size_t k)
{
    const double sinr = gains(k, k) * powers[k] / interference_plus_noise(gains, powers, noise_power_w, k);
    return std::log1p(sinr) / std::numbers::ln2;
}

double sample_count(const SystemConfig& config, double rate_k, const LearningTask& task,
                    bool continuous)
{
    const double uploaded = config.bandwidth_hz * config.time_budget_s * rate_k / task.bits_per_sample;
    return (continuous ? uploaded : std::floor(uploaded)) + task.initial_samples;
}

} // namespace lcpa
