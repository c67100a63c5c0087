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

#include "lcpa/error_model.hpp"

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace lcpa {

/// Link-level parameters. All quantities are linear SI units (Hz, s, W);
/// dB/dBm conversion happens in the config parser only.
struct SystemConfig {
    double bandwidth_hz = 180e3;
    double time_budget_s = 5.0;
    double noise_power_w = 0.0;
    double total_power_w = 0.0;
    std::size_t num_antennas = 1;
    /// Large-scale attenuation per user; its size fixes the user count K.
    std::vector<double> path_loss_linear;

    std::size_t num_users() const { return path_loss_linear.size(); }

    void validate() const;
};

using ComplexVector = std::vector<std::complex<double>>;

/// One small-scale fading draw: h_k for every user, each of length N.
struct ChannelRealization {
    std::vector<ComplexVector> vectors;

    std::size_t num_users() const { return vectors.size(); }
};

/// Composite gains seen after MRC combining.
///
/// (k, k) is ||h_k||^2 and (k, l) is |h_k^H h_l|^2 / ||h_k||^2, i.e. the
/// power user l leaks into user k's combiner output.
class GainMatrix {
public:
    GainMatrix() = default;
    explicit GainMatrix(std::size_t num_users);

    std::size_t size() const { return n_; }
    double operator()(std::size_t k, std::size_t l) const { return data_[k * n_ + l]; }
    double& operator()(std::size_t k, std::size_t l) { return data_[k * n_ + l]; }

    /// Interference-free copy: off-diagonal entries set to zero.
    GainMatrix diagonal_only() const;

    /// Diagonal entries as a vector.
    std::vector<double> diagonal() const;

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

/// i.i.d. CN(0, path_loss_k I_N) channels, reproducible from `seed`.
ChannelRealization draw_channels(const SystemConfig& config, std::uint64_t seed);

/// Throws DegenerateChannelError if any h_k is the zero vector.
GainMatrix gains_from_channels(const ChannelRealization& channels);

/// Interference-plus-noise seen by user k: sum_{l != k} G(k,l) p_l + noise.
double interference_plus_noise(const GainMatrix& gains, std::span<const double> powers,
                               double noise_power_w, std::size_t k);

/// Achievable rate of user k in bit/s/Hz.
double rate(const GainMatrix& gains, std::span<const double> powers, double noise_power_w,
            std::size_t k);

/// Samples at the edge after the upload: B*T*R/D + A, floored before adding
/// A when `continuous` is false.
double sample_count(const SystemConfig& config, double rate_k, const LearningTask& task,
                    bool continuous = true);

} // namespace lcpa
