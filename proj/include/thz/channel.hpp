// SPDX-License-Identifier: Apache-2.0
//
// thz-cnoma: cooperative NOMA link-level simulator for indoor THz-MISO downlinks
// Copyright (C) 2026 The thz-cnoma authors
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

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "config.hpp"

namespace thz
{

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// ULA response a(theta), unit l2 norm.
struct SteeringVector
{
    ComplexVector entries;
};

/// BS -> user LoS channel h; all entries share one magnitude.
struct ChannelVector
{
    ComplexVector entries;
};

/// x^H y
inline Complex inner_product(const ComplexVector &x, const ComplexVector &y)
{
    if (x.size() != y.size())
        throw std::invalid_argument("inner_product: dimension mismatch");
    Complex acc{0.0, 0.0};
    for (std::size_t n = 0; n < x.size(); ++n)
        acc += std::conj(x[n]) * y[n];
    return acc;
}

inline double norm2(const ComplexVector &x)
{
    double acc = 0.0;
    for (const auto &v : x)
        acc += std::norm(v);
    return std::sqrt(acc);
}

/// Spreading times molecular absorption loss, (4 pi f d / c)^2 e^{k_abs d}.
inline double path_loss(double frequency_hz, double distance_m, double absorption_per_m)
{
    if (!(distance_m > 0.0))
        throw std::domain_error("path_loss: distance must be > 0");
    if (!(frequency_hz > 0.0))
        throw std::domain_error("path_loss: frequency must be > 0");
    if (!(absorption_per_m >= 0.0))
        throw std::domain_error("path_loss: absorption coefficient must be >= 0");
    const double spread = 4.0 * std::numbers::pi * frequency_hz * distance_m / speed_of_light;
    return spread * spread * std::exp(absorption_per_m * distance_m);
}

inline SteeringVector steering_vector(int num_antennas, double theta_rad)
{
    if (num_antennas < 1)
        throw std::invalid_argument("steering_vector: need at least one antenna");
    const double scale = 1.0 / std::sqrt(static_cast<double>(num_antennas));
    const double phase_step = std::numbers::pi * std::sin(theta_rad);
    SteeringVector a;
    a.entries.reserve(static_cast<std::size_t>(num_antennas));
    for (int n = 0; n < num_antennas; ++n)
        a.entries.push_back(std::polar(scale, phase_step * n));
    return a;
}

/// h = sqrt(N) sqrt(1/PL) Omega a(theta) with Omega = sqrt(G_bs G_user).
/// Distances below `min_link_distance_m` are clamped.
inline ChannelVector bs_user_channel(const SimConfig &config, double distance_m, double theta_rad)
{
    if (!(distance_m > 0.0))
        throw std::domain_error("bs_user_channel: distance must be > 0");
    const double d = std::max(distance_m, config.min_link_distance_m);
    const double pl = path_loss(config.carrier_frequency_hz, d, config.absorption_coeff_per_m);
    const double omega = std::sqrt(config.bs_gain_linear * config.user_gain_linear);
    const double amplitude = std::sqrt(static_cast<double>(config.num_antennas)) * std::sqrt(1.0 / pl) * omega;

    ChannelVector h{steering_vector(config.num_antennas, theta_rad).entries};
    for (auto &v : h.entries)
        v *= amplitude;
    return h;
}

/// Scalar user -> user channel, user gain at both ends. Only |h|^2 is
/// physically meaningful here; the phase is fixed at zero.
inline Complex side_link_gain(const SimConfig &config, double distance_m)
{
    if (!(distance_m > 0.0))
        throw std::domain_error("side_link_gain: distance must be > 0");
    const double d = std::max(distance_m, config.min_link_distance_m);
    const double pl = path_loss(config.carrier_frequency_hz, d, config.absorption_coeff_per_m);
    return {config.user_gain_linear * std::sqrt(1.0 / pl), 0.0};
}

/// Thermal noise 10 log10(W) + NF - 174 dBm, returned in watts.
inline double noise_power(double bandwidth_hz, double noise_figure_db)
{
    if (!(bandwidth_hz > 0.0))
        throw std::domain_error("noise_power: bandwidth must be > 0");
    const double dbm = 10.0 * std::log10(bandwidth_hz) + noise_figure_db - 174.0;
    return std::pow(10.0, (dbm - 30.0) / 10.0);
}

} // namespace thz
