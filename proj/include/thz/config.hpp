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

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

namespace thz
{

inline constexpr double speed_of_light = 299792458.0; // m/s

/// Raised for any invalid configuration value. `key()` names the offending field.
class ConfigError : public std::invalid_argument
{
public:
    ConfigError(std::string key, const std::string &message)
        : std::invalid_argument(key.empty() ? message : key + ": " + message), key_(std::move(key))
    {
    }

    const std::string &key() const noexcept { return key_; }

private:
    std::string key_;
};

struct CircuitPowers
{
    double baseband_w = 0.2;          // P_B
    double rf_chain_w = 0.16;         // P_RF
    double power_amplifier_w = 0.02;  // P_A, per antenna
    double phase_shifter_w = 0.04;    // P_P, per antenna

    bool operator==(const CircuitPowers &) const = default;
};

/// All physical, hardware and Monte Carlo parameters of one experiment.
///
/// Every quantity is SI-linear (Hz, m, W, linear gain). dB values only exist
/// at the JSON/CLI boundary (see io.hpp). Defaults reproduce the indoor THz
/// setup: 3.42 THz window, 137 GHz bandwidth, 4-element ULA, 21-beam codebook
/// over the [-pi/6, pi/2] sector and a 7 m coverage radius.
struct SimConfig
{
    double carrier_frequency_hz = 3.42e12;
    double bandwidth_hz = 137e9;
    double absorption_coeff_per_m = 0.28;

    int num_antennas = 4;
    int num_beams = 20; // B; the codebook holds B + 1 beams
    double sector_start_rad = -std::numbers::pi / 6.0;
    double sector_end_rad = std::numbers::pi / 2.0;

    double bs_gain_linear = 100.0;                     // 20 dBi
    double user_gain_linear = 1.9952623149688795;      // 3 dBi
    double si_channel_gain_linear = 1e-11;             // |h_ii|^2, -110 dB
    double si_kappa = 0.4;

    double bs_power_w = 5.0; // p_k, per channel use
    double pa_inefficiency = 1.0 / 0.38;
    CircuitPowers circuit;
    int num_rf_chains = 1;

    double min_rate_bps = 5e9;
    double noise_figure_db = 10.0;
    double edge_noise_figure_db = 10.0;

    double coverage_radius_m = 7.0;
    double center_fraction = 4.0 / 7.0;
    double cooperator_band_fraction = 0.2;
    double min_link_distance_m = 0.1;
    int num_pairs = 5;

    // Benchmark band used by the `band` sweep axis (no molecular absorption).
    double mmwave_frequency_hz = 28e9;
    double mmwave_bandwidth_hz = 2e9;

    int num_realizations = 1000;
    std::uint64_t master_seed = 1;

    double center_radius_m() const { return center_fraction * coverage_radius_m; }
    double sector_width_rad() const { return sector_end_rad - sector_start_rad; }

    bool operator==(const SimConfig &) const = default;
};

namespace detail
{
inline void require(bool ok, const char *key, const char *message)
{
    if (!ok)
        throw ConfigError(key, message);
}

inline bool positive(double x) { return std::isfinite(x) && x > 0.0; }
inline bool nonnegative(double x) { return std::isfinite(x) && x >= 0.0; }
} // namespace detail

/// Throws ConfigError naming the first field that violates its invariant.
inline void validate(const SimConfig &c)
{
    using detail::nonnegative;
    using detail::positive;
    using detail::require;

    require(positive(c.carrier_frequency_hz), "carrier_frequency_hz", "must be > 0");
    require(positive(c.bandwidth_hz), "bandwidth_hz", "must be > 0");
    require(nonnegative(c.absorption_coeff_per_m), "absorption_coeff_per_m", "must be >= 0");
    require(c.num_antennas >= 1, "num_antennas", "must be >= 1");
    require(c.num_beams >= 1, "num_beams", "must be >= 1");
    require(std::isfinite(c.sector_start_rad) && std::isfinite(c.sector_end_rad), "sector_start_rad",
            "sector bounds must be finite");
    require(c.sector_end_rad > c.sector_start_rad, "sector_end_rad", "must exceed sector_start_rad");
    require(positive(c.bs_gain_linear), "bs_gain_linear", "must be > 0");
    require(positive(c.user_gain_linear), "user_gain_linear", "must be > 0");
    require(nonnegative(c.si_channel_gain_linear), "si_channel_gain_linear", "must be >= 0");
    require(std::isfinite(c.si_kappa) && c.si_kappa >= 0.0 && c.si_kappa <= 1.0, "si_kappa",
            "must lie in [0, 1]");
    require(positive(c.bs_power_w), "bs_power_w", "must be > 0");
    require(std::isfinite(c.pa_inefficiency) && c.pa_inefficiency >= 1.0, "pa_inefficiency",
            "must be >= 1 (reciprocal of amplifier efficiency)");
    require(nonnegative(c.circuit.baseband_w), "circuit.baseband_w", "must be >= 0");
    require(nonnegative(c.circuit.rf_chain_w), "circuit.rf_chain_w", "must be >= 0");
    require(nonnegative(c.circuit.power_amplifier_w), "circuit.power_amplifier_w", "must be >= 0");
    require(nonnegative(c.circuit.phase_shifter_w), "circuit.phase_shifter_w", "must be >= 0");
    require(c.num_rf_chains >= 1, "num_rf_chains", "must be >= 1");
    require(nonnegative(c.min_rate_bps), "min_rate_bps", "must be >= 0");
    require(std::isfinite(c.noise_figure_db), "noise_figure_db", "must be finite");
    require(std::isfinite(c.edge_noise_figure_db), "edge_noise_figure_db", "must be finite");
    require(positive(c.coverage_radius_m), "coverage_radius_m", "must be > 0");
    require(std::isfinite(c.center_fraction) && c.center_fraction > 0.0 && c.center_fraction < 1.0,
            "center_fraction", "must lie in (0, 1)");
    require(std::isfinite(c.cooperator_band_fraction) && c.cooperator_band_fraction > 0.0 &&
                c.cooperator_band_fraction <= 1.0,
            "cooperator_band_fraction", "must lie in (0, 1]");
    require(positive(c.min_link_distance_m), "min_link_distance_m", "must be > 0");
    require(c.num_pairs >= 1, "num_pairs", "must be >= 1");
    require(positive(c.mmwave_frequency_hz), "mmwave_frequency_hz", "must be > 0");
    require(positive(c.mmwave_bandwidth_hz), "mmwave_bandwidth_hz", "must be > 0");
    require(c.num_realizations >= 1, "num_realizations", "must be >= 1");
}

/// Same scenario moved to the mmWave benchmark band.
inline SimConfig mmwave_variant(SimConfig c)
{
    c.carrier_frequency_hz = c.mmwave_frequency_hz;
    c.bandwidth_hz = c.mmwave_bandwidth_hz;
    c.absorption_coeff_per_m = 0.0;
    return c;
}

} // namespace thz
