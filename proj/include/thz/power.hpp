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
#include <cstddef>
#include <span>
#include <stdexcept>

#include "config.hpp"

namespace thz
{

/// Linear link quantities of one cooperative NOMA pair: BS -> cooperating
/// centre user i, side link i -> edge user j, and i's residual self-interference.
struct PairLink
{
    double effective_bs_gain = 0.0; // |h_i^H w|^2
    double side_gain = 0.0;         // |h_ij|^2
    double si_gain = 0.0;           // |h_ii|^2
    double noise_center_w = 0.0;    // sigma_i^2
    double noise_edge_w = 0.0;      // sigma_j^2
};

struct PairAllocation
{
    double bs_power_w = 0.0;   // p_k
    double coop_power_w = 0.0; // p_ku
    double beta_center = 0.0;
    double beta_edge = 0.0;
    bool feasible = false;
};

struct NomaFractions
{
    double beta_center = 0.0;
    double beta_edge = 0.0;
    bool feasible = false;
};

struct LinkSinrs
{
    double edge_at_center = 0.0; // user i decoding user j's message (first SIC stage)
    double center_own = 0.0;     // user i decoding its own message after SIC
    double edge = 0.0;           // SNR of the relayed message at user j
};

struct PairRates
{
    double center_bps = 0.0;
    double edge_bps = 0.0;
    double edge_at_center_bps = 0.0;
};

/// SINR needed for `min_rate_bps` on a `bandwidth_hz` channel: 2^{R/W} - 1.
inline double min_sinr(double min_rate_bps, double bandwidth_hz)
{
    if (!(bandwidth_hz > 0.0))
        throw std::domain_error("min_sinr: bandwidth must be > 0");
    return std::exp2(min_rate_bps / bandwidth_hz) - 1.0;
}

/// Relay power that puts the edge user's SNR exactly at `gamma_min`.
inline double cooperation_power(double gamma_min, double noise_edge_w, double side_gain)
{
    if (!(side_gain > 0.0))
        throw std::domain_error("cooperation_power: side-link gain must be > 0");
    return gamma_min * noise_edge_w / side_gain;
}

/// BS power fractions that equalise the SIC-stage SINR at the cooperator with
/// the edge user's relayed SNR. A pair is feasible only when beta_center lands
/// in [0, 1]; a degenerate (zero or non-finite) denominator is infeasible.
inline NomaFractions noma_fractions(double bs_power_w, double coop_power_w, const PairLink &link, double kappa)
{
    if (!(bs_power_w > 0.0))
        throw std::domain_error("noma_fractions: BS power must be > 0");

    const double a = link.effective_bs_gain;
    const double g = link.side_gain;
    const double p = bs_power_w;
    const double pu = coop_power_w;

    const double numerator = pu * pu * kappa * link.si_gain * g + link.noise_center_w * pu * g -
                             p * a * link.noise_edge_w;
    const double denominator = -p * a * link.noise_edge_w - p * pu * g * a;

    NomaFractions out;
    if (denominator == 0.0 || !std::isfinite(denominator) || !std::isfinite(numerator))
        return out;
    out.beta_center = numerator / denominator;
    out.beta_edge = 1.0 - out.beta_center;
    out.feasible = out.beta_center >= 0.0 && out.beta_center <= 1.0;
    return out;
}

inline LinkSinrs link_sinrs(const PairAllocation &alloc, const PairLink &link, double kappa)
{
    const double received = alloc.bs_power_w * link.effective_bs_gain;
    const double interference = alloc.coop_power_w * kappa * link.si_gain + link.noise_center_w;

    LinkSinrs s;
    s.edge_at_center = alloc.beta_edge * received / (alloc.beta_center * received + interference);
    s.center_own = alloc.beta_center * received / interference;
    s.edge = alloc.coop_power_w * link.side_gain / link.noise_edge_w;
    return s;
}

/// Shannon rates; the edge user is limited by the weaker of its two hops.
inline PairRates pair_rates(const LinkSinrs &sinrs, double bandwidth_hz)
{
    auto shannon = [bandwidth_hz](double sinr) { return bandwidth_hz * std::log2(1.0 + sinr); };
    PairRates r;
    r.center_bps = shannon(sinrs.center_own);
    r.edge_at_center_bps = shannon(sinrs.edge_at_center);
    r.edge_bps = std::min(r.edge_at_center_bps, shannon(sinrs.edge));
    return r;
}

/// Static BS hardware consumption P_B + N_RF P_RF + N_T (P_A + P_P).
inline double circuit_power(const SimConfig &config)
{
    const auto &c = config.circuit;
    const double n_t = config.num_antennas;
    return c.baseband_w + config.num_rf_chains * c.rf_chain_w + n_t * c.power_amplifier_w + n_t * c.phase_shifter_w;
}

/// Power the network draws for the given pairs: amplifier-scaled transmit
/// power of the feasible pairs plus circuit power for every scheduled pair.
inline double consumed_power(std::span<const PairAllocation> allocs, const SimConfig &config)
{
    double transmit = 0.0;
    for (const auto &a : allocs)
        if (a.feasible)
            transmit += a.bs_power_w + a.coop_power_w;
    return config.pa_inefficiency * transmit + static_cast<double>(allocs.size()) * circuit_power(config);
}

/// Sum rate over consumed power, bits per joule. Infeasible pairs contribute
/// neither rate nor transmit power.
inline double energy_efficiency(std::span<const PairRates> rates, std::span<const PairAllocation> allocs,
                                const SimConfig &config)
{
    if (rates.size() != allocs.size())
        throw std::invalid_argument("energy_efficiency: rates and allocations differ in length");
    if (allocs.empty())
        throw std::invalid_argument("energy_efficiency: no pairs");
    double sum_rate = 0.0;
    for (std::size_t k = 0; k < rates.size(); ++k)
        if (allocs[k].feasible)
            sum_rate += rates[k].center_bps + rates[k].edge_bps;
    return sum_rate / consumed_power(allocs, config);
}

} // namespace thz
