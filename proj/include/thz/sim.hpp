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
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "beamforming.hpp"
#include "channel.hpp"
#include "config.hpp"
#include "pairing.hpp"
#include "power.hpp"
#include "random.hpp"
#include "scenario.hpp"

namespace thz
{

/// Everything computed for one cooperator/edge pair.
struct PairRecord
{
    std::size_t cooperator = 0;
    std::size_t edge_user = 0;
    BeamChoice beam;
    double side_distance_m = 0.0;
    PairLink link;
    PairAllocation alloc;
    LinkSinrs sinrs; // left zero for infeasible pairs
    PairRates rates; // left zero for infeasible pairs
};

struct RealizationResult
{
    UserLayout layout;
    std::vector<PairRecord> pairs;
    double energy_efficiency = 0.0; // bits/J
    double sum_rate_bps = 0.0;
    double consumed_power_w = 0.0;
    double mean_center_rate_bps = 0.0; // over feasible pairs
    std::size_t infeasible_pairs = 0;
};

/// Runs the three stages on one fresh drop: beam scheduling of the
/// cooperating users, distance-based Hungarian pairing, then (sequentially)
/// relay power followed by the NOMA fractions.
inline RealizationResult run_realization(const SimConfig &config, const BeamCodebook &codebook, RandomStream &stream)
{
    RealizationResult out;
    out.layout = deploy_users(config, stream);
    const UserLayout &layout = out.layout;
    const std::size_t k = layout.num_pairs();

    std::vector<ChannelVector> channels;
    channels.reserve(k);
    for (std::size_t i = 0; i < k; ++i)
        channels.push_back(bs_user_channel(config, layout.cooperator(i).radius_m, layout.cooperator(i).angle_rad));

    // Stage A
    const BeamAssignment beams = schedule_beams(layout, codebook, channels);

    // Stage B
    const CostMatrix cost = distance_matrix(layout);
    const Assignment matching = hungarian(cost);

    // Stage C
    const double noise_center = noise_power(config.bandwidth_hz, config.noise_figure_db);
    const double noise_edge = noise_power(config.bandwidth_hz, config.edge_noise_figure_db);
    const double gamma_min = min_sinr(config.min_rate_bps, config.bandwidth_hz);

    out.pairs.reserve(k);
    std::vector<PairAllocation> allocs;
    std::vector<PairRates> rates;
    allocs.reserve(k);
    rates.reserve(k);

    for (std::size_t i = 0; i < k; ++i)
    {
        PairRecord rec;
        rec.cooperator = i;
        rec.edge_user = matching.row_to_col[i];
        rec.beam = beams.choices[i];
        rec.side_distance_m = std::max(cost(i, rec.edge_user), config.min_link_distance_m);

        rec.link.effective_bs_gain =
            std::norm(inner_product(channels[i].entries, codebook.beams[rec.beam.beam_index].entries));
        rec.link.side_gain = std::norm(side_link_gain(config, rec.side_distance_m));
        rec.link.si_gain = config.si_channel_gain_linear;
        rec.link.noise_center_w = noise_center;
        rec.link.noise_edge_w = noise_edge;

        rec.alloc.bs_power_w = config.bs_power_w;
        rec.alloc.coop_power_w = cooperation_power(gamma_min, noise_edge, rec.link.side_gain);
        const NomaFractions fr = noma_fractions(rec.alloc.bs_power_w, rec.alloc.coop_power_w, rec.link, config.si_kappa);
        rec.alloc.beta_center = fr.beta_center;
        rec.alloc.beta_edge = fr.beta_edge;
        rec.alloc.feasible = fr.feasible;

        if (rec.alloc.feasible)
        {
            rec.sinrs = link_sinrs(rec.alloc, rec.link, config.si_kappa);
            rec.rates = pair_rates(rec.sinrs, config.bandwidth_hz);
            out.sum_rate_bps += rec.rates.center_bps + rec.rates.edge_bps;
            out.mean_center_rate_bps += rec.rates.center_bps;
        }
        else
        {
            ++out.infeasible_pairs;
        }
        allocs.push_back(rec.alloc);
        rates.push_back(rec.rates);
        out.pairs.push_back(rec);
    }

    const std::size_t feasible = k - out.infeasible_pairs;
    out.mean_center_rate_bps = feasible > 0 ? out.mean_center_rate_bps / static_cast<double>(feasible) : 0.0;
    out.consumed_power_w = consumed_power(allocs, config);
    out.energy_efficiency = energy_efficiency(rates, allocs, config);
    return out;
}

inline RealizationResult run_realization(const SimConfig &config, RandomStream &stream)
{
    validate(config);
    return run_realization(config, build_codebook(config), stream);
}

/// Scalar summary kept per realization by the Monte Carlo driver.
struct RealizationSummary
{
    double energy_efficiency = 0.0;
    double sum_rate_bps = 0.0;
    double consumed_power_w = 0.0;
    double mean_center_rate_bps = 0.0;
    std::size_t infeasible_pairs = 0;
    std::size_t num_pairs = 0;
};

inline RealizationSummary summarize(const RealizationResult &r)
{
    return {r.energy_efficiency, r.sum_rate_bps, r.consumed_power_w, r.mean_center_rate_bps, r.infeasible_pairs,
            r.pairs.size()};
}

/// Ensemble means of one configuration.
struct PointMetrics
{
    double mean_ee = 0.0;
    double mean_sum_rate_bps = 0.0;
    double mean_consumed_power_w = 0.0;
    double mean_center_rate_bps = 0.0;
    double infeasibility_rate = 0.0; // infeasible pairs / scheduled pairs
    double ee_variance = 0.0;        // unbiased; 0 for a single realization
    int num_realizations = 0;

    bool operator==(const PointMetrics &) const = default;
};

/// Pairwise (cascade) summation in index order; the result depends only on
/// the sequence, never on how it was produced.
inline double pairwise_sum(std::span<const double> x)
{
    if (x.size() <= 8)
    {
        double s = 0.0;
        for (double v : x)
            s += v;
        return s;
    }
    const std::size_t half = x.size() / 2;
    return pairwise_sum(x.first(half)) + pairwise_sum(x.subspan(half));
}

inline double pairwise_mean(std::span<const double> x) { return pairwise_sum(x) / static_cast<double>(x.size()); }

inline PointMetrics aggregate(std::span<const RealizationSummary> runs)
{
    if (runs.empty())
        throw std::invalid_argument("aggregate: no realizations");
    const std::size_t n = runs.size();
    std::vector<double> ee(n), rate(n), power(n), center(n);
    std::size_t infeasible = 0, scheduled = 0;
    for (std::size_t i = 0; i < n; ++i)
    {
        ee[i] = runs[i].energy_efficiency;
        rate[i] = runs[i].sum_rate_bps;
        power[i] = runs[i].consumed_power_w;
        center[i] = runs[i].mean_center_rate_bps;
        infeasible += runs[i].infeasible_pairs;
        scheduled += runs[i].num_pairs;
    }

    PointMetrics m;
    m.mean_ee = pairwise_mean(ee);
    m.mean_sum_rate_bps = pairwise_mean(rate);
    m.mean_consumed_power_w = pairwise_mean(power);
    m.mean_center_rate_bps = pairwise_mean(center);
    m.infeasibility_rate = scheduled > 0 ? static_cast<double>(infeasible) / static_cast<double>(scheduled) : 0.0;
    m.num_realizations = static_cast<int>(n);
    if (n > 1)
    {
        std::vector<double> sq(n);
        for (std::size_t i = 0; i < n; ++i)
            sq[i] = (ee[i] - m.mean_ee) * (ee[i] - m.mean_ee);
        m.ee_variance = pairwise_sum(sq) / static_cast<double>(n - 1);
    }
    return m;
}

/// Worker count: `requested` if positive, else THZ_SIM_THREADS if positive,
/// else the hardware concurrency.
inline unsigned resolve_workers(int requested = 0)
{
    if (requested > 0)
        return static_cast<unsigned>(requested);
    if (const char *env = std::getenv("THZ_SIM_THREADS"))
    {
        char *end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0)
            return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs every realization of `config` on its own substream and returns the
/// per-realization summaries in index order.
inline std::vector<RealizationSummary> run_ensemble(const SimConfig &config, int workers = 0)
{
    validate(config);
    const BeamCodebook codebook = build_codebook(config);
    const auto n = static_cast<std::size_t>(config.num_realizations);
    std::vector<RealizationSummary> results(n);

    auto one = [&](std::size_t i) {
        RandomStream stream = RandomStream::substream(config.master_seed, i);
        results[i] = summarize(run_realization(config, codebook, stream));
    };

    const unsigned threads = std::min<std::size_t>(resolve_workers(workers), n);
    if (threads <= 1)
    {
        for (std::size_t i = 0; i < n; ++i)
            one(i);
        return results;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t)
        {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < n; i = next++)
                {
                    try
                    {
                        one(i);
                    }
                    catch (...)
                    {
                        std::lock_guard lock(failure_mutex);
                        if (!failure)
                            failure = std::current_exception();
                        next = n;
                    }
                }
            });
        }
    }
    if (failure)
        std::rethrow_exception(failure);
    return results;
}

inline PointMetrics run_monte_carlo(const SimConfig &config, int workers = 0)
{
    const auto runs = run_ensemble(config, workers);
    return aggregate(runs);
}

enum class SweepAxis
{
    bs_power,  // W
    min_rate,  // bit/s
    num_users, // total users, pairs = users / 2
    band,      // 0 = THz, 1 = mmWave
};

inline std::string_view axis_name(SweepAxis axis)
{
    switch (axis)
    {
    case SweepAxis::bs_power: return "bs_power";
    case SweepAxis::min_rate: return "min_rate";
    case SweepAxis::num_users: return "num_users";
    case SweepAxis::band: return "band";
    }
    return "unknown";
}

inline SweepAxis parse_axis(std::string_view name)
{
    for (SweepAxis a : {SweepAxis::bs_power, SweepAxis::min_rate, SweepAxis::num_users, SweepAxis::band})
        if (axis_name(a) == name)
            return a;
    throw ConfigError("axis", "unknown sweep axis '" + std::string(name) +
                                  "' (expected bs_power, min_rate, num_users or band)");
}

inline constexpr double band_thz = 0.0;
inline constexpr double band_mmwave = 1.0;

/// Copy of `config` with the swept parameter set to `value`.
inline SimConfig apply_axis(SimConfig config, SweepAxis axis, double value)
{
    switch (axis)
    {
    case SweepAxis::bs_power:
        config.bs_power_w = value;
        break;
    case SweepAxis::min_rate:
        config.min_rate_bps = value;
        break;
    case SweepAxis::num_users:
        if (!(value >= 2.0) || value != std::floor(value) || static_cast<long long>(value) % 2 != 0)
            throw ConfigError("num_users", "must be an even user count >= 2");
        config.num_pairs = static_cast<int>(value / 2.0);
        break;
    case SweepAxis::band:
        if (value == band_mmwave)
            config = mmwave_variant(config);
        else if (value != band_thz)
            throw ConfigError("band", "must be thz (0) or mmwave (1)");
        break;
    }
    validate(config);
    return config;
}

struct SweepResult
{
    SweepAxis axis = SweepAxis::bs_power;
    std::vector<double> values;
    std::vector<PointMetrics> points;
    SimConfig config; // base configuration before the axis is applied
    std::uint64_t master_seed = 0;
    int num_realizations = 0;

    bool operator==(const SweepResult &) const = default;
};

/// Monte Carlo at every axis value with the same master seed, so realization i
/// sees the same drop at every point wherever the axis leaves the geometry alone.
inline SweepResult sweep(const SimConfig &config, SweepAxis axis, std::span<const double> values, int workers = 0)
{
    if (values.empty())
        throw ConfigError("values", "sweep needs at least one value");
    validate(config);

    std::vector<SimConfig> points;
    points.reserve(values.size());
    for (double v : values)
        points.push_back(apply_axis(config, axis, v));

    SweepResult out;
    out.axis = axis;
    out.values.assign(values.begin(), values.end());
    out.config = config;
    out.master_seed = config.master_seed;
    out.num_realizations = config.num_realizations;
    for (const auto &c : points)
        out.points.push_back(run_monte_carlo(c, workers));
    return out;
}

} // namespace thz
