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

// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "oracles.hpp"
#include "thz.hpp"

using namespace thz;

namespace
{

struct Outcome
{
    bool pass = false;
    std::string detail;
};

std::string num(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

SimConfig defaults()
{
    SimConfig c;
    c.num_realizations = 1000;
    return c;
}

// Every feasible pair over the default ensemble.
template <class F>
int for_each_feasible_pair(const SimConfig &c, F &&f)
{
    const auto codebook = build_codebook(c);
    int feasible = 0;
    for (int i = 0; i < c.num_realizations; ++i)
    {
        auto stream = RandomStream::substream(c.master_seed, static_cast<std::uint64_t>(i));
        for (const auto &p : run_realization(c, codebook, stream).pairs)
            if (p.alloc.feasible)
            {
                ++feasible;
                f(p);
            }
    }
    return feasible;
}

Outcome edge_rate_guarantee()
{
    const SimConfig c = defaults();
    double worst = 0.0;
    const int n = for_each_feasible_pair(
        c, [&](const PairRecord &p) { worst = std::max(worst, oracle::rel_err(p.rates.edge_bps, c.min_rate_bps)); });
    return {n > 0 && worst <= 1e-6, std::to_string(n) + " feasible pairs, max rel err " + num(worst)};
}

Outcome sic_balance()
{
    const SimConfig c = defaults();
    double worst = 0.0;
    const int n = for_each_feasible_pair(
        c, [&](const PairRecord &p) { worst = std::max(worst, oracle::rel_err(p.sinrs.edge_at_center, p.sinrs.edge)); });
    return {n > 0 && worst <= 1e-9, std::to_string(n) + " feasible pairs, max rel err " + num(worst)};
}

Outcome hungarian_optimality()
{
    RandomStream s(20260314);
    int mismatches = 0;
    for (int t = 0; t < 500; ++t)
    {
        const std::size_t n = 1 + s.next_u64() % 8;
        CostMatrix m(n);
        std::vector<std::vector<double>> rows(n, std::vector<double>(n));
        const bool integer = t % 2 == 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                m(i, j) = rows[i][j] = integer ? static_cast<double>(s.next_u64() % 10) : s.uniform(0.0, 7.0);
        if (hungarian(m).total_cost != oracle::brute_force_assignment(rows))
            ++mismatches;
    }
    return {mismatches == 0, std::to_string(mismatches) + "/500 mismatches"};
}

Outcome fejer_equivalence()
{
    const SimConfig c = defaults();
    RandomStream s(77);
    double worst = 0.0;
    for (int t = 0; t < 1000; ++t)
    {
        const int n = 1 + static_cast<int>(s.next_u64() % 64);
        const double tu = s.uniform(c.sector_start_rad, c.sector_end_rad);
        const double tb = s.uniform(c.sector_start_rad, c.sector_end_rad);
        const double ip = cosine_similarity(steering_vector(n, tu).entries, steering_vector(n, tb).entries);
        worst = std::max(worst, std::abs(ip - oracle::fejer_similarity(n, tu, tb)));
    }
    return {worst <= 1e-12, "max abs deviation " + num(worst)};
}

const std::vector<double> power_grid{1, 3, 5, 7, 9};

Outcome consumed_power_affine()
{
    const auto r = sweep(defaults(), SweepAxis::bs_power, power_grid);
    std::vector<double> y;
    for (const auto &p : r.points)
        y.push_back(p.mean_consumed_power_w);
    const double n = static_cast<double>(y.size());
    const double mx = std::accumulate(power_grid.begin(), power_grid.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i)
    {
        sxy += (power_grid[i] - mx) * (y[i] - my);
        sxx += (power_grid[i] - mx) * (power_grid[i] - mx);
    }
    const double slope = sxy / sxx;
    double worst = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i)
        worst = std::max(worst, std::abs(y[i] - (my + slope * (power_grid[i] - mx))) / std::abs(y[i]));
    return {worst < 1e-9, "slope " + num(slope) + " W/W, max rel residual " + num(worst)};
}

std::string series(const SweepResult &r, double PointMetrics::*field)
{
    std::string s;
    for (const auto &p : r.points)
        s += (s.empty() ? "" : ", ") + num(p.*field);
    return s;
}

Outcome ee_saturates_in_power()
{
    const auto r = sweep(defaults(), SweepAxis::bs_power, power_grid);
    bool ok = true;
    double prev_inc = INFINITY;
    for (std::size_t i = 1; i < r.points.size(); ++i)
    {
        const double inc = r.points[i].mean_ee - r.points[i - 1].mean_ee;
        ok &= inc > 0.0 && inc < prev_inc;
        prev_inc = inc;
    }
    return {ok, "EE [" + series(r, &PointMetrics::mean_ee) + "] bit/J"};
}

Outcome user_scaling()
{
    const std::vector<double> users{4, 12, 20};
    const auto r = sweep(defaults(), SweepAxis::num_users, users);
    bool ok = true;
    for (std::size_t i = 1; i < r.points.size(); ++i)
        ok &= r.points[i].mean_ee > r.points[i - 1].mean_ee &&
              r.points[i].mean_sum_rate_bps > r.points[i - 1].mean_sum_rate_bps;
    return {ok, "EE [" + series(r, &PointMetrics::mean_ee) + "], sum rate [" +
                    series(r, &PointMetrics::mean_sum_rate_bps) + "]"};
}

const std::vector<double> rate_grid{5e9, 10e9, 15e9, 20e9};

Outcome ee_falls_with_min_rate()
{
    const auto r = sweep(defaults(), SweepAxis::min_rate, rate_grid);
    bool ok = true;
    for (std::size_t i = 1; i < r.points.size(); ++i)
        ok &= r.points[i].mean_ee < r.points[i - 1].mean_ee;
    return {ok, "EE [" + series(r, &PointMetrics::mean_ee) + "] bit/J"};
}

Outcome center_rate_magnitude()
{
    const double rate = run_monte_carlo(defaults()).mean_center_rate_bps;
    return {rate >= 0.05e12 && rate <= 0.4e12, "mean centre rate " + num(rate / 1e12) + " Tbps"};
}

Outcome thz_beats_mmwave()
{
    const SimConfig c = defaults();
    const auto t = sweep(c, SweepAxis::min_rate, rate_grid);
    const auto m = sweep(mmwave_variant(c), SweepAxis::min_rate, rate_grid);
    bool ok = true;
    std::string detail;
    for (std::size_t i = 0; i < rate_grid.size(); ++i)
    {
        const bool ee = t.points[i].mean_ee > m.points[i].mean_ee;
        const bool rate = t.points[i].mean_center_rate_bps > m.points[i].mean_center_rate_bps;
        ok &= ee && rate;
        detail += (i ? "; " : "") + num(rate_grid[i] / 1e9) + "G: EE " + num(t.points[i].mean_ee) + " vs " +
                  num(m.points[i].mean_ee) + (ee ? "" : " (!)") + ", rate " +
                  num(t.points[i].mean_center_rate_bps) + " vs " + num(m.points[i].mean_center_rate_bps) +
                  (rate ? "" : " (!)");
    }
    return {ok, detail};
}

std::string slurp(const std::filesystem::path &p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome sweep_determinism()
{
    SimConfig c = defaults();
    c.master_seed = 42;
    const auto dir = std::filesystem::temp_directory_path() / ("thz_acceptance_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    std::vector<std::string> files;
    for (int run = 0; run < 3; ++run)
    {
        const int workers = run == 2 ? 8 : 1;
        const auto path = (dir / ("sweep" + std::to_string(run) + ".csv")).string();
        emit_results(sweep(c, SweepAxis::bs_power, power_grid, workers), OutputFormat::csv, path, make_manifest(c));
        files.push_back(slurp(path));
    }
    std::filesystem::remove_all(dir);
    const bool ok = !files[0].empty() && files[0] == files[1] && files[0] == files[2];
    return {ok, "3 runs (1, 1, 8 workers), " + std::to_string(files[0].size()) + " bytes each"};
}

Outcome unit_sanity()
{
    const SimConfig c = defaults();
    const double dbm = 10.0 * std::log10(noise_power(137e9, 10.0) * 1e3);
    const double pc = circuit_power(c);
    return {std::abs(dbm + 52.63) <= 0.01 && pc == 0.6, "noise " + num(dbm) + " dBm, circuit " + num(pc) + " W"};
}

} // namespace

int main()
{
    const std::vector<std::pair<const char *, std::function<Outcome()>>> criteria{
        {"edge-rate-guarantee", edge_rate_guarantee},
        {"sic-balance", sic_balance},
        {"hungarian-optimality", hungarian_optimality},
        {"fejer-equivalence", fejer_equivalence},
        {"consumed-power-affine-in-bs-power", consumed_power_affine},
        {"ee-increases-and-saturates-in-bs-power", ee_saturates_in_power},
        {"ee-and-sum-rate-grow-with-users", user_scaling},
        {"ee-decreases-with-min-rate", ee_falls_with_min_rate},
        {"center-rate-magnitude", center_rate_magnitude},
        {"thz-beats-mmwave", thz_beats_mmwave},
        {"sweep-determinism", sweep_determinism},
        {"unit-sanity", unit_sanity},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i)
    {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try
        {
            o = criteria[i].second();
        }
        catch (const std::exception &e)
        {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        failures += !o.pass;
        std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << "C" << i + 1 << " " << criteria[i].first << " (" << o.detail
                  << ") [" << num(secs) << " s]" << std::endl;
    }
    std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed" << std::endl;
    return failures == 0 ? 0 : 1;
}
