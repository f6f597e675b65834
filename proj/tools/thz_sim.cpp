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

// thz_sim: command-line driver for the cooperative THz NOMA simulator.
//
//   thz_sim run            single Monte Carlo point
//   thz_sim sweep          one-parameter sweep (bs_power | min_rate | num_users | band)
//   thz_sim compare-bands  THz vs mmWave min_rate sweeps on identical drops
//   thz_sim validate       quick invariant checks on small instances

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "thz.hpp"

namespace
{

struct CommonOptions
{
    std::string config_path;
    std::vector<std::string> overrides;
    std::uint64_t seed = 0;
    bool seed_given = false;
    int realizations = 0;
    std::string out;
    std::string format = "csv";
};

void add_common(CLI::App *cmd, CommonOptions &o)
{
    cmd->add_option("--config", o.config_path, "JSON configuration file")->check(CLI::ExistingFile);
    cmd->add_option("--set", o.overrides, "Override a configuration key (key=value), repeatable")->take_all();
    cmd->add_option_function<std::uint64_t>(
        "--seed", [&o](std::uint64_t s) { o.seed = s, o.seed_given = true; }, "Master seed");
    cmd->add_option("--realizations", o.realizations, "Monte Carlo realizations per point")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--out", o.out, "Output path (or prefix for compare-bands)");
    cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
}

thz::SimConfig load_config(const CommonOptions &o)
{
    thz::SimConfig c = thz::parse_config(o.config_path, o.overrides);
    if (o.seed_given)
        c.master_seed = o.seed;
    if (o.realizations > 0)
        c.num_realizations = o.realizations;
    thz::validate(c);
    return c;
}

// "5G" -> 5e9; plain numbers are SI already.
double parse_si_number(const std::string &token)
{
    std::size_t used = 0;
    double v = 0.0;
    try
    {
        v = std::stod(token, &used);
    }
    catch (const std::exception &)
    {
        throw thz::ConfigError("values", "cannot parse '" + token + "'");
    }
    const std::string suffix = token.substr(used);
    if (suffix.empty())
        return v;
    if (suffix == "k")
        return v * 1e3;
    if (suffix == "M")
        return v * 1e6;
    if (suffix == "G")
        return v * 1e9;
    if (suffix == "T")
        return v * 1e12;
    throw thz::ConfigError("values", "unknown suffix in '" + token + "'");
}

std::vector<double> parse_values(thz::SweepAxis axis, const std::string &list)
{
    std::vector<double> values;
    std::size_t start = 0;
    while (start <= list.size())
    {
        std::size_t comma = list.find(',', start);
        std::string token = list.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (token.empty())
            throw thz::ConfigError("values", "empty entry in '" + list + "'");
        if (axis == thz::SweepAxis::band)
        {
            if (token == "thz")
                values.push_back(thz::band_thz);
            else if (token == "mmwave")
                values.push_back(thz::band_mmwave);
            else
                throw thz::ConfigError("values", "band must be thz or mmwave, got '" + token + "'");
        }
        else
        {
            values.push_back(parse_si_number(token));
        }
        if (comma == std::string::npos)
            break;
        start = comma + 1;
    }
    return values;
}

std::string with_extension(const std::string &prefix, const std::string &tag, thz::OutputFormat f)
{
    return prefix + "_" + tag + (f == thz::OutputFormat::csv ? ".csv" : ".json");
}

void write_or_print(const thz::SweepResult &r, const CommonOptions &o, const std::string &command)
{
    const auto format = thz::parse_format(o.format);
    if (o.out.empty())
    {
        if (format == thz::OutputFormat::csv)
            std::cout << thz::results_csv(r);
        else
            std::cout << thz::results_json(r, thz::make_manifest(r.config, command)).dump(2) << "\n";
        return;
    }
    for (const auto &p : thz::emit_results(r, format, o.out, thz::make_manifest(r.config, command)))
        std::cerr << "wrote " << p << "\n";
}

// ---- validate --------------------------------------------------------------

bool report(const char *name, bool ok, const std::string &detail)
{
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << name << " - " << detail << "\n";
    return ok;
}

int run_validate(const thz::SimConfig &base)
{
    bool ok = true;
    thz::RandomStream s(base.master_seed);

    {
        int mismatches = 0;
        for (int t = 0; t < 100; ++t)
        {
            const std::size_t n = 1 + s.next_u64() % 6;
            thz::CostMatrix m(n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    m(i, j) = s.uniform(0.0, 10.0);
            std::vector<std::size_t> perm(n);
            std::iota(perm.begin(), perm.end(), 0);
            double best = INFINITY;
            do
            {
                double c = 0.0;
                for (std::size_t i = 0; i < n; ++i)
                    c += m(i, perm[i]);
                best = std::min(best, c);
            } while (std::next_permutation(perm.begin(), perm.end()));
            mismatches += std::abs(thz::hungarian(m).total_cost - best) > 1e-9 * (1.0 + best);
        }
        ok &= report("hungarian-optimality", mismatches == 0, std::to_string(mismatches) + "/100 mismatches");
    }
    {
        double worst = 0.0;
        for (int t = 0; t < 200; ++t)
        {
            const int n = 1 + static_cast<int>(s.next_u64() % 32);
            const double tu = s.uniform(base.sector_start_rad, base.sector_end_rad);
            const double tb = s.uniform(base.sector_start_rad, base.sector_end_rad);
            const double x = std::numbers::pi * (std::sin(tu) - std::sin(tb));
            const double den = n * std::sin(x / 2);
            if (std::abs(den) < 1e-6)
                continue;
            const double closed = std::abs(std::sin(n * x / 2) / den);
            const double ip = thz::cosine_similarity(thz::steering_vector(n, tu).entries, thz::steering_vector(n, tb).entries);
            worst = std::max(worst, std::abs(ip - closed));
        }
        ok &= report("fejer-equivalence", worst < 1e-12, "max deviation " + thz::format_double(worst));
    }
    {
        thz::SimConfig c = base;
        c.num_realizations = 50;
        const auto codebook = thz::build_codebook(c);
        int feasible = 0;
        double worst_rate = 0.0, worst_balance = 0.0;
        for (int i = 0; i < c.num_realizations; ++i)
        {
            auto stream = thz::RandomStream::substream(c.master_seed, i);
            for (const auto &p : thz::run_realization(c, codebook, stream).pairs)
            {
                if (!p.alloc.feasible)
                    continue;
                ++feasible;
                worst_rate = std::max(worst_rate, std::abs(p.rates.edge_bps - c.min_rate_bps) / c.min_rate_bps);
                worst_balance =
                    std::max(worst_balance, std::abs(p.sinrs.edge_at_center - p.sinrs.edge) / p.sinrs.edge);
            }
        }
        ok &= report("edge-rate-guarantee", feasible > 0 && worst_rate < 1e-6,
                     std::to_string(feasible) + " feasible pairs, max rel err " + thz::format_double(worst_rate));
        ok &= report("sic-balance", feasible > 0 && worst_balance < 1e-9,
                     "max rel err " + thz::format_double(worst_balance));
    }
    {
        thz::SimConfig c = base;
        c.num_realizations = 40;
        const bool same = thz::run_monte_carlo(c, 1) == thz::run_monte_carlo(c, 4);
        ok &= report("worker-determinism", same, "1 vs 4 workers");
    }
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Cooperative NOMA link-level simulator for indoor THz-MISO downlinks"};
    app.set_version_flag("--version", std::string(THZ_CNOMA_VERSION));
    app.require_subcommand(1);

    CommonOptions run_opts, sweep_opts, compare_opts, validate_opts;

    auto *run = app.add_subcommand("run", "Single Monte Carlo run at the configured operating point");
    add_common(run, run_opts);

    auto *sweep_cmd = app.add_subcommand("sweep", "Sweep one parameter with common random numbers");
    add_common(sweep_cmd, sweep_opts);
    std::string axis_name;
    std::string values_text;
    sweep_cmd->add_option("--axis", axis_name, "bs_power | min_rate | num_users | band")->required();
    sweep_cmd->add_option("--values", values_text, "Comma-separated values, e.g. 1,3,5 or 5G,10G or thz,mmwave")
        ->required();

    auto *compare = app.add_subcommand("compare-bands", "THz vs mmWave sweep over the edge-user minimum rate");
    add_common(compare, compare_opts);
    std::string compare_values = "5G,10G,15G,20G";
    compare->add_option("--values", compare_values, "min_rate values")->capture_default_str();

    auto *validate = app.add_subcommand("validate", "Run invariant checks on small instances");
    add_common(validate, validate_opts);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForAllHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForVersion &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    }

    try
    {
        if (*run)
        {
            const auto c = load_config(run_opts);
            const std::vector<double> point{c.bs_power_w};
            write_or_print(thz::sweep(c, thz::SweepAxis::bs_power, point), run_opts, "run");
        }
        else if (*sweep_cmd)
        {
            const auto c = load_config(sweep_opts);
            const auto axis = thz::parse_axis(axis_name);
            const auto values = parse_values(axis, values_text);
            write_or_print(thz::sweep(c, axis, values), sweep_opts, "sweep --axis " + axis_name + " --values " + values_text);
        }
        else if (*compare)
        {
            const auto c = load_config(compare_opts);
            const auto values = parse_values(thz::SweepAxis::min_rate, compare_values);
            const auto format = thz::parse_format(compare_opts.format);
            const std::string prefix = compare_opts.out.empty() ? "compare_bands" : compare_opts.out;
            const auto thz_result = thz::sweep(c, thz::SweepAxis::min_rate, values);
            const auto mm_result = thz::sweep(thz::mmwave_variant(c), thz::SweepAxis::min_rate, values);
            for (const auto &[tag, r] : {std::pair{"thz", &thz_result}, std::pair{"mmwave", &mm_result}})
            {
                const auto path = with_extension(prefix, tag, format);
                for (const auto &p : thz::emit_results(*r, format, path, thz::make_manifest(r->config, "compare-bands")))
                    std::cerr << "wrote " << p << "\n";
            }
        }
        else if (*validate)
        {
            return run_validate(load_config(validate_opts));
        }
    }
    catch (const thz::ConfigError &e)
    {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
