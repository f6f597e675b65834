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
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "config.hpp"
#include "sim.hpp"

#ifndef THZ_CNOMA_VERSION
#define THZ_CNOMA_VERSION "0.1.0"
#endif

namespace thz
{

using nlohmann::json;

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

namespace detail
{

struct ConfigField
{
    std::string key;
    std::function<void(SimConfig &, const json &)> set;
    std::function<json(const SimConfig &)> get; // empty for input-only aliases
};

inline double as_double(const json &v, const std::string &key)
{
    if (!v.is_number())
        throw ConfigError(key, "expected a number, got " + v.dump());
    return v.get<double>();
}

inline int as_int(const json &v, const std::string &key)
{
    if (!v.is_number_integer())
        throw ConfigError(key, "expected an integer, got " + v.dump());
    auto x = v.get<std::int64_t>();
    if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max())
        throw ConfigError(key, "integer out of range");
    return static_cast<int>(x);
}

inline std::uint64_t as_u64(const json &v, const std::string &key)
{
    if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0))
        throw ConfigError(key, "expected a non-negative integer, got " + v.dump());
    return v.get<std::uint64_t>();
}

template <typename Member>
ConfigField number_field(std::string key, Member member)
{
    return {key,
            [member, key](SimConfig &c, const json &v) { c.*member = as_double(v, key); },
            [member](const SimConfig &c) { return json(c.*member); }};
}

template <typename Member>
ConfigField int_field(std::string key, Member member)
{
    return {key,
            [member, key](SimConfig &c, const json &v) { c.*member = as_int(v, key); },
            [member](const SimConfig &c) { return json(c.*member); }};
}

template <typename Member>
ConfigField circuit_field(std::string key, Member member)
{
    return {"circuit." + key,
            [member, key](SimConfig &c, const json &v) { c.circuit.*member = as_double(v, "circuit." + key); },
            [member](const SimConfig &c) { return json(c.circuit.*member); }};
}

template <typename Member>
ConfigField db_alias(std::string key, Member member)
{
    return {key, [member, key](SimConfig &c, const json &v) { c.*member = db_to_linear(as_double(v, key)); }, {}};
}

inline const std::vector<ConfigField> &config_fields()
{
    static const std::vector<ConfigField> fields = {
        number_field("carrier_frequency_hz", &SimConfig::carrier_frequency_hz),
        number_field("bandwidth_hz", &SimConfig::bandwidth_hz),
        number_field("absorption_coeff_per_m", &SimConfig::absorption_coeff_per_m),
        int_field("num_antennas", &SimConfig::num_antennas),
        int_field("num_beams", &SimConfig::num_beams),
        number_field("sector_start_rad", &SimConfig::sector_start_rad),
        number_field("sector_end_rad", &SimConfig::sector_end_rad),
        number_field("bs_gain_linear", &SimConfig::bs_gain_linear),
        db_alias("bs_gain_dbi", &SimConfig::bs_gain_linear),
        number_field("user_gain_linear", &SimConfig::user_gain_linear),
        db_alias("user_gain_dbi", &SimConfig::user_gain_linear),
        number_field("si_channel_gain_linear", &SimConfig::si_channel_gain_linear),
        db_alias("si_channel_gain_db", &SimConfig::si_channel_gain_linear),
        number_field("si_kappa", &SimConfig::si_kappa),
        number_field("bs_power_w", &SimConfig::bs_power_w),
        number_field("pa_inefficiency", &SimConfig::pa_inefficiency),
        circuit_field("baseband_w", &CircuitPowers::baseband_w),
        circuit_field("rf_chain_w", &CircuitPowers::rf_chain_w),
        circuit_field("power_amplifier_w", &CircuitPowers::power_amplifier_w),
        circuit_field("phase_shifter_w", &CircuitPowers::phase_shifter_w),
        int_field("num_rf_chains", &SimConfig::num_rf_chains),
        number_field("min_rate_bps", &SimConfig::min_rate_bps),
        number_field("noise_figure_db", &SimConfig::noise_figure_db),
        number_field("edge_noise_figure_db", &SimConfig::edge_noise_figure_db),
        number_field("coverage_radius_m", &SimConfig::coverage_radius_m),
        number_field("center_fraction", &SimConfig::center_fraction),
        number_field("cooperator_band_fraction", &SimConfig::cooperator_band_fraction),
        number_field("min_link_distance_m", &SimConfig::min_link_distance_m),
        int_field("num_pairs", &SimConfig::num_pairs),
        number_field("mmwave_frequency_hz", &SimConfig::mmwave_frequency_hz),
        number_field("mmwave_bandwidth_hz", &SimConfig::mmwave_bandwidth_hz),
        int_field("num_realizations", &SimConfig::num_realizations),
        {"master_seed", [](SimConfig &c, const json &v) { c.master_seed = as_u64(v, "master_seed"); },
         [](const SimConfig &c) { return json(c.master_seed); }},
    };
    return fields;
}

inline const ConfigField &find_field(const std::string &key)
{
    for (const auto &f : config_fields())
        if (f.key == key)
            return f;
    throw ConfigError(key, "unknown configuration key");
}

// Linear keys and their dB aliases must not both be present.
inline void check_alias_conflicts(const std::vector<std::string> &keys)
{
    static const std::pair<const char *, const char *> aliases[] = {
        {"bs_gain_linear", "bs_gain_dbi"},
        {"user_gain_linear", "user_gain_dbi"},
        {"si_channel_gain_linear", "si_channel_gain_db"},
    };
    auto has = [&](const char *k) { return std::find(keys.begin(), keys.end(), k) != keys.end(); };
    for (const auto &[lin, db] : aliases)
        if (has(lin) && has(db))
            throw ConfigError(db, std::string("conflicts with ") + lin + "; give only one");
}

inline void flatten(const json &j, const std::string &prefix, std::vector<std::pair<std::string, json>> &out)
{
    for (const auto &[k, v] : j.items())
    {
        std::string key = prefix.empty() ? k : prefix + "." + k;
        if (v.is_object())
            flatten(v, key, out);
        else
            out.emplace_back(std::move(key), v);
    }
}

} // namespace detail

/// Applies the keys of a JSON object onto `base`. Nested objects map to dotted
/// keys ("circuit": {"baseband_w": ...} is "circuit.baseband_w"). The result
/// is not validated; call validate() once all layers are merged.
inline SimConfig apply_json(SimConfig base, const json &j)
{
    if (!j.is_object())
        throw ConfigError("", "configuration must be a JSON object");
    std::vector<std::pair<std::string, json>> entries;
    detail::flatten(j, "", entries);
    std::vector<std::string> keys;
    for (const auto &e : entries)
        keys.push_back(e.first);
    detail::check_alias_conflicts(keys);
    for (const auto &[key, value] : entries)
        detail::find_field(key).set(base, value);
    return base;
}

/// `key=value`; the value is read as a JSON scalar.
inline SimConfig apply_override(SimConfig base, std::string_view assignment)
{
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos || eq == 0)
        throw ConfigError(std::string(assignment), "override must look like key=value");
    const std::string key(assignment.substr(0, eq));
    const std::string text(assignment.substr(eq + 1));
    json value = json::parse(text, nullptr, false);
    if (value.is_discarded())
        value = text;
    detail::find_field(key).set(base, value);
    return base;
}

/// Emitted with linear keys only, so apply_json(SimConfig{}, config_to_json(c)) == c.
inline json config_to_json(const SimConfig &c)
{
    json j = json::object();
    for (const auto &f : detail::config_fields())
    {
        if (!f.get)
            continue;
        const auto dot = f.key.find('.');
        if (dot == std::string::npos)
            j[f.key] = f.get(c);
        else
            j[f.key.substr(0, dot)][f.key.substr(dot + 1)] = f.get(c);
    }
    return j;
}

inline SimConfig parse_config_text(std::string_view text, const std::vector<std::string> &overrides = {})
{
    SimConfig c;
    bool blank = text.find_first_not_of(" \t\r\n") == std::string_view::npos;
    if (!blank)
    {
        json j = json::parse(text, nullptr, false);
        if (j.is_discarded())
            throw ConfigError("", "malformed JSON configuration");
        c = apply_json(c, j);
    }
    for (const auto &o : overrides)
        c = apply_override(c, o);
    validate(c);
    return c;
}

/// Built-in defaults < file < overrides. An empty `path` means no file.
inline SimConfig parse_config(const std::string &path, const std::vector<std::string> &overrides = {})
{
    std::string text;
    if (!path.empty())
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw ConfigError("", "cannot open configuration file '" + path + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    try
    {
        return parse_config_text(text, overrides);
    }
    catch (const ConfigError &e)
    {
        if (path.empty())
            throw;
        throw ConfigError(e.key(), std::string(e.what()) + " (in " + path + ")");
    }
}

/// Shortest decimal that reads back to the same double.
inline std::string format_double(double x)
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    if (ec != std::errc{})
        throw std::runtime_error("format_double: conversion failed");
    return std::string(buf, ptr);
}

inline std::string axis_value_label(SweepAxis axis, double value)
{
    if (axis == SweepAxis::band)
        return value == band_mmwave ? "mmwave" : "thz";
    return format_double(value);
}

inline const char *csv_header =
    "axis_value,mean_ee_bits_per_joule,mean_sum_rate_bps,mean_consumed_power_w,mean_center_rate_bps,"
    "infeasibility_rate,num_realizations,seed";

inline std::string results_csv(const SweepResult &r)
{
    std::string out = csv_header;
    out += '\n';
    for (std::size_t i = 0; i < r.points.size(); ++i)
    {
        const auto &p = r.points[i];
        out += axis_value_label(r.axis, r.values[i]);
        for (double v : {p.mean_ee, p.mean_sum_rate_bps, p.mean_consumed_power_w, p.mean_center_rate_bps,
                         p.infeasibility_rate})
        {
            out += ',';
            out += format_double(v);
        }
        out += ',' + std::to_string(p.num_realizations) + ',' + std::to_string(r.master_seed) + '\n';
    }
    return out;
}

struct RunManifest
{
    SimConfig config;
    std::string tool_version = THZ_CNOMA_VERSION;
    std::uint64_t master_seed = 0;
    std::string timestamp;
    std::vector<std::string> output_paths;
    std::string command;
};

/// UTC ISO-8601; SOURCE_DATE_EPOCH pins it for reproducible manifests.
inline std::string manifest_timestamp()
{
    std::time_t t = std::time(nullptr);
    if (const char *epoch = std::getenv("SOURCE_DATE_EPOCH"))
    {
        char *end = nullptr;
        long long v = std::strtoll(epoch, &end, 10);
        if (end != epoch && *end == '\0')
            t = static_cast<std::time_t>(v);
    }
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

inline RunManifest make_manifest(const SimConfig &config, std::string command = {})
{
    RunManifest m;
    m.config = config;
    m.master_seed = config.master_seed;
    m.timestamp = manifest_timestamp();
    m.command = std::move(command);
    return m;
}

inline json manifest_to_json(const RunManifest &m)
{
    return json{{"tool_version", m.tool_version}, {"command", m.command},     {"master_seed", m.master_seed},
                {"timestamp", m.timestamp},       {"output_paths", m.output_paths}, {"config", config_to_json(m.config)}};
}

inline json results_json(const SweepResult &r, const RunManifest &manifest)
{
    json points = json::array();
    for (std::size_t i = 0; i < r.points.size(); ++i)
    {
        const auto &p = r.points[i];
        json axis_value = r.axis == SweepAxis::band ? json(axis_value_label(r.axis, r.values[i])) : json(r.values[i]);
        points.push_back({{"axis_value", axis_value},
                          {"mean_ee_bits_per_joule", p.mean_ee},
                          {"mean_sum_rate_bps", p.mean_sum_rate_bps},
                          {"mean_consumed_power_w", p.mean_consumed_power_w},
                          {"mean_center_rate_bps", p.mean_center_rate_bps},
                          {"infeasibility_rate", p.infeasibility_rate},
                          {"ee_variance", p.ee_variance},
                          {"num_realizations", p.num_realizations},
                          {"seed", r.master_seed}});
    }
    return json{{"axis", std::string(axis_name(r.axis))}, {"points", points}, {"manifest", manifest_to_json(manifest)}};
}

enum class OutputFormat
{
    csv,
    json,
};

inline OutputFormat parse_format(std::string_view f)
{
    if (f == "csv")
        return OutputFormat::csv;
    if (f == "json")
        return OutputFormat::json;
    throw ConfigError("format", "expected csv or json, got '" + std::string(f) + "'");
}

inline void write_file(const std::string &path, const std::string &contents)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    out << contents;
    out.flush();
    if (!out)
        throw std::runtime_error("failed writing '" + path + "'");
}

/// Writes `result` to `path`. CSV output gets a `<path>.manifest.json` sidecar;
/// JSON output embeds the manifest. Returns every path written.
inline std::vector<std::string> emit_results(const SweepResult &result, OutputFormat format, const std::string &path,
                                             RunManifest manifest)
{
    if (format == OutputFormat::csv)
    {
        const std::string sidecar = path + ".manifest.json";
        manifest.output_paths = {path, sidecar};
        write_file(path, results_csv(result));
        write_file(sidecar, manifest_to_json(manifest).dump(2) + "\n");
        return manifest.output_paths;
    }
    manifest.output_paths = {path};
    write_file(path, results_json(result, manifest).dump(2) + "\n");
    return manifest.output_paths;
}

} // namespace thz
