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
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "channel.hpp"
#include "config.hpp"
#include "scenario.hpp"

namespace thz
{

/// B + 1 fixed analog beams spanning the sector at equal angular steps.
struct BeamCodebook
{
    std::vector<SteeringVector> beams;
    std::vector<double> beam_angles;

    std::size_t size() const { return beams.size(); }
};

struct BeamChoice
{
    std::size_t beam_index = 0;
    double similarity = 0.0;
};

/// One entry per cooperating user, in cooperator order.
struct BeamAssignment
{
    std::vector<BeamChoice> choices;
};

inline BeamCodebook build_codebook(const SimConfig &config)
{
    if (config.num_beams < 1)
        throw ConfigError("num_beams", "must be >= 1");
    const double step = config.sector_width_rad() / config.num_beams;

    BeamCodebook codebook;
    codebook.beams.reserve(static_cast<std::size_t>(config.num_beams) + 1);
    codebook.beam_angles.reserve(static_cast<std::size_t>(config.num_beams) + 1);
    for (int b = 0; b <= config.num_beams; ++b)
    {
        // Pin the last beam to the sector edge instead of accumulating rounding.
        double angle = b == config.num_beams ? config.sector_end_rad : config.sector_start_rad + b * step;
        codebook.beam_angles.push_back(angle);
        codebook.beams.push_back(steering_vector(config.num_antennas, angle));
    }
    return codebook;
}

/// |h^H w| / (||h|| ||w||), in [0, 1].
inline double cosine_similarity(const ComplexVector &h, const ComplexVector &w)
{
    if (h.size() != w.size())
        throw std::invalid_argument("cosine_similarity: dimension mismatch");
    const double nh = norm2(h);
    const double nw = norm2(w);
    if (!(nh > 0.0) || !(nw > 0.0))
        throw std::domain_error("cosine_similarity: zero-norm vector");
    double c = std::abs(inner_product(h, w)) / (nh * nw);
    return c > 1.0 ? 1.0 : c;
}

inline double cosine_similarity(const ChannelVector &h, const SteeringVector &w)
{
    return cosine_similarity(h.entries, w.entries);
}

/// Best beam for a single channel; ties go to the lowest index.
inline BeamChoice best_beam(const BeamCodebook &codebook, const ChannelVector &h)
{
    BeamChoice best{0, -1.0};
    for (std::size_t b = 0; b < codebook.size(); ++b)
    {
        double s = cosine_similarity(h, codebook.beams[b]);
        if (s > best.similarity)
            best = {b, s};
    }
    return best;
}

/// Schedules every cooperating user on its most similar beam. Several users
/// may land on the same beam; each pair occupies its own orthogonal channel use.
inline BeamAssignment schedule_beams(const UserLayout &layout, const BeamCodebook &codebook,
                                     const std::vector<ChannelVector> &channels)
{
    if (channels.size() != layout.num_pairs())
        throw std::invalid_argument("schedule_beams: need one channel per cooperating user");
    BeamAssignment out;
    out.choices.reserve(channels.size());
    for (const auto &h : channels)
        out.choices.push_back(best_beam(codebook, h));
    return out;
}

} // namespace thz
