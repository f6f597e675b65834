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
#include <vector>

#include "config.hpp"
#include "random.hpp"

namespace thz
{

/// User position relative to the BS: radius in metres, angle in radians.
struct PolarPoint
{
    double radius_m = 0.0;
    double angle_rad = 0.0;

    bool operator==(const PolarPoint &) const = default;
};

/// One drop of users in the sector.
///
/// Only the cooperating subset of the cell-centre users is simulated, so
/// `cooperator_indices` is currently the identity map onto `center_users`.
struct UserLayout
{
    std::vector<PolarPoint> center_users;
    std::vector<PolarPoint> edge_users;
    std::vector<std::size_t> cooperator_indices;

    const PolarPoint &cooperator(std::size_t k) const { return center_users[cooperator_indices[k]]; }
    std::size_t num_pairs() const { return cooperator_indices.size(); }

    bool operator==(const UserLayout &) const = default;
};

inline double euclidean_distance(const PolarPoint &a, const PolarPoint &b)
{
    double sq = a.radius_m * a.radius_m + b.radius_m * b.radius_m -
                2.0 * a.radius_m * b.radius_m * std::cos(a.angle_rad - b.angle_rad);
    return sq > 0.0 ? std::sqrt(sq) : 0.0;
}

/// Area-uniform point in the annular sector inner < r <= outer,
/// angle_start <= angle <= angle_end. Radius by inverse CDF, then angle.
inline PolarPoint sample_annulus(RandomStream &stream, double inner, double outer, double angle_start,
                                 double angle_end)
{
    double r = 0.0;
    for (;;)
    {
        double u = 1.0 - stream.uniform(); // (0, 1]
        r = std::sqrt(u * (outer * outer - inner * inner) + inner * inner);
        if (r > inner && r <= outer)
            break;
    }
    return {r, stream.uniform(angle_start, angle_end)};
}

/// Draws `num_pairs` cooperating centre users inside the cooperator band and
/// `num_pairs` edge users in the outer annulus, uniform in area and angle.
inline UserLayout deploy_users(const SimConfig &config, RandomStream &stream)
{
    validate(config);

    const double d_center = config.center_radius_m();
    const double band_inner = (1.0 - config.cooperator_band_fraction) * d_center;
    const auto k = static_cast<std::size_t>(config.num_pairs);

    UserLayout layout;
    layout.center_users.reserve(k);
    layout.edge_users.reserve(k);
    layout.cooperator_indices.reserve(k);

    const double a0 = config.sector_start_rad;
    const double a1 = config.sector_end_rad;

    // Cooperators are drawn straight from the band, so exactly num_pairs of
    // them exist. The band's inner edge itself has probability zero.
    for (std::size_t i = 0; i < k; ++i)
    {
        layout.center_users.push_back(sample_annulus(stream, band_inner, d_center, a0, a1));
        layout.cooperator_indices.push_back(i);
    }
    for (std::size_t i = 0; i < k; ++i)
        layout.edge_users.push_back(sample_annulus(stream, d_center, config.coverage_radius_m, a0, a1));
    return layout;
}

} // namespace thz
