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
#include <limits>
#include <stdexcept>
#include <vector>

#include "config.hpp"
#include "scenario.hpp"

namespace thz
{

/// Dense square cost matrix, row-major. Rows are cooperators, columns edge users.
class CostMatrix
{
public:
    CostMatrix() = default;
    explicit CostMatrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

    std::size_t size() const noexcept { return n_; }
    double &operator()(std::size_t row, std::size_t col) { return data_[row * n_ + col]; }
    double operator()(std::size_t row, std::size_t col) const { return data_[row * n_ + col]; }

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

/// Perfect matching: `row_to_col[i]` is the edge user paired with cooperator i.
struct Assignment
{
    std::vector<std::size_t> row_to_col;
    double total_cost = 0.0;
};

inline CostMatrix distance_matrix(const UserLayout &layout)
{
    const std::size_t k = layout.num_pairs();
    if (layout.edge_users.size() != k)
        throw ConfigError("num_pairs", "cooperator and edge user counts differ");
    CostMatrix cost(k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            cost(i, j) = euclidean_distance(layout.cooperator(i), layout.edge_users[j]);
    return cost;
}

/// Minimum-cost perfect matching by the Hungarian method (shortest augmenting
/// paths with row/column potentials), O(K^3).
inline Assignment hungarian(const CostMatrix &cost)
{
    const std::size_t n = cost.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!std::isfinite(cost(i, j)))
                throw std::domain_error("hungarian: cost matrix has non-finite entries");

    constexpr double inf = std::numeric_limits<double>::infinity();
    // 1-based potentials; column 0 is the virtual start of each augmenting path.
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);
    std::vector<double> min_slack(n + 1);
    std::vector<char> used(n + 1);

    for (std::size_t row = 1; row <= n; ++row)
    {
        match[0] = row;
        std::size_t col0 = 0;
        std::fill(min_slack.begin(), min_slack.end(), inf);
        std::fill(used.begin(), used.end(), 0);
        do
        {
            used[col0] = 1;
            const std::size_t row0 = match[col0];
            double delta = inf;
            std::size_t col1 = 0;
            for (std::size_t col = 1; col <= n; ++col)
            {
                if (used[col])
                    continue;
                double slack = cost(row0 - 1, col - 1) - u[row0] - v[col];
                if (slack < min_slack[col])
                {
                    min_slack[col] = slack;
                    way[col] = col0;
                }
                if (min_slack[col] < delta)
                {
                    delta = min_slack[col];
                    col1 = col;
                }
            }
            for (std::size_t col = 0; col <= n; ++col)
            {
                if (used[col])
                {
                    u[match[col]] += delta;
                    v[col] -= delta;
                }
                else
                {
                    min_slack[col] -= delta;
                }
            }
            col0 = col1;
        } while (match[col0] != 0);

        do
        {
            std::size_t col1 = way[col0];
            match[col0] = match[col1];
            col0 = col1;
        } while (col0 != 0);
    }

    Assignment out;
    out.row_to_col.assign(n, 0);
    for (std::size_t col = 1; col <= n; ++col)
        out.row_to_col[match[col] - 1] = col - 1;
    // Sum the chosen entries directly rather than trusting -v[0], so the cost
    // is exact for the returned permutation.
    for (std::size_t i = 0; i < n; ++i)
        out.total_cost += cost(i, out.row_to_col[i]);
    return out;
}

} // namespace thz
