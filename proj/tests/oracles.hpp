// SPDX-License-Identifier: Apache-2.0
//
// Independent reference computations used only by the tests. Nothing here
// calls into the library's implementation of the quantity being checked.

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <vector>

namespace oracle
{

/// min over all permutations, summing in row order.
inline double brute_force_assignment(const std::vector<std::vector<double>> &cost)
{
    const std::size_t n = cost.size();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do
    {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            s += cost[i][perm[i]];
        best = std::min(best, s);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

/// |sin(N x / 2) / (N sin(x / 2))|, x = pi (sin(theta_u) - sin(theta_b)).
inline double fejer_similarity(int n, double theta_user, double theta_beam)
{
    const double x = std::numbers::pi * (std::sin(theta_user) - std::sin(theta_beam));
    const double den = n * std::sin(x / 2.0);
    if (std::abs(den) < 1e-9)
    {
        // Removable singularity; a second-order expansion keeps 1e-12 accuracy near it.
        const double eps = x - 2.0 * std::numbers::pi * std::round(x / (2.0 * std::numbers::pi));
        return 1.0 - (static_cast<double>(n) * n - 1.0) * eps * eps / 24.0;
    }
    return std::abs(std::sin(n * x / 2.0) / den);
}

/// Cooperator-side fraction from equating the SIC-stage SINR with the relayed
/// SNR, solved directly: (X - gamma I) / (X (1 + gamma)), X = p A, I = kappa p_u s + sigma_i^2.
inline double beta_center_direct(double p, double pu, double a, double g, double s, double sigma_i, double sigma_j,
                                 double kappa)
{
    const double x = p * a;
    const double gamma = pu * g / sigma_j;
    const double interference = kappa * pu * s + sigma_i;
    return (x - gamma * interference) / (x * (1.0 + gamma));
}

struct Sinrs
{
    double edge_at_center, center_own, edge;
};

inline Sinrs sinrs_from_scratch(double p, double pu, double beta_i, double a, double g, double s, double sigma_i,
                                double sigma_j, double kappa)
{
    const double beta_j = 1.0 - beta_i;
    return {beta_j * p * a / (beta_i * p * a + pu * kappa * s + sigma_i), beta_i * p * a / (pu * kappa * s + sigma_i),
            pu * g / sigma_j};
}

inline double rel_err(double got, double want)
{
    if (want == 0.0)
        return std::abs(got);
    return std::abs(got - want) / std::abs(want);
}

} // namespace oracle
