// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <chrono>
#include <numbers>
#include <set>

#include "oracles.hpp"
#include "thz/pairing.hpp"

using namespace thz;

namespace
{

CostMatrix from_rows(const std::vector<std::vector<double>> &rows)
{
    CostMatrix m(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows.size(); ++j)
            m(i, j) = rows[i][j];
    return m;
}

std::vector<std::vector<double>> random_rows(RandomStream &s, std::size_t n, bool integral)
{
    std::vector<std::vector<double>> rows(n, std::vector<double>(n));
    for (auto &r : rows)
        for (auto &v : r)
            v = integral ? static_cast<double>(s.next_u64() % 10) : s.uniform(0.0, 10.0);
    return rows;
}

bool is_permutation(const std::vector<std::size_t> &p)
{
    std::set<std::size_t> seen(p.begin(), p.end());
    return seen.size() == p.size() && (p.empty() || *seen.rbegin() == p.size() - 1);
}

double time_solve(std::size_t n, std::uint64_t seed)
{
    RandomStream s(seed);
    CostMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m(i, j) = s.uniform(0.0, 10.0);
    auto t0 = std::chrono::steady_clock::now();
    auto a = hungarian(m);
    auto t1 = std::chrono::steady_clock::now();
    EXPECT_TRUE(is_permutation(a.row_to_col));
    return std::chrono::duration<double>(t1 - t0).count();
}

} // namespace

TEST(DistanceMatrix, SinglePair)
{
    UserLayout l;
    l.center_users = {{3.5, 0.2}};
    l.edge_users = {{5.0, 0.9}};
    l.cooperator_indices = {0};
    const auto m = distance_matrix(l);
    ASSERT_EQ(m.size(), 1u);
    EXPECT_EQ(m(0, 0), euclidean_distance(l.center_users[0], l.edge_users[0]));
}

TEST(DistanceMatrix, MirrorSymmetricLayout)
{
    // Mirror across the sector bisector pi/6: angle -> pi/3 - angle.
    const double bisector = std::numbers::pi / 6.0;
    UserLayout l;
    l.center_users = {{3.4, bisector - 0.3}, {3.8, bisector + 0.3}};
    l.edge_users = {{5.0, bisector - 0.5}, {6.0, bisector + 0.5}};
    l.cooperator_indices = {0, 1};
    UserLayout mirrored = l;
    for (auto *v : {&mirrored.center_users, &mirrored.edge_users})
        for (auto &u : *v)
            u.angle_rad = 2 * bisector - u.angle_rad;
    const auto a = distance_matrix(l);
    const auto b = distance_matrix(mirrored);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            EXPECT_NEAR(a(i, j), b(i, j), 1e-12);
}

TEST(DistanceMatrix, SpotEntriesMatchLawOfCosines)
{
    UserLayout l;
    l.center_users = {{3.0, 0.0}, {3.6, 0.5}};
    l.edge_users = {{4.0, std::numbers::pi / 3}, {6.5, -0.4}};
    l.cooperator_indices = {0, 1};
    const auto m = distance_matrix(l);
    EXPECT_NEAR(m(0, 0), std::sqrt(13.0), 1e-14);
    const double want = std::sqrt(3.6 * 3.6 + 6.5 * 6.5 - 2 * 3.6 * 6.5 * std::cos(0.9));
    EXPECT_NEAR(m(1, 1), want, 1e-13);
}

TEST(DistanceMatrix, CountMismatch)
{
    UserLayout l;
    l.center_users = {{3.0, 0.0}};
    l.edge_users = {{5.0, 0.0}, {6.0, 0.0}};
    l.cooperator_indices = {0};
    EXPECT_THROW(distance_matrix(l), ConfigError);
}

TEST(Hungarian, DiagonalOptimum)
{
    const auto a = hungarian(from_rows({{0, 3, 4}, {2, 0, 7}, {1, 5, 0}}));
    EXPECT_EQ(a.row_to_col, (std::vector<std::size_t>{0, 1, 2}));
    EXPECT_EQ(a.total_cost, 0.0);
}

TEST(Hungarian, ThreeByThreeExample)
{
    const std::vector<std::vector<double>> rows{{4, 1, 3}, {2, 0, 5}, {3, 2, 2}};
    ASSERT_EQ(oracle::brute_force_assignment(rows), 5.0);
    const auto a = hungarian(from_rows(rows));
    EXPECT_EQ(a.row_to_col, (std::vector<std::size_t>{1, 0, 2}));
    EXPECT_EQ(a.total_cost, 5.0);
}

TEST(Hungarian, EmptyAndSingleton)
{
    EXPECT_TRUE(hungarian(CostMatrix(0)).row_to_col.empty());
    const auto a = hungarian(from_rows({{2.5}}));
    EXPECT_EQ(a.row_to_col, (std::vector<std::size_t>{0}));
    EXPECT_EQ(a.total_cost, 2.5);
}

TEST(Hungarian, MatchesBruteForce)
{
    RandomStream s(1955);
    for (int trial = 0; trial < 500; ++trial)
    {
        const std::size_t n = 1 + s.next_u64() % 8;
        const auto rows = random_rows(s, n, trial % 2 == 0);
        const auto a = hungarian(from_rows(rows));
        ASSERT_TRUE(is_permutation(a.row_to_col));
        ASSERT_EQ(a.total_cost, oracle::brute_force_assignment(rows)) << "trial " << trial << " n=" << n;
    }
}

TEST(Hungarian, RowShiftInvariance)
{
    RandomStream s(77);
    for (int trial = 0; trial < 100; ++trial)
    {
        const std::size_t n = 2 + s.next_u64() % 7;
        auto rows = random_rows(s, n, true);
        const double base = hungarian(from_rows(rows)).total_cost;
        const std::size_t row = s.next_u64() % n;
        for (auto &v : rows[row])
            v += 3.0;
        ASSERT_EQ(hungarian(from_rows(rows)).total_cost - 3.0, base);
    }
}

TEST(Hungarian, NonFiniteRejected)
{
    auto m = from_rows({{1, 2}, {3, std::numeric_limits<double>::quiet_NaN()}});
    EXPECT_THROW(hungarian(m), std::domain_error);
    m(1, 1) = std::numeric_limits<double>::infinity();
    EXPECT_THROW(hungarian(m), std::domain_error);
}

TEST(Hungarian, CubicScaling)
{
    auto median3 = [](std::size_t n) {
        std::vector<double> t{time_solve(n, 1), time_solve(n, 2), time_solve(n, 3)};
        std::sort(t.begin(), t.end());
        return t[1];
    };
    const double t256 = median3(256);
    const double t512 = median3(512);
    EXPECT_LT(t512, 1.0);
    const double ratio = t512 / t256;
    RecordProperty("growth_ratio_256_to_512", std::to_string(ratio));
    EXPECT_GT(ratio, 4.0);
    EXPECT_LT(ratio, 12.0);
}
