// SPDX-License-Identifier: Apache-2.0
//
// bitload: multicarrier bit and power allocation
// Copyright (C) 2026 bitload contributors
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

#include <catch2/catch_amalgamated.hpp>

#include "bitload/metrics.hpp"
#include "support/oracles.hpp"

#include <random>

using namespace bitload;
using Catch::Approx;

TEST_CASE("spectral_efficiency")
{
    CHECK(spectral_efficiency(0.0, 1024) == 0.0);
    CHECK(spectral_efficiency(1024.0, 1024) == 1.0);
    CHECK(spectral_efficiency(6410.0, 1024) == Approx(6.26).margin(0.005));
    CHECK_THROWS_AS(spectral_efficiency(1.0, 0), InvalidParameter);
}

TEST_CASE("sample_stats")
{
    const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
    const auto s = sample_stats(v);
    CHECK(s.mean == 2.5);
    CHECK(s.stddev == Approx(std::sqrt(5.0 / 3.0)));
    CHECK(sample_stats(std::vector<double>{}).mean == 0.0);
    CHECK(sample_stats(std::vector<double>{7.0}).stddev == 0.0);
}

TEST_CASE("tradeoff_factor - corners and midpoint")
{
    TradeoffInputs in{.capacity = 6.0, .iterations = 10.0, .capacity_min = 4.0, .capacity_max = 6.0,
                      .iterations_min = 10.0, .iterations_max = 90.0};
    CHECK(tradeoff_factor(in) == 1.0);
    in.capacity = 4.0;
    in.iterations = 90.0;
    CHECK(tradeoff_factor(in) == 0.0);
    in.capacity = 5.0;
    in.iterations = 50.0;
    CHECK(tradeoff_factor(in) == Approx(0.5));
}

TEST_CASE("tradeoff_factor - affine invariance")
{
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 1000; ++t) {
        TradeoffInputs in{.capacity = u(rng), .iterations = u(rng), .capacity_min = 0.0, .capacity_max = 1.0,
                          .iterations_min = 0.0, .iterations_max = 1.0};
        const double a = 0.1 + 10 * u(rng), b = 100 * u(rng) - 50, c = 0.1 + 10 * u(rng), d = 100 * u(rng);
        TradeoffInputs s{.capacity = a * in.capacity + b, .iterations = c * in.iterations + d,
                         .capacity_min = b, .capacity_max = a + b, .iterations_min = d, .iterations_max = c + d};
        CHECK(tradeoff_factor(s) == Approx(tradeoff_factor(in)).margin(1e-9));
    }
}

TEST_CASE("tradeoff_factor - degenerate ranges")
{
    TradeoffInputs in{.capacity = 1.0, .iterations = 2.0, .capacity_min = 1.0, .capacity_max = 1.0,
                      .iterations_min = 1.0, .iterations_max = 3.0};
    CHECK_THROWS_AS(tradeoff_factor(in), DegenerateRange);
    in.capacity_max = 2.0;
    in.iterations_min = in.iterations_max = 2.0;
    CHECK_THROWS_AS(tradeoff_factor(in), DegenerateRange);
}

TEST_CASE("predicted_runtime")
{
    CHECK(predicted_runtime(1) == 7.0);
    CHECK(predicted_runtime(2) == 22.0);
    std::vector<double> n, t;
    for (Index x = 128; x <= 4096; x *= 2) {
        n.push_back(static_cast<double>(x));
        t.push_back(predicted_runtime(x));
        if (x > 128)
            CHECK(t.back() > t[t.size() - 2]);
    }
    const double slope = oracle::loglog_slope(n, t);
    CHECK(slope >= 2.0);
    CHECK(slope <= 2.2);
    CHECK_THROWS_AS(predicted_runtime(0), InvalidParameter);
}

TEST_CASE("group_correlation - degenerate partitions")
{
    std::mt19937_64 rng(9);
    const auto taps = draw_taps<double>(rng, 10, 5e-6);
    const Eigen::VectorXd f = Eigen::VectorXd::LinSpaced(32, 0.0, 31 * 1953.125);

    GroupPartition<double> singles;
    for (Index i = 0; i < 32; ++i) {
        singles.boundaries.push_back(i);
        singles.member_counts.push_back(1);
    }
    singles.group_gains = Eigen::VectorXd::Ones(32);
    CHECK(group_correlation(singles, taps, f) == 1.0);

    GroupPartition<double> blocks;
    blocks.boundaries = {0, 8, 24};
    blocks.member_counts = {8, 16, 8};
    blocks.group_gains = Eigen::VectorXd::Ones(3);
    auto flat = taps;
    flat.delays.setZero();
    CHECK(group_correlation(blocks, flat, f) == Approx(1.0).epsilon(1e-14));
    CHECK(group_correlation(blocks, flat, f, CorrelationPairs::all_pairs) == Approx(1.0).epsilon(1e-14));

    const double c = group_correlation(blocks, taps, f);
    CHECK(c >= 0.0);
    CHECK(c <= 1.0);

    GroupPartition<double> wrong = blocks;
    wrong.member_counts = {8, 8, 8};
    CHECK_THROWS_AS(group_correlation(wrong, taps, f), InvalidParameter);
}

TEST_CASE("group_correlation - wider groups decorrelate with larger delay spread")
{
    GroupPartition<double> blocks;
    blocks.boundaries = {0};
    blocks.member_counts = {16};
    blocks.group_gains = Eigen::VectorXd::Ones(1);
    const Eigen::VectorXd f = Eigen::VectorXd::LinSpaced(16, 0.0, 15 * 1953.125);
    std::mt19937_64 rng(12);
    double previous = 1.0;
    for (double tau : {1e-6, 2.5e-6, 5e-6, 12e-6, 25e-6}) {
        double sum = 0.0;
        for (int t = 0; t < 500; ++t)
            sum += group_correlation(blocks, draw_taps<double>(rng, 10, tau), f);
        const double avg = sum / 500;
        CHECK(avg <= previous);
        previous = avg;
    }
}
