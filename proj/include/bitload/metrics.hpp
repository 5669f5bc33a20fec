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

#pragma once

#include "bitload/channel.hpp"
#include "bitload/error.hpp"
#include "bitload/grouping.hpp"

#include <cmath>
#include <optional>
#include <span>
#include <string>

namespace bitload {

/// One aggregated output row: averages over trials for one allocator
/// configuration at one sweep point.
struct MetricsSummary {
    std::string scenario_id;
    std::string algorithm;
    std::string param;
    Index n_subcarriers = 0;
    double tau_max_us = 0.0;
    Index trials = 0;
    double avg_capacity = 0.0;  // bits/s/Hz
    double std_capacity = 0.0;
    std::optional<double> avg_iterations;
    std::optional<double> std_iterations;
    std::optional<double> avg_groups;
    std::optional<double> avg_group_corr;
    std::optional<double> zeta;
};

struct TradeoffInputs {
    double capacity = 0.0;
    double iterations = 0.0;
    double capacity_min = 0.0;
    double capacity_max = 0.0;
    double iterations_min = 0.0;
    double iterations_max = 0.0;
};

/// Mean and sample standard deviation, summed in index order.
struct SampleStats {
    double mean = 0.0;
    double stddev = 0.0;
};

inline SampleStats sample_stats(std::span<const double> values)
{
    SampleStats s;
    if (values.empty())
        return s;
    double sum = 0.0;
    for (double v : values)
        sum += v;
    s.mean = sum / static_cast<double>(values.size());
    if (values.size() > 1) {
        double sq = 0.0;
        for (double v : values)
            sq += (v - s.mean) * (v - s.mean);
        s.stddev = std::sqrt(sq / static_cast<double>(values.size() - 1));
    }
    return s;
}

/// Loaded bits per OFDMA symbol divided by the subchannel count.
inline double spectral_efficiency(double total_bits, Index n_subcarriers)
{
    if (n_subcarriers < 1)
        throw InvalidParameter("spectral_efficiency: N must be >= 1");
    return total_bits / static_cast<double>(n_subcarriers);
}

/// zeta = (1 + (C - Cmin)/(Cmax - Cmin) - (I - Imin)/(Imax - Imin)) / 2
inline double tradeoff_factor(const TradeoffInputs& in)
{
    const double c_range = in.capacity_max - in.capacity_min;
    const double i_range = in.iterations_max - in.iterations_min;
    if (!(c_range > 0.0))
        throw DegenerateRange("tradeoff_factor: capacity range is empty");
    if (!(i_range > 0.0))
        throw DegenerateRange("tradeoff_factor: iteration range is empty");
    if (in.capacity < in.capacity_min || in.capacity > in.capacity_max || in.iterations < in.iterations_min ||
        in.iterations > in.iterations_max)
        throw InvalidParameter("tradeoff_factor: point outside its extrema");
    return 0.5 * (1.0 + (in.capacity - in.capacity_min) / c_range - (in.iterations - in.iterations_min) / i_range);
}

/// Closed-form running time N^2 log2 N + 2 N^2 + 5 N of the greedy loader.
inline double predicted_runtime(Index n)
{
    if (n < 1)
        throw InvalidParameter("predicted_runtime: N must be >= 1");
    const double x = static_cast<double>(n);
    return x * x * std::log2(x) + 2.0 * x * x + 5.0 * x;
}

enum class CorrelationPairs {
    leader,    ///< leader against each other member
    all_pairs  ///< every unordered member pair
};

/// Average |rho| inside groups, weighted by member count. Singleton groups count as 1.
template <typename Scalar>
Scalar group_correlation(const GroupPartition<Scalar>& partition, const TapSet<Scalar>& taps,
                         const Vector<Scalar>& frequencies, CorrelationPairs pairs = CorrelationPairs::leader)
{
    if (partition.members() != frequencies.size())
        throw InvalidParameter("group_correlation: partition does not cover the frequency list");

    Scalar weighted(0);
    Index total_members = 0;
    for (Index g = 0; g < partition.size(); ++g) {
        const Index start = partition.boundaries[static_cast<std::size_t>(g)];
        const Index count = partition.member_counts[static_cast<std::size_t>(g)];
        Scalar avg(1);
        if (count > 1) {
            Scalar sum(0);
            Index n_pairs = 0;
            if (pairs == CorrelationPairs::leader) {
                for (Index j = 1; j < count; ++j, ++n_pairs)
                    sum += std::abs(subchannel_correlation(taps.powers, taps.delays,
                                                           frequencies[start + j] - frequencies[start]));
            } else {
                for (Index a = 0; a < count; ++a)
                    for (Index b = a + 1; b < count; ++b, ++n_pairs)
                        sum += std::abs(subchannel_correlation(taps.powers, taps.delays,
                                                               frequencies[start + b] - frequencies[start + a]));
            }
            avg = sum / static_cast<Scalar>(n_pairs);
        }
        weighted += avg * static_cast<Scalar>(count);
        total_members += count;
    }
    // |rho| <= 1 can be exceeded by an ulp after summation.
    return std::min(Scalar(1), weighted / static_cast<Scalar>(total_members));
}

} // namespace bitload
