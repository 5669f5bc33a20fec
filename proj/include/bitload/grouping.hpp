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

#include "bitload/alloc.hpp"
#include "bitload/error.hpp"

#include <cmath>
#include <vector>

namespace bitload {

/// Decibel mapping applied to the normalised gain before the threshold test.
enum class DbScale {
    power,     ///< 10 log10(delta)
    amplitude  ///< 20 log10(delta)
};

template <typename Scalar>
Scalar to_db(Scalar gain, DbScale scale)
{
    return (scale == DbScale::power ? Scalar(10) : Scalar(20)) * std::log10(gain);
}

template <typename Scalar>
Scalar from_db(Scalar db, DbScale scale)
{
    return std::pow(Scalar(10), db / (scale == DbScale::power ? Scalar(10) : Scalar(20)));
}

/// Contiguous cover of 0..M-1. Group g starts at boundaries[g] (its leader)
/// and holds member_counts[g] subchannels; group_gains[g] is the smallest
/// member gain.
template <typename Scalar = double>
struct GroupPartition {
    std::vector<Index> boundaries;
    std::vector<Index> member_counts;
    Vector<Scalar> group_gains;

    Index size() const { return static_cast<Index>(boundaries.size()); }

    Index members() const
    {
        Index total = 0;
        for (Index c : member_counts)
            total += c;
        return total;
    }

    /// group index of every subchannel
    std::vector<Index> membership() const
    {
        std::vector<Index> out;
        out.reserve(static_cast<std::size_t>(members()));
        for (Index g = 0; g < size(); ++g)
            out.insert(out.end(), static_cast<std::size_t>(member_counts[static_cast<std::size_t>(g)]), g);
        return out;
    }
};

/// Single-pass threshold grouping. Subchannel 0 leads the first group; each
/// next subchannel joins the current group when its dB gain lies within
/// [g_c - G_T, g_c + G_T] of the leader's, otherwise it opens a new group
/// and becomes its leader.
template <typename Scalar>
GroupPartition<Scalar> group_subcarriers(const Vector<Scalar>& gains, Scalar gain_threshold_db,
                                         DbScale scale = DbScale::amplitude)
{
    if (gains.size() == 0)
        throw InvalidParameter("group_subcarriers: empty gain vector");
    if (!(gain_threshold_db > Scalar(0)))
        throw InvalidParameter("group_subcarriers: gain threshold must be positive");
    if (!(gains.array() > Scalar(0)).all())
        throw InvalidParameter("group_subcarriers: gains must be positive");

    GroupPartition<Scalar> out;
    std::vector<Scalar> minima;
    out.boundaries.push_back(0);
    out.member_counts.push_back(1);
    minima.push_back(gains[0]);
    Scalar leader_db = to_db(gains[0], scale);

    for (Index i = 1; i < gains.size(); ++i) {
        const Scalar db = to_db(gains[i], scale);
        if (db >= leader_db - gain_threshold_db && db <= leader_db + gain_threshold_db) {
            ++out.member_counts.back();
            minima.back() = std::min(minima.back(), gains[i]);
        } else {
            out.boundaries.push_back(i);
            out.member_counts.push_back(1);
            minima.push_back(gains[i]);
            leader_db = db;
        }
    }
    out.group_gains = Eigen::Map<const Vector<Scalar>>(minima.data(), static_cast<Index>(minima.size()));
    return out;
}

template <typename Scalar = double>
struct GroupedAllocation {
    AllocationResult<Scalar> result;  // per-subchannel bits and powers, group-level iterations
    GroupPartition<Scalar> partition;
    /// sum_i log2(1 + p_i delta_i / Gamma) at the true member gains. Never
    /// below result.capacity, since every member gain is >= its group gain.
    Scalar true_gain_capacity = Scalar(0);
};

/// Greedy loading over groups. One group bit is one bit on every member, at
/// energy member_count * 2^b * Gamma / delta_group. Member powers are charged
/// at the group gain so the budget holds for the gains the loader used.
template <typename Scalar>
GroupedAllocation<Scalar> hh_grp_allocate(const GainVector<Scalar>& g, Scalar gain_threshold_db, int kappa = 1,
                                          DbScale scale = DbScale::amplitude)
{
    g.validate();
    if (kappa < 1)
        throw InvalidParameter("hh_grp_allocate: kappa must be >= 1");

    GroupedAllocation<Scalar> out;
    out.partition = group_subcarriers(g.gains, gain_threshold_db, scale);
    const Index n_groups = out.partition.size();

    Vector<Scalar> group_scale(n_groups);
    Vector<Scalar> member_scale(n_groups);
    for (Index k = 0; k < n_groups; ++k) {
        member_scale[k] = g.snr_gap / out.partition.group_gains[k];
        group_scale[k] = static_cast<Scalar>(out.partition.member_counts[static_cast<std::size_t>(k)]) * member_scale[k];
    }

    BitVector group_bits = BitVector::Zero(n_groups);
    AllocationResult<Scalar>& r = out.result;
    detail::greedy_load(group_scale, g.power_budget, group_bits, kappa, std::nullopt, r.iterations, r.ledger);

    r.bits.resize(g.size());
    r.powers.resize(g.size());
    Index i = 0;
    for (Index k = 0; k < n_groups; ++k) {
        const Scalar p = (std::ldexp(Scalar(1), group_bits[k]) - Scalar(1)) * member_scale[k];
        for (Index j = 0; j < out.partition.member_counts[static_cast<std::size_t>(k)]; ++j, ++i) {
            r.bits[i] = group_bits[k];
            r.powers[i] = p;
        }
    }
    r.capacity = static_cast<Scalar>(r.bits.sum());
    out.true_gain_capacity = capacity(r.powers, g);
    return out;
}

} // namespace bitload
