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

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <vector>

namespace bitload {

using BitVector = Eigen::VectorXi;

/// Per-user loading problem: normalised gains delta_i, SNR gap and power budget.
template <typename Scalar = double>
struct GainVector {
    Vector<Scalar> gains;
    Scalar snr_gap = Scalar(1);
    Scalar power_budget = Scalar(1);

    Index size() const { return gains.size(); }

    /// Gamma / delta_i, the energy of the first bit on each subchannel.
    Vector<Scalar> cost_scale() const { return (snr_gap / gains.array()).matrix(); }

    void validate() const
    {
        if (gains.size() == 0)
            throw InvalidParameter("gain vector is empty");
        if (!(gains.array() > Scalar(0)).all())
            throw InvalidParameter("all gains must be positive");
        if (!(snr_gap >= Scalar(1)))
            throw InvalidParameter("SNR gap must be >= 1");
        if (!(power_budget > Scalar(0)))
            throw InvalidParameter("power budget must be positive");
    }
};

/// Tally of arithmetic performed by an allocator. Scanning one entry of the
/// minimum search is charged as two additions (index step and difference
/// test) and one comparison.
struct OpCounts {
    std::int64_t additions = 0;
    std::int64_t subtractions = 0;
    std::int64_t multiplications = 0;
    std::int64_t divisions = 0;
    std::int64_t exponentiations = 0;
    std::int64_t logarithms = 0;
    std::int64_t comparisons = 0;

    OpCounts& operator+=(const OpCounts& o)
    {
        additions += o.additions;
        subtractions += o.subtractions;
        multiplications += o.multiplications;
        divisions += o.divisions;
        exponentiations += o.exponentiations;
        logarithms += o.logarithms;
        comparisons += o.comparisons;
        return *this;
    }

    /// Equality over the six arithmetic classes; search comparisons excluded.
    bool same_arithmetic(const OpCounts& o) const
    {
        return additions == o.additions && subtractions == o.subtractions && multiplications == o.multiplications &&
               divisions == o.divisions && exponentiations == o.exponentiations && logarithms == o.logarithms;
    }

    bool operator==(const OpCounts&) const = default;
};

inline OpCounts operator+(OpCounts a, const OpCounts& b) { return a += b; }

/// Operations executed once (setup) and inside the main loop.
struct OpLedger {
    OpCounts setup;
    OpCounts loop;

    OpCounts total() const { return setup + loop; }
};

/// Table of predicted operation counts for a run of `iterations` passes.
struct PredictedLedger {
    OpCounts setup;
    OpCounts per_iteration;
    std::int64_t iterations = 0;

    OpCounts loop() const
    {
        OpCounts out;
        out.additions = per_iteration.additions * iterations;
        out.subtractions = per_iteration.subtractions * iterations;
        out.multiplications = per_iteration.multiplications * iterations;
        out.divisions = per_iteration.divisions * iterations;
        out.exponentiations = per_iteration.exponentiations * iterations;
        out.logarithms = per_iteration.logarithms * iterations;
        return out;
    }
    OpCounts total() const { return setup + loop(); }
};

template <typename Scalar = double>
struct AllocationResult {
    BitVector bits;              // empty for the continuous allocators
    Vector<Scalar> powers;
    Index iterations = 0;
    OpLedger ledger;
    Scalar capacity = Scalar(0); // bits per symbol: sum(b) or sum log2(1 + p delta / Gamma)

    bool discrete() const { return bits.size() > 0; }
    Scalar total_power() const { return powers.sum(); }
};

/// sum_i log2(1 + p_i delta_i / Gamma)
template <typename Scalar>
Scalar capacity(const Vector<Scalar>& powers, const GainVector<Scalar>& g)
{
    if (powers.size() != g.size())
        throw InvalidParameter("capacity: power and gain vectors differ in length");
    Scalar total(0);
    for (Index i = 0; i < powers.size(); ++i)
        total += std::log2(Scalar(1) + powers[i] * g.gains[i] / g.snr_gap);
    return total;
}

/// Energy needed to add one bit to a subchannel already carrying `bits`: 2^b Gamma / delta.
template <typename Scalar>
Scalar incremental_cost(int bits, Scalar gain, Scalar gap)
{
    return std::ldexp(gap / gain, bits);
}

template <typename Scalar>
AllocationResult<Scalar> equal_power(const GainVector<Scalar>& g)
{
    g.validate();
    AllocationResult<Scalar> out;
    out.powers = Vector<Scalar>::Constant(g.size(), g.power_budget / static_cast<Scalar>(g.size()));
    out.capacity = capacity(out.powers, g);
    return out;
}

/// Water-filling with active-set exclusion: compute the water level over the
/// active set, drop every subchannel whose power would be negative, repeat.
/// `iterations` counts water-level evaluations.
template <typename Scalar>
AllocationResult<Scalar> waterfill(const GainVector<Scalar>& g)
{
    g.validate();
    const Vector<Scalar> floor_level = g.cost_scale();
    const Index m = g.size();
    std::vector<bool> active(static_cast<std::size_t>(m), true);
    Index n_active = m;

    AllocationResult<Scalar> out;
    Scalar level(0);
    for (;;) {
        ++out.iterations;
        Scalar sum = g.power_budget;
        for (Index i = 0; i < m; ++i)
            if (active[static_cast<std::size_t>(i)])
                sum += floor_level[i];
        level = sum / static_cast<Scalar>(n_active);

        Index dropped = 0;
        for (Index i = 0; i < m; ++i) {
            if (active[static_cast<std::size_t>(i)] && level - floor_level[i] < Scalar(0)) {
                active[static_cast<std::size_t>(i)] = false;
                ++dropped;
            }
        }
        if (dropped == 0)
            break;
        n_active -= dropped;
    }

    out.powers.resize(m);
    for (Index i = 0; i < m; ++i)
        out.powers[i] = active[static_cast<std::size_t>(i)] ? level - floor_level[i] : Scalar(0);
    out.capacity = capacity(out.powers, g);
    return out;
}

/// floor(log2(1 + p_i delta_i / Gamma)) of the water-filling powers.
template <typename Scalar>
BitVector wf_initial_bits(const GainVector<Scalar>& g)
{
    const AllocationResult<Scalar> wf = waterfill(g);
    BitVector bits(g.size());
    for (Index i = 0; i < g.size(); ++i) {
        const Scalar snr = wf.powers[i] * g.gains[i] / g.snr_gap;
        bits[i] = snr > Scalar(0) ? static_cast<int>(std::floor(std::log2(Scalar(1) + snr))) : 0;
    }
    return bits;
}

namespace detail {

/// Greedy bit loading over entities with first-bit energy `scale[i]`.
/// Fills `bits` in place and returns the energy spent. Shared by the
/// per-subchannel and per-group allocators.
template <typename Scalar>
Scalar greedy_load(const Vector<Scalar>& scale, Scalar budget, BitVector& bits, int kappa,
                   std::optional<int> max_bits, Index& iterations, OpLedger& ledger)
{
    const Index m = scale.size();
    Vector<Scalar> cost(m);
    for (Index i = 0; i < m; ++i)
        cost[i] = std::ldexp(Scalar(1), bits[i]) * scale[i];
    ledger.setup.exponentiations += m;
    ledger.setup.multiplications += m;

    Scalar allocated(0);
    if (bits.any()) {
        for (Index i = 0; i < m; ++i)
            allocated += cost[i] - scale[i];
        ledger.setup.additions += m;
        ledger.setup.subtractions += m;
    }

    // Warm start overspent: peel off the most expensive last bit until feasible.
    while (allocated > budget) {
        ++iterations;
        Index worst = -1;
        for (Index i = 0; i < m; ++i) {
            if (bits[i] > 0 && (worst < 0 || cost[i] > cost[worst]))
                worst = i;
        }
        ledger.loop.additions += 2 * m;
        ledger.loop.comparisons += m;
        if (worst < 0)
            break;
        --bits[worst];
        cost[worst] = std::ldexp(Scalar(1), bits[worst]) * scale[worst];
        allocated -= cost[worst];
        ledger.loop.exponentiations += 1;
        ledger.loop.multiplications += 1;
        ledger.loop.subtractions += 1;
    }

    auto eligible = [&](Index i) { return !max_bits || bits[i] < *max_bits; };

    if (kappa == 1) {
        while (allocated < budget) {
            ++iterations;
            Index best = -1;
            for (Index i = 0; i < m; ++i) {
                if (eligible(i) && (best < 0 || cost[i] < cost[best]))
                    best = i;
            }
            ledger.loop.additions += 2 * m;
            ledger.loop.comparisons += m;
            if (best < 0)
                break;
            const Scalar next = allocated + cost[best];
            ledger.loop.additions += 1;
            if (next > budget)
                break;
            allocated = next;
            ++bits[best];
            cost[best] = std::ldexp(Scalar(1), bits[best]) * scale[best];
            ledger.loop.exponentiations += 1;
            ledger.loop.multiplications += 1;
        }
        return allocated;
    }

    std::vector<Index> order;
    order.reserve(static_cast<std::size_t>(m));
    while (allocated < budget) {
        ++iterations;
        order.clear();
        for (Index i = 0; i < m; ++i)
            if (eligible(i))
                order.push_back(i);
        const auto take = std::min<std::size_t>(static_cast<std::size_t>(kappa), order.size());
        std::int64_t compared = 0;
        std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(take), order.end(),
                          [&](Index a, Index b) {
                              ++compared;
                              return cost[a] < cost[b] || (cost[a] == cost[b] && a < b);
                          });
        ledger.loop.additions += 2 * m;
        ledger.loop.comparisons += compared;
        if (take == 0)
            break;

        std::size_t admitted = 0;
        for (std::size_t j = 0; j < take; ++j) {
            const Index c = order[j];
            const Scalar next = allocated + cost[c];
            ledger.loop.additions += 1;
            if (next > budget)
                break;
            allocated = next;
            ++bits[c];
            cost[c] = std::ldexp(Scalar(1), bits[c]) * scale[c];
            ledger.loop.exponentiations += 1;
            ledger.loop.multiplications += 1;
            ++admitted;
        }
        if (admitted < take)
            break;
    }
    return allocated;
}

} // namespace detail

/// Greedy bit loading. With no initial bits and kappa = 1 this is the classic
/// single-bit-per-pass loader: pick the cheapest next bit (lowest index on
/// ties), stop before the first bit that would overspend.
///
/// kappa > 1 loads one bit on each of the kappa cheapest distinct subchannels
/// per pass; if only a prefix of the batch fits, that prefix is loaded and
/// the run ends.
///
/// `initial_bits` warm-starts the loader. An infeasible start is repaired by
/// removing the costliest last bit until the budget holds. Those removal
/// passes count toward `iterations`.
template <typename Scalar>
AllocationResult<Scalar> hh_allocate(const GainVector<Scalar>& g, const std::optional<BitVector>& initial_bits = std::nullopt,
                                     int kappa = 1, std::optional<int> max_bits = std::nullopt)
{
    g.validate();
    if (kappa < 1)
        throw InvalidParameter("hh_allocate: kappa must be >= 1");
    if (max_bits && *max_bits < 0)
        throw InvalidParameter("hh_allocate: max_bits must be nonnegative");

    AllocationResult<Scalar> out;
    if (initial_bits) {
        if (initial_bits->size() != g.size())
            throw InvalidParameter("hh_allocate: initial bit vector length mismatch");
        if ((initial_bits->array() < 0).any())
            throw InvalidParameter("hh_allocate: initial bits must be nonnegative");
        out.bits = *initial_bits;
    } else {
        out.bits = BitVector::Zero(g.size());
    }

    const Vector<Scalar> scale = g.cost_scale();
    detail::greedy_load(scale, g.power_budget, out.bits, kappa, max_bits, out.iterations, out.ledger);

    out.powers.resize(g.size());
    for (Index i = 0; i < g.size(); ++i)
        out.powers[i] = (std::ldexp(Scalar(1), out.bits[i]) - Scalar(1)) * scale[i];
    out.capacity = static_cast<Scalar>(out.bits.sum());
    return out;
}

/// Greedy loading warm-started from the floored water-filling bits.
template <typename Scalar>
AllocationResult<Scalar> hh_wf_allocate(const GainVector<Scalar>& g, std::optional<int> max_bits = std::nullopt)
{
    g.validate();
    return hh_allocate(g, std::optional<BitVector>(wf_initial_bits(g)), 1, max_bits);
}

/// Operation counts predicted for a run of N passes over N subchannels.
inline PredictedLedger ledger_predicted(std::int64_t n)
{
    PredictedLedger p;
    if (n <= 0)
        return p;
    p.setup.multiplications = n;
    p.setup.exponentiations = n;
    p.per_iteration.additions = 2 * n + 1;
    p.per_iteration.multiplications = 1;
    p.per_iteration.exponentiations = 1;
    p.iterations = n;
    return p;
}

} // namespace bitload
