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
#include "bitload/grouping.hpp"
#include "bitload/harness.hpp"
#include "bitload/metrics.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <string>

namespace props {

using namespace bitload;

struct Tally {
    std::int64_t checked = 0;
    std::int64_t violations = 0;
    std::string first_failure;
};

struct Report {
    std::map<std::string, Tally> by_property;
    std::int64_t cases = 0;

    void record(const std::string& name, bool ok, const std::string& context)
    {
        Tally& t = by_property[name];
        ++t.checked;
        if (!ok) {
            if (t.violations == 0)
                t.first_failure = context;
            ++t.violations;
        }
    }

    std::int64_t violations() const
    {
        std::int64_t v = 0;
        for (const auto& [name, t] : by_property)
            v += t.violations;
        return v;
    }
};

/// Random loading problem. Gains follow a smoothed exponential fade over
/// several decades so that neighbouring subchannels are similar, as in a
/// frequency selective channel.
inline GainVector<double> random_problem(std::mt19937_64& rng, Index max_size = 64)
{
    std::uniform_int_distribution<Index> size(1, max_size);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::exponential_distribution<double> fade(1.0);
    GainVector<double> g;
    const Index m = size(rng);
    g.gains.resize(m);
    const double level = std::pow(10.0, -1.0 + 4.0 * u(rng));
    const double memory = 0.95 * u(rng);
    double state = fade(rng);
    for (Index i = 0; i < m; ++i) {
        state = memory * state + (1.0 - memory) * fade(rng);
        g.gains[i] = level * (state + 1e-4);
    }
    g.snr_gap = 1.0 + 20.0 * u(rng);
    g.power_budget = std::pow(10.0, -1.0 + 3.0 * u(rng));
    return g;
}

inline bool budget_ok(const AllocationResult<double>& r, double budget)
{
    return r.total_power() <= budget * (1.0 + 1e-12) && (r.powers.array() >= 0.0).all();
}

inline bool cost_bits_consistent(const AllocationResult<double>& r, const Vector<double>& scale)
{
    for (Index i = 0; i < r.bits.size(); ++i) {
        const double expected = (std::ldexp(1.0, r.bits[i]) - 1.0) * scale[i];
        if (std::abs(r.powers[i] - expected) > 1e-12 * std::max(1.0, expected))
            return false;
        if ((r.bits[i] == 0) != (r.powers[i] == 0.0))
            return false;
    }
    return true;
}

inline bool partition_valid(const GroupPartition<double>& p, const Vector<double>& gains, double gt, DbScale scale)
{
    if (p.members() != gains.size() || p.boundaries.empty() || p.boundaries.front() != 0)
        return false;
    for (Index g = 0; g < p.size(); ++g) {
        const Index start = p.boundaries[static_cast<std::size_t>(g)];
        const Index count = p.member_counts[static_cast<std::size_t>(g)];
        if (count < 1)
            return false;
        if (g + 1 < p.size() && p.boundaries[static_cast<std::size_t>(g + 1)] != start + count)
            return false;
        const double lead = to_db(gains[start], scale);
        double lo = gains[start];
        for (Index j = 0; j < count; ++j) {
            lo = std::min(lo, gains[start + j]);
            if (std::abs(to_db(gains[start + j], scale) - lead) > gt + 1e-12)
                return false;
        }
        if (p.group_gains[g] != lo)
            return false;
    }
    return true;
}

/// Runs every allocator invariant on `cases` generated problems.
inline Report run_allocator_properties(std::int64_t cases, std::uint64_t seed)
{
    Report rep;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double thresholds[] = {0.1, 0.25, 0.5, 1.0, 5.0};

    for (std::int64_t c = 0; c < cases; ++c) {
        ++rep.cases;
        const GainVector<double> g = random_problem(rng);
        const std::string ctx = "case " + std::to_string(c) + " M=" + std::to_string(g.size());
        const Vector<double> scale = g.cost_scale();
        const double budget = g.power_budget;

        const auto eq = equal_power(g);
        const auto wf = waterfill(g);
        const auto hh = hh_allocate(g);
        const auto hw = hh_wf_allocate(g);

        rep.record("budget safety", budget_ok(eq, budget) && budget_ok(hh, budget) && budget_ok(hw, budget), ctx);
        rep.record("water-filling spends the budget",
                   std::abs(wf.total_power() - budget) <= 1e-9 * budget && (wf.powers.array() >= 0.0).all(), ctx);
        rep.record("cost-bit consistency", cost_bits_consistent(hh, scale) && cost_bits_consistent(hw, scale), ctx);
        rep.record("WF dominance", wf.capacity + 1e-9 >= hh.capacity && wf.capacity + 1e-9 >= hw.capacity, ctx);
        rep.record("EQ below WF", eq.capacity <= wf.capacity + 1e-9 * std::max(1.0, wf.capacity), ctx);
        rep.record("warm start reaches the greedy optimum", hw.bits.sum() == hh.bits.sum(), ctx);

        // kappa doubling
        Index prev_bits = hh.bits.sum(), prev_iter = hh.iterations;
        bool kappa_ok = true;
        for (int kappa : {2, 4, 8, 16}) {
            const auto k = hh_allocate(g, std::nullopt, kappa);
            kappa_ok = kappa_ok && budget_ok(k, budget) && cost_bits_consistent(k, scale);
            kappa_ok = kappa_ok && k.bits.sum() <= prev_bits && k.iterations <= prev_iter;
            prev_bits = k.bits.sum();
            prev_iter = k.iterations;
        }
        rep.record("kappa monotonicity", kappa_ok, ctx);

        // scale equivariance: delta * c and P / c leave the argmin unchanged
        {
            const double factor = std::ldexp(1.0, static_cast<int>(u(rng) * 20.0) - 10);
            GainVector<double> s = g;
            s.gains *= factor;
            s.power_budget /= factor;
            rep.record("scale equivariance", hh_allocate(s).bits == hh.bits, ctx);
        }

        // determinism of the pure allocators
        rep.record("determinism", hh_allocate(g).bits == hh.bits && waterfill(g).powers == wf.powers &&
                                      hh_wf_allocate(g).iterations == hw.iterations,
                   ctx);

        // grouping
        Index prev_groups = g.size() + 1;
        bool coarsening = true;
        for (double gt : thresholds) {
            const auto grp = hh_grp_allocate(g, gt);
            rep.record("partition validity", partition_valid(grp.partition, g.gains, gt, DbScale::amplitude), ctx);
            rep.record("HH-GRP budget safety", budget_ok(grp.result, budget), ctx);
            rep.record("HH-GRP conservative", grp.result.capacity <= hh.capacity &&
                                                  grp.true_gain_capacity + 1e-9 >= grp.result.capacity,
                       ctx);
            coarsening = coarsening && grp.partition.size() <= prev_groups;
            prev_groups = grp.partition.size();
        }
        rep.record("monotone coarsening", coarsening, ctx);
        {
            const auto pw = group_subcarriers(g.gains, thresholds[c % 5], DbScale::power);
            rep.record("partition validity", partition_valid(pw, g.gains, thresholds[c % 5], DbScale::power), ctx);
        }

        // degenerate thresholds
        {
            const auto tiny = hh_grp_allocate(g, 1e-12);
            bool distinct = true;
            for (Index i = 1; i < g.size(); ++i)
                distinct = distinct && g.gains[i] != g.gains[i - 1];
            if (distinct)
                rep.record("degenerate G_T reductions",
                           tiny.partition.size() == g.size() && tiny.result.bits == hh.bits, ctx);

            const auto huge = hh_grp_allocate(g, 1e6);
            GainVector<double> one;
            one.gains = Vector<double>::Constant(1, g.gains.minCoeff() / static_cast<double>(g.size()));
            one.snr_gap = g.snr_gap;
            one.power_budget = budget;
            const auto single = hh_allocate(one);
            rep.record("degenerate G_T reductions",
                       huge.partition.size() == 1 && (huge.result.bits.array() == single.bits[0]).all(), ctx);
        }
    }
    return rep;
}

/// Invariants on the channel, metrics and harness layers.
inline Report run_system_properties(std::int64_t cases, std::uint64_t seed)
{
    Report rep;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    SystemParams sys;
    sys.n_subcarriers = 64;
    sys.n_users = 4;
    for (std::int64_t c = 0; c < cases; ++c) {
        ++rep.cases;
        const std::string ctx = "case " + std::to_string(c);
        const double tau = 1e-6 + 24e-6 * u(rng);
        const auto taps = draw_taps<double>(rng, 1 + static_cast<Index>(u(rng) * 12), tau);
        const double gap = 1e6 * u(rng);
        const double rho = std::abs(subchannel_correlation(taps.powers, taps.delays, gap));
        rep.record("correlation bounded", rho <= 1.0 + 1e-12, ctx);
        rep.record("correlation at zero gap",
                   subchannel_correlation(taps.powers, taps.delays, 0.0) == std::complex<double>(1.0, 0.0), ctx);

        Eigen::VectorXd gains(sys.block_size());
        for (Index i = 0; i < gains.size(); ++i)
            gains[i] = 1e2 * (0.05 + u(rng));
        const auto part = group_subcarriers(gains, 0.5 + 2.0 * u(rng));
        const double gc = group_correlation(part, taps, block_frequencies<double>(sys, 0));
        rep.record("group correlation in [0,1]", gc >= 0.0 && gc <= 1.0, ctx);

        TradeoffInputs in{.capacity = u(rng), .iterations = u(rng), .capacity_min = 0.0, .capacity_max = 1.0,
                          .iterations_min = 0.0, .iterations_max = 1.0};
        const double z = tradeoff_factor(in);
        rep.record("tradeoff factor in [0,1]", z >= 0.0 && z <= 1.0, ctx);

        const Index n = 1 + static_cast<Index>(u(rng) * 5000);
        rep.record("predicted runtime increasing", predicted_runtime(n + 1) > predicted_runtime(n), ctx);
    }

    // paired trials: determinism and per-trial orderings on realized channels
    Scenario s;
    s.system = sys;
    s.system.noise_density = kCalibratedNoiseDensity;
    s.seed = seed;
    const auto allocs = s.allocators();
    const auto point = sweep_points(s)[0];
    const Index trials = std::max<std::int64_t>(1, cases / 100);
    for (Index t = 0; t < trials; ++t) {
        const std::string ctx = "trial " + std::to_string(t);
        const auto a = run_trial(s, point, allocs, t);
        const auto b = run_trial(s, point, allocs, t);
        bool same = a.seed == b.seed;
        for (std::size_t i = 0; i < allocs.size(); ++i)
            same = same && a.allocators[i].user_capacity == b.allocators[i].user_capacity &&
                   a.allocators[i].user_iterations == b.allocators[i].user_iterations;
        rep.record("trial determinism", same, ctx);

        double hh = 0.0, wf = 0.0;
        for (std::size_t i = 0; i < allocs.size(); ++i) {
            if (allocs[i].algorithm == Algorithm::hh)
                hh = a.allocators[i].spectral_efficiency;
            if (allocs[i].algorithm == Algorithm::wf)
                wf = a.allocators[i].spectral_efficiency;
        }
        bool order = wf >= hh;
        for (std::size_t i = 0; i < allocs.size(); ++i)
            if (allocs[i].algorithm == Algorithm::hh_k || allocs[i].algorithm == Algorithm::hh_grp)
                order = order && a.allocators[i].spectral_efficiency <= hh;
        rep.record("per-trial capacity ordering", order, ctx);
    }
    return rep;
}

} // namespace props
