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

#include "bitload/harness.hpp"

#include "bitload/alloc.hpp"
#include "bitload/error.hpp"
#include "bitload/grouping.hpp"

#include <atomic>
#include <cstdio>
#include <random>
#include <thread>

namespace bitload {

std::uint64_t mix64(std::uint64_t x)
{
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

std::uint64_t trial_seed(std::uint64_t master_seed, Index trial)
{
    return mix64(master_seed + static_cast<std::uint64_t>(trial + 1) * 0x9e3779b97f4a7c15ULL);
}

namespace {

std::string point_id(Index n, double tau)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "N%lld_tau%gus", static_cast<long long>(n), tau * 1e6);
    return buf;
}

} // namespace

std::vector<SweepPoint> sweep_points(const Scenario& s)
{
    const std::vector<Index> ns = s.sweep_n.empty() ? std::vector<Index>{s.system.n_subcarriers} : s.sweep_n;
    const std::vector<double> taus =
        s.sweep_tau_max_s.empty() ? std::vector<double>{s.system.tau_max} : s.sweep_tau_max_s;
    std::vector<SweepPoint> out;
    for (Index n : ns)
        for (double tau : taus)
            out.push_back({n, tau, point_id(n, tau)});
    return out;
}

TrialRecord run_trial(const Scenario& s, const SweepPoint& point, const std::vector<AllocatorConfig>& allocators,
                      Index trial)
{
    SystemParams sys = s.system;
    sys.n_subcarriers = point.n_subcarriers;
    sys.tau_max = point.tau_max;

    TrialRecord rec;
    rec.trial = trial;
    rec.seed = trial_seed(s.seed, trial);
    std::mt19937_64 rng(rec.seed);
    const ChannelRealization<double> channel = realize_channel<double>(sys, rng);
    const double gap = s.snr_gap();
    const Index users = sys.n_users;

    rec.allocators.resize(allocators.size());
    for (std::size_t a = 0; a < allocators.size(); ++a) {
        const AllocatorConfig& cfg = allocators[a];
        AllocatorTrial& out = rec.allocators[a];
        out.user_capacity.resize(static_cast<std::size_t>(users));
        out.user_iterations.resize(static_cast<std::size_t>(users));
        out.user_power.resize(static_cast<std::size_t>(users));

        double bits = 0.0;
        double iterations = 0.0;
        double corr = 0.0;
        for (Index k = 0; k < users; ++k) {
            GainVector<double> g{channel.gains.row(k).transpose(), gap, s.pmax_w};
            AllocationResult<double> r;
            switch (cfg.algorithm) {
                case Algorithm::eq: r = equal_power(g); break;
                case Algorithm::wf: r = waterfill(g); break;
                case Algorithm::hh: r = hh_allocate(g); break;
                case Algorithm::hh_wf: r = hh_wf_allocate(g); break;
                case Algorithm::hh_k: r = hh_allocate(g, std::nullopt, cfg.kappa); break;
                case Algorithm::hh_grp: {
                    GroupedAllocation<double> grp = hh_grp_allocate(g, cfg.gt_db);
                    out.total_groups += grp.partition.size();
                    corr += group_correlation(grp.partition, channel.taps[static_cast<std::size_t>(k)],
                                              block_frequencies<double>(sys, k));
                    r = std::move(grp.result);
                    break;
                }
            }
            const auto ku = static_cast<std::size_t>(k);
            out.user_capacity[ku] = r.capacity;
            out.user_iterations[ku] = r.iterations;
            out.user_power[ku] = r.total_power();
            bits += r.capacity;
            iterations += static_cast<double>(r.iterations);
        }
        out.spectral_efficiency = spectral_efficiency(bits, sys.n_subcarriers);
        out.mean_iterations = iterations / static_cast<double>(users);
        out.mean_group_corr = cfg.algorithm == Algorithm::hh_grp ? corr / static_cast<double>(users) : 0.0;
    }
    return rec;
}

namespace {

std::vector<TrialRecord> run_trials(const Scenario& s, const SweepPoint& point,
                                    const std::vector<AllocatorConfig>& allocators, unsigned threads)
{
    std::vector<TrialRecord> records(static_cast<std::size_t>(s.trials));
    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<Index>(threads, s.trials));

    if (threads <= 1) {
        for (Index t = 0; t < s.trials; ++t)
            records[static_cast<std::size_t>(t)] = run_trial(s, point, allocators, t);
        return records;
    }

    std::atomic<Index> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < threads; ++w) {
            pool.emplace_back([&] {
                for (Index t = next++; t < s.trials && !failed; t = next++) {
                    try {
                        records[static_cast<std::size_t>(t)] = run_trial(s, point, allocators, t);
                    } catch (...) {
                        if (!failed.exchange(true))
                            failure = std::current_exception();
                    }
                }
            });
        }
    }
    if (failure)
        std::rethrow_exception(failure);
    return records;
}

bool is_discrete(Algorithm a)
{
    return a != Algorithm::eq && a != Algorithm::wf;
}

} // namespace

ScenarioRun run_scenario_detailed(const Scenario& s, const RunOptions& options)
{
    s.validate();
    const std::vector<AllocatorConfig> allocators = s.allocators();
    ScenarioRun run;

    for (const SweepPoint& point : sweep_points(s)) {
        std::vector<TrialRecord> records = run_trials(s, point, allocators, options.threads);

        for (std::size_t a = 0; a < allocators.size(); ++a) {
            const AllocatorConfig& cfg = allocators[a];
            std::vector<double> cap, iter, groups, corr;
            cap.reserve(records.size());
            for (const TrialRecord& rec : records) {
                const AllocatorTrial& t = rec.allocators[a];
                cap.push_back(t.spectral_efficiency);
                iter.push_back(t.mean_iterations);
                groups.push_back(static_cast<double>(t.total_groups));
                corr.push_back(t.mean_group_corr);
            }
            MetricsSummary m;
            m.scenario_id = point.id;
            m.algorithm = cfg.name();
            m.param = cfg.param();
            m.n_subcarriers = point.n_subcarriers;
            m.tau_max_us = point.tau_max * 1e6;
            m.trials = s.trials;
            const SampleStats c = sample_stats(cap);
            m.avg_capacity = c.mean;
            m.std_capacity = c.stddev;
            if (is_discrete(cfg.algorithm)) {
                const SampleStats i = sample_stats(iter);
                m.avg_iterations = i.mean;
                m.std_iterations = i.stddev;
            }
            if (cfg.algorithm == Algorithm::hh_grp) {
                m.avg_groups = sample_stats(groups).mean;
                m.avg_group_corr = sample_stats(corr).mean;
            }
            run.summaries.push_back(std::move(m));
        }

        PointRun pr{point, {}};
        if (options.keep_records)
            pr.records = std::move(records);
        run.points.push_back(std::move(pr));
    }
    return run;
}

std::vector<MetricsSummary> run_scenario(const Scenario& s, const RunOptions& options)
{
    return run_scenario_detailed(s, options).summaries;
}

Eigen::MatrixXd zeta_surface(const Eigen::MatrixXd& capacity, const Eigen::MatrixXd& iterations)
{
    if (capacity.rows() != iterations.rows() || capacity.cols() != iterations.cols())
        throw InvalidParameter("zeta_surface: grid shapes differ");
    TradeoffInputs in;
    in.capacity_min = capacity.minCoeff();
    in.capacity_max = capacity.maxCoeff();
    in.iterations_min = iterations.minCoeff();
    in.iterations_max = iterations.maxCoeff();

    Eigen::MatrixXd zeta(capacity.rows(), capacity.cols());
    for (Index r = 0; r < capacity.rows(); ++r)
        for (Index c = 0; c < capacity.cols(); ++c) {
            in.capacity = capacity(r, c);
            in.iterations = iterations(r, c);
            zeta(r, c) = tradeoff_factor(in);
        }
    return zeta;
}

TradeoffSurface run_tradeoff_grid(const Scenario& base, const RunOptions& options)
{
    if (base.sweep_tau_max_s.size() < 2 || base.gt_db_list.size() < 2)
        throw ConfigError({"tradeoff grid needs at least two sweep_tau_max_s values and two gt_db_list values"});

    Scenario s = base;
    s.algorithms = {Algorithm::hh_grp};
    s.sweep_n.clear();
    const std::vector<MetricsSummary> rows = run_scenario(s, options);

    TradeoffSurface out;
    out.tau_max = s.sweep_tau_max_s;
    out.gt_db = s.gt_db_list;
    const auto n_rows = static_cast<Index>(out.tau_max.size());
    const auto n_cols = static_cast<Index>(out.gt_db.size());
    out.capacity.resize(n_rows, n_cols);
    out.iterations.resize(n_rows, n_cols);
    out.groups.resize(n_rows, n_cols);
    out.correlation.resize(n_rows, n_cols);

    // rows come out tau-major, G_T-minor
    for (Index r = 0; r < n_rows; ++r)
        for (Index c = 0; c < n_cols; ++c) {
            const MetricsSummary& m = rows[static_cast<std::size_t>(r * n_cols + c)];
            out.capacity(r, c) = m.avg_capacity;
            out.iterations(r, c) = m.avg_iterations.value_or(0.0);
            out.groups(r, c) = m.avg_groups.value_or(0.0);
            out.correlation(r, c) = m.avg_group_corr.value_or(0.0);
        }

    out.zeta = zeta_surface(out.capacity, out.iterations);
    out.rows = rows;
    for (Index r = 0; r < n_rows; ++r) {
        Index best = 0;
        out.zeta.row(r).maxCoeff(&best);
        out.best_gt.push_back(best);
        for (Index c = 0; c < n_cols; ++c)
            out.rows[static_cast<std::size_t>(r * n_cols + c)].zeta = out.zeta(r, c);
    }
    return out;
}

} // namespace bitload
