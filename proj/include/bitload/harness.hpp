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

#include "bitload/metrics.hpp"
#include "bitload/scenario.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

namespace bitload {

struct RunOptions {
    unsigned threads = 0;       // 0 = hardware concurrency
    bool keep_records = false;  // retain per-trial records for the full dump
};

/// Per-allocator outcome of one trial, aggregated over users.
struct AllocatorTrial {
    double spectral_efficiency = 0.0;  // sum of user capacities / N
    double mean_iterations = 0.0;      // over users
    Index total_groups = 0;            // over users, HH-GRP only
    double mean_group_corr = 0.0;      // over users, HH-GRP only
    std::vector<double> user_capacity; // bits per symbol
    std::vector<Index> user_iterations;
    std::vector<double> user_power;
};

/// Everything one trial produced. All allocators saw the same realization.
struct TrialRecord {
    Index trial = 0;
    std::uint64_t seed = 0;
    std::vector<AllocatorTrial> allocators;  // parallel to Scenario::allocators()
};

/// One (N, tau_max) operating point of a scenario.
struct SweepPoint {
    Index n_subcarriers = 0;
    double tau_max = 0.0;
    std::string id;
};

struct PointRun {
    SweepPoint point;
    std::vector<TrialRecord> records;  // filled when RunOptions::keep_records
};

struct ScenarioRun {
    std::vector<MetricsSummary> summaries;
    std::vector<PointRun> points;
};

/// splitmix64 finaliser.
std::uint64_t mix64(std::uint64_t x);

/// Seed of trial t: mix64(master + (t + 1) * golden-ratio increment). The
/// same trial seed is reused at every sweep point, so sweeps compare common
/// random numbers.
std::uint64_t trial_seed(std::uint64_t master_seed, Index trial);

/// Cartesian product of sweep_n x sweep_tau_max_s, each defaulting to the base value.
std::vector<SweepPoint> sweep_points(const Scenario& s);

/// Runs every configured allocator on one channel realization.
TrialRecord run_trial(const Scenario& s, const SweepPoint& point, const std::vector<AllocatorConfig>& allocators,
                      Index trial);

/// Averages over trials per allocator per sweep point. The result does not
/// depend on the thread count.
ScenarioRun run_scenario_detailed(const Scenario& s, const RunOptions& options = {});
std::vector<MetricsSummary> run_scenario(const Scenario& s, const RunOptions& options = {});

/// HH-GRP over the tau_max x G_T grid with zeta per cell.
struct TradeoffSurface {
    std::vector<double> tau_max;  // rows, seconds
    std::vector<double> gt_db;    // columns
    Eigen::MatrixXd capacity;
    Eigen::MatrixXd iterations;
    Eigen::MatrixXd groups;
    Eigen::MatrixXd correlation;
    Eigen::MatrixXd zeta;
    std::vector<Index> best_gt;   // argmax column per row
    std::vector<MetricsSummary> rows;
};

/// zeta for every cell of a capacity/iteration grid with extrema over the grid.
Eigen::MatrixXd zeta_surface(const Eigen::MatrixXd& capacity, const Eigen::MatrixXd& iterations);

TradeoffSurface run_tradeoff_grid(const Scenario& s, const RunOptions& options = {});

} // namespace bitload
