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

#include "bitload/harness.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace bitload {

enum class OutputFormat { csv, full };

/// Column header of the results CSV, in order.
const std::vector<std::string>& csv_columns();

/// Header plus one line per summary. Numbers use 6 significant digits;
/// absent optional fields are empty cells.
void write_csv(std::ostream& out, const std::vector<MetricsSummary>& rows);
std::vector<MetricsSummary> read_csv(std::istream& in);

/// One two-column (x, y) file per curve, named <tag>_<algorithm>_<param>.dat.
/// Curves over N are emitted when the rows span several N, curves over
/// tau_max when they span several delay spreads. Returns the written paths.
std::vector<std::filesystem::path> write_plot_data(const std::filesystem::path& dir,
                                                   const std::vector<MetricsSummary>& rows);

/// zeta against G_T, one file per tau_max row.
std::vector<std::filesystem::path> write_tradeoff_plot_data(const std::filesystem::path& dir,
                                                            const TradeoffSurface& surface);

/// results.csv, plot data, and with OutputFormat::full a results_full.json
/// holding the scenario, the summaries and any retained trial records.
void dump_results(const std::vector<MetricsSummary>& rows, const std::filesystem::path& dir, OutputFormat format,
                  const Scenario* scenario = nullptr, const ScenarioRun* run = nullptr);

} // namespace bitload
