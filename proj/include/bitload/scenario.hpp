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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bitload {

enum class Algorithm { eq, wf, hh, hh_wf, hh_k, hh_grp };

std::string_view algorithm_name(Algorithm a);
std::optional<Algorithm> parse_algorithm(std::string_view name);

/// One concrete allocator run: an algorithm plus its kappa or G_T.
struct AllocatorConfig {
    Algorithm algorithm = Algorithm::hh;
    int kappa = 1;
    double gt_db = 0.0;

    std::string name() const { return std::string(algorithm_name(algorithm)); }
    /// "2" for HH-K kappa=2, "0.25" for HH-GRP G_T=0.25 dB, empty otherwise.
    std::string param() const;
};

/// Noise density that brings the average HH spectral efficiency of the
/// default cell (N=1024, K=8, 2 MHz, 10 W, BER 1e-12) to about 6.26 bits/s/Hz.
inline constexpr double kCalibratedNoiseDensity = 1.3e-19;

struct Scenario {
    SystemParams system;
    double pmax_w = 10.0;
    double ber = 1e-12;
    std::optional<double> gamma;
    std::vector<Algorithm> algorithms{Algorithm::eq, Algorithm::wf, Algorithm::hh,
                                      Algorithm::hh_wf, Algorithm::hh_k, Algorithm::hh_grp};
    std::vector<int> kappa_list{2, 4, 8, 16};
    std::vector<double> gt_db_list{0.25, 0.5, 1.0, 5.0};
    Index trials = 10000;
    std::uint64_t seed = 1;
    std::vector<Index> sweep_n;
    std::vector<double> sweep_tau_max_s;

    /// Explicit Gamma when given, otherwise derived from the target BER.
    double snr_gap() const;

    /// Expanded allocator list; HH-K and HH-GRP expand over their parameter lists.
    std::vector<AllocatorConfig> allocators() const;

    /// Throws ConfigError naming every offending field.
    void validate() const;
};

/// Recognised scenario-file keys, in canonical order.
const std::vector<std::string_view>& scenario_keys();
bool is_scenario_key(std::string_view key);

/// Parses one `key = value` assignment into the scenario. Throws ConfigError
/// on an unknown key or malformed value.
void apply_setting(Scenario& s, std::string_view key, std::string_view value);

/// Reads `key = value` lines; '#' starts a comment. Unknown keys are rejected.
Scenario parse_scenario(std::istream& in, const std::string& source = "<stream>");
Scenario load_scenario(const std::filesystem::path& path);

/// Writes every key so that parse_scenario(format_scenario(s)) == s.
std::string format_scenario(const Scenario& s);

} // namespace bitload
