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

#include "bitload/scenario.hpp"

#include "bitload/error.hpp"
#include "bitload/snr_gap.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace bitload {

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view s)
{
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        const auto comma = s.find(',', pos);
        const auto item = trim(s.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
        if (!item.empty())
            out.push_back(item);
        if (comma == std::string_view::npos)
            break;
        pos = comma + 1;
    }
    return out;
}

double to_double(std::string_view key, std::string_view v)
{
    // std::from_chars for double is available in libstdc++ 11.
    double out = 0.0;
    const auto* end = v.data() + v.size();
    const auto res = std::from_chars(v.data(), end, out);
    if (res.ec != std::errc() || res.ptr != end)
        throw ConfigError({std::string(key) + ": expected a number, got '" + std::string(v) + "'"});
    return out;
}

template <typename Int>
Int to_integer(std::string_view key, std::string_view v)
{
    Int out = 0;
    const auto* end = v.data() + v.size();
    const auto res = std::from_chars(v.data(), end, out);
    if (res.ec != std::errc() || res.ptr != end)
        throw ConfigError({std::string(key) + ": expected an integer, got '" + std::string(v) + "'"});
    return out;
}

std::string format_number(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

template <typename T, typename F>
std::string join(const std::vector<T>& items, F&& fmt)
{
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i)
            out += ", ";
        out += fmt(items[i]);
    }
    return out;
}

std::string format_param(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

} // namespace

std::string_view algorithm_name(Algorithm a)
{
    switch (a) {
        case Algorithm::eq: return "EQ";
        case Algorithm::wf: return "WF";
        case Algorithm::hh: return "HH";
        case Algorithm::hh_wf: return "HH-WF";
        case Algorithm::hh_k: return "HH-K";
        case Algorithm::hh_grp: return "HH-GRP";
    }
    return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view name)
{
    for (Algorithm a : {Algorithm::eq, Algorithm::wf, Algorithm::hh, Algorithm::hh_wf, Algorithm::hh_k, Algorithm::hh_grp})
        if (algorithm_name(a) == name)
            return a;
    return std::nullopt;
}

std::string AllocatorConfig::param() const
{
    switch (algorithm) {
        case Algorithm::hh_k: return std::to_string(kappa);
        case Algorithm::hh_grp: return format_param(gt_db);
        default: return {};
    }
}

double Scenario::snr_gap() const
{
    return gamma ? *gamma : snr_gap_from_ber(ber);
}

std::vector<AllocatorConfig> Scenario::allocators() const
{
    std::vector<AllocatorConfig> out;
    for (Algorithm a : algorithms) {
        if (a == Algorithm::hh_k) {
            for (int k : kappa_list)
                out.push_back({a, k, 0.0});
        } else if (a == Algorithm::hh_grp) {
            for (double gt : gt_db_list)
                out.push_back({a, 1, gt});
        } else {
            out.push_back({a, 1, 0.0});
        }
    }
    return out;
}

void Scenario::validate() const
{
    std::vector<std::string> bad;
    const auto& sys = system;
    if (sys.n_users < 1)
        bad.push_back("n_users: must be >= 1");
    if (sys.n_subcarriers < 1)
        bad.push_back("n_subcarriers: must be >= 1");
    if (sys.n_users >= 1 && sys.n_subcarriers >= 1 &&
        (sys.n_subcarriers < sys.n_users || sys.n_subcarriers % sys.n_users != 0))
        bad.push_back("n_subcarriers: must be a multiple of n_users");
    if (!(sys.total_bandwidth > 0.0))
        bad.push_back("bandwidth_hz: must be positive");
    if (!(pmax_w > 0.0))
        bad.push_back("pmax_w: must be positive");
    if (!gamma && !(ber > 0.0 && ber < 0.5))
        bad.push_back("ber: must lie in (0, 0.5)");
    if (gamma && !(*gamma >= 1.0))
        bad.push_back("gamma: must be >= 1");
    if (!(sys.pathloss_exponent >= 0.0))
        bad.push_back("pathloss_exp: must be nonnegative");
    if (!(sys.cell_radius > sys.min_distance))
        bad.push_back("cell_radius_m: must exceed the 10 m minimum distance");
    if (!(sys.noise_density > 0.0))
        bad.push_back("noise_density_w_hz: must be positive");
    if (!(sys.tau_max > 0.0))
        bad.push_back("tau_max_s: must be positive");
    if (sys.num_taps < 1)
        bad.push_back("n_taps: must be >= 1");
    if (trials < 1)
        bad.push_back("trials: must be >= 1");
    if (algorithms.empty())
        bad.push_back("algorithms: at least one allocator required");
    const bool uses_k = std::find(algorithms.begin(), algorithms.end(), Algorithm::hh_k) != algorithms.end();
    const bool uses_grp = std::find(algorithms.begin(), algorithms.end(), Algorithm::hh_grp) != algorithms.end();
    if (uses_k && kappa_list.empty())
        bad.push_back("kappa_list: HH-K requires at least one kappa");
    for (int k : kappa_list)
        if (k < 2) {
            bad.push_back("kappa_list: values must be >= 2");
            break;
        }
    if (uses_grp && gt_db_list.empty())
        bad.push_back("gt_db_list: HH-GRP requires at least one threshold");
    for (double gt : gt_db_list)
        if (!(gt > 0.0)) {
            bad.push_back("gt_db_list: values must be > 0");
            break;
        }
    for (Index n : sweep_n)
        if (n < sys.n_users || n % sys.n_users != 0) {
            bad.push_back("sweep_n: every N must be a positive multiple of n_users");
            break;
        }
    for (double t : sweep_tau_max_s)
        if (!(t > 0.0)) {
            bad.push_back("sweep_tau_max_s: values must be positive");
            break;
        }
    if (!bad.empty())
        throw ConfigError(std::move(bad));
}

const std::vector<std::string_view>& scenario_keys()
{
    static const std::vector<std::string_view> keys{
        "n_subcarriers", "n_users",    "bandwidth_hz", "pmax_w",     "ber",        "gamma",
        "pathloss_exp",  "cell_radius_m", "noise_density_w_hz", "tau_max_s", "n_taps", "trials",
        "seed",          "algorithms", "kappa_list",   "gt_db_list", "sweep_n",    "sweep_tau_max_s"};
    return keys;
}

bool is_scenario_key(std::string_view key)
{
    const auto& keys = scenario_keys();
    return std::find(keys.begin(), keys.end(), key) != keys.end();
}

void apply_setting(Scenario& s, std::string_view key, std::string_view raw)
{
    const std::string_view v = trim(raw);
    if (key == "n_subcarriers") {
        s.system.n_subcarriers = to_integer<Index>(key, v);
    } else if (key == "n_users") {
        s.system.n_users = to_integer<Index>(key, v);
    } else if (key == "bandwidth_hz") {
        s.system.total_bandwidth = to_double(key, v);
    } else if (key == "pmax_w") {
        s.pmax_w = to_double(key, v);
    } else if (key == "ber") {
        s.ber = to_double(key, v);
    } else if (key == "gamma") {
        if (v.empty() || v == "auto")
            s.gamma.reset();
        else
            s.gamma = to_double(key, v);
    } else if (key == "pathloss_exp") {
        s.system.pathloss_exponent = to_double(key, v);
    } else if (key == "cell_radius_m") {
        s.system.cell_radius = to_double(key, v);
    } else if (key == "noise_density_w_hz") {
        s.system.noise_density = to_double(key, v);
    } else if (key == "tau_max_s") {
        s.system.tau_max = to_double(key, v);
    } else if (key == "n_taps") {
        s.system.num_taps = to_integer<Index>(key, v);
    } else if (key == "trials") {
        s.trials = to_integer<Index>(key, v);
    } else if (key == "seed") {
        s.seed = to_integer<std::uint64_t>(key, v);
    } else if (key == "algorithms") {
        std::vector<Algorithm> algs;
        for (auto item : split_list(v)) {
            const auto a = parse_algorithm(item);
            if (!a)
                throw ConfigError({"algorithms: unknown allocator '" + std::string(item) + "'"});
            algs.push_back(*a);
        }
        s.algorithms = std::move(algs);
    } else if (key == "kappa_list") {
        s.kappa_list.clear();
        for (auto item : split_list(v))
            s.kappa_list.push_back(to_integer<int>(key, item));
    } else if (key == "gt_db_list") {
        s.gt_db_list.clear();
        for (auto item : split_list(v))
            s.gt_db_list.push_back(to_double(key, item));
    } else if (key == "sweep_n") {
        s.sweep_n.clear();
        for (auto item : split_list(v))
            s.sweep_n.push_back(to_integer<Index>(key, item));
    } else if (key == "sweep_tau_max_s") {
        s.sweep_tau_max_s.clear();
        for (auto item : split_list(v))
            s.sweep_tau_max_s.push_back(to_double(key, item));
    } else {
        throw ConfigError({"unknown key '" + std::string(key) + "'"});
    }
}

Scenario parse_scenario(std::istream& in, const std::string& source)
{
    Scenario s;
    std::vector<std::string> problems;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view view(line);
        if (const auto hash = view.find('#'); hash != std::string_view::npos)
            view = view.substr(0, hash);
        view = trim(view);
        if (view.empty())
            continue;
        const auto eq = view.find('=');
        const std::string where = source + ":" + std::to_string(lineno) + ": ";
        if (eq == std::string_view::npos) {
            problems.push_back(where + "expected 'key = value'");
            continue;
        }
        try {
            apply_setting(s, trim(view.substr(0, eq)), view.substr(eq + 1));
        } catch (const ConfigError& e) {
            for (const auto& p : e.problems())
                problems.push_back(where + p);
        }
    }
    if (!problems.empty())
        throw ConfigError(std::move(problems));
    return s;
}

Scenario load_scenario(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError(path.string(), "cannot open scenario file");
    return parse_scenario(in, path.string());
}

std::string format_scenario(const Scenario& s)
{
    std::ostringstream out;
    const auto& sys = s.system;
    out << "n_subcarriers = " << sys.n_subcarriers << '\n'
        << "n_users = " << sys.n_users << '\n'
        << "bandwidth_hz = " << format_number(sys.total_bandwidth) << '\n'
        << "pmax_w = " << format_number(s.pmax_w) << '\n'
        << "ber = " << format_number(s.ber) << '\n'
        << "gamma = " << (s.gamma ? format_number(*s.gamma) : std::string("auto")) << '\n'
        << "pathloss_exp = " << format_number(sys.pathloss_exponent) << '\n'
        << "cell_radius_m = " << format_number(sys.cell_radius) << '\n'
        << "noise_density_w_hz = " << format_number(sys.noise_density) << '\n'
        << "tau_max_s = " << format_number(sys.tau_max) << '\n'
        << "n_taps = " << sys.num_taps << '\n'
        << "trials = " << s.trials << '\n'
        << "seed = " << s.seed << '\n'
        << "algorithms = " << join(s.algorithms, [](Algorithm a) { return std::string(algorithm_name(a)); }) << '\n'
        << "kappa_list = " << join(s.kappa_list, [](int k) { return std::to_string(k); }) << '\n'
        << "gt_db_list = " << join(s.gt_db_list, format_number) << '\n'
        << "sweep_n = " << join(s.sweep_n, [](Index n) { return std::to_string(n); }) << '\n'
        << "sweep_tau_max_s = " << join(s.sweep_tau_max_s, format_number) << '\n';
    return out.str();
}

} // namespace bitload
