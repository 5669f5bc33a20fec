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

#include "bitload/dump.hpp"

#include "bitload/error.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace bitload {

namespace fs = std::filesystem;

namespace {

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string opt(const std::optional<double>& v)
{
    return v ? num(*v) : std::string();
}

std::vector<std::string> split_csv_line(const std::string& line)
{
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ','))
        out.push_back(cell);
    if (!line.empty() && line.back() == ',')
        out.emplace_back();
    return out;
}

std::optional<double> parse_opt(const std::string& s)
{
    if (s.empty())
        return std::nullopt;
    return std::stod(s);
}

std::ofstream open_out(const fs::path& path)
{
    std::ofstream out(path);
    if (!out)
        throw IoError(path.string(), "cannot open for writing");
    return out;
}

void check_written(std::ofstream& out, const fs::path& path)
{
    out.flush();
    if (!out)
        throw IoError(path.string(), "write failed");
}

std::string curve_file(const std::string& tag, const std::string& algorithm, const std::string& param)
{
    return tag + "_" + algorithm + "_" + (param.empty() ? std::string("na") : param) + ".dat";
}

} // namespace

const std::vector<std::string>& csv_columns()
{
    static const std::vector<std::string> cols{
        "scenario_id",    "algorithm",      "param",          "n_subcarriers",  "tau_max_us",
        "trials",         "avg_capacity_bps_hz", "std_capacity", "avg_iterations", "std_iterations",
        "avg_groups",     "avg_group_corr", "zeta"};
    return cols;
}

void write_csv(std::ostream& out, const std::vector<MetricsSummary>& rows)
{
    const auto& cols = csv_columns();
    for (std::size_t i = 0; i < cols.size(); ++i)
        out << (i ? "," : "") << cols[i];
    out << '\n';
    for (const MetricsSummary& m : rows) {
        out << m.scenario_id << ',' << m.algorithm << ',' << m.param << ',' << m.n_subcarriers << ','
            << num(m.tau_max_us) << ',' << m.trials << ',' << num(m.avg_capacity) << ',' << num(m.std_capacity) << ','
            << opt(m.avg_iterations) << ',' << opt(m.std_iterations) << ',' << opt(m.avg_groups) << ','
            << opt(m.avg_group_corr) << ',' << opt(m.zeta) << '\n';
    }
}

std::vector<MetricsSummary> read_csv(std::istream& in)
{
    std::vector<MetricsSummary> rows;
    std::string line;
    if (!std::getline(in, line))
        return rows;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        const auto cells = split_csv_line(line);
        if (cells.size() != csv_columns().size())
            throw InvalidParameter("read_csv: expected " + std::to_string(csv_columns().size()) + " cells in '" + line +
                                   "'");
        MetricsSummary m;
        m.scenario_id = cells[0];
        m.algorithm = cells[1];
        m.param = cells[2];
        m.n_subcarriers = std::stoll(cells[3]);
        m.tau_max_us = std::stod(cells[4]);
        m.trials = std::stoll(cells[5]);
        m.avg_capacity = std::stod(cells[6]);
        m.std_capacity = std::stod(cells[7]);
        m.avg_iterations = parse_opt(cells[8]);
        m.std_iterations = parse_opt(cells[9]);
        m.avg_groups = parse_opt(cells[10]);
        m.avg_group_corr = parse_opt(cells[11]);
        m.zeta = parse_opt(cells[12]);
        rows.push_back(std::move(m));
    }
    return rows;
}

std::vector<fs::path> write_plot_data(const fs::path& dir, const std::vector<MetricsSummary>& rows)
{
    std::set<Index> ns;
    std::set<double> taus;
    for (const auto& m : rows) {
        ns.insert(m.n_subcarriers);
        taus.insert(m.tau_max_us);
    }

    struct Series {
        std::vector<std::pair<double, double>> points;
    };
    // (file name) -> points, in first-seen order of the rows
    std::map<std::string, Series> curves;
    std::vector<std::string> order;
    auto add = [&](const std::string& file, double x, double y) {
        auto [it, inserted] = curves.try_emplace(file);
        if (inserted)
            order.push_back(file);
        it->second.points.emplace_back(x, y);
    };

    for (const auto& m : rows) {
        const bool grp = m.avg_groups.has_value();
        if (ns.size() > 1) {
            const auto x = static_cast<double>(m.n_subcarriers);
            const std::string suffix = taus.size() > 1 ? "_tau" + num(m.tau_max_us) + "us" : "";
            add(curve_file("capacity_vs_n" + suffix, m.algorithm, m.param), x, m.avg_capacity);
            if (m.avg_iterations)
                add(curve_file("iterations_vs_n" + suffix, m.algorithm, m.param), x, *m.avg_iterations);
            if (grp)
                add(curve_file("groups_vs_n" + suffix, m.algorithm, m.param), x, *m.avg_groups);
        }
        if (taus.size() > 1) {
            const double x = m.tau_max_us;
            const std::string suffix = ns.size() > 1 ? "_n" + std::to_string(m.n_subcarriers) : "";
            add(curve_file("capacity_vs_tau" + suffix, m.algorithm, m.param), x, m.avg_capacity);
            if (m.avg_iterations)
                add(curve_file("iterations_vs_tau" + suffix, m.algorithm, m.param), x, *m.avg_iterations);
            if (grp) {
                add(curve_file("groups_vs_tau" + suffix, m.algorithm, m.param), x, *m.avg_groups);
                add(curve_file("corr_vs_tau" + suffix, m.algorithm, m.param), x, m.avg_group_corr.value_or(0.0));
            }
        }
    }

    std::vector<fs::path> written;
    for (const auto& name : order) {
        const fs::path path = dir / name;
        std::ofstream out = open_out(path);
        for (const auto& [x, y] : curves[name].points)
            out << num(x) << ' ' << num(y) << '\n';
        check_written(out, path);
        written.push_back(path);
    }
    return written;
}

std::vector<fs::path> write_tradeoff_plot_data(const fs::path& dir, const TradeoffSurface& surface)
{
    std::vector<fs::path> written;
    for (std::size_t r = 0; r < surface.tau_max.size(); ++r) {
        const fs::path path = dir / curve_file("zeta_vs_gt", "HH-GRP", "tau" + num(surface.tau_max[r] * 1e6) + "us");
        std::ofstream out = open_out(path);
        for (std::size_t c = 0; c < surface.gt_db.size(); ++c)
            out << num(surface.gt_db[c]) << ' '
                << num(surface.zeta(static_cast<Index>(r), static_cast<Index>(c))) << '\n';
        check_written(out, path);
        written.push_back(path);
    }
    return written;
}

namespace {

nlohmann::json summary_json(const MetricsSummary& m)
{
    nlohmann::json j{{"scenario_id", m.scenario_id},   {"algorithm", m.algorithm},   {"param", m.param},
                     {"n_subcarriers", m.n_subcarriers}, {"tau_max_us", m.tau_max_us}, {"trials", m.trials},
                     {"avg_capacity_bps_hz", m.avg_capacity}, {"std_capacity", m.std_capacity}};
    auto put = [&](const char* key, const std::optional<double>& v) { j[key] = v ? nlohmann::json(*v) : nlohmann::json(); };
    put("avg_iterations", m.avg_iterations);
    put("std_iterations", m.std_iterations);
    put("avg_groups", m.avg_groups);
    put("avg_group_corr", m.avg_group_corr);
    put("zeta", m.zeta);
    return j;
}

} // namespace

void dump_results(const std::vector<MetricsSummary>& rows, const fs::path& dir, OutputFormat format,
                  const Scenario* scenario, const ScenarioRun* run)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw IoError(dir.string(), ec.message());

    const fs::path csv_path = dir / "results.csv";
    {
        std::ofstream out = open_out(csv_path);
        write_csv(out, rows);
        check_written(out, csv_path);
    }
    write_plot_data(dir, rows);

    if (format != OutputFormat::full)
        return;

    nlohmann::json doc;
    if (scenario)
        doc["scenario"] = format_scenario(*scenario);
    doc["summaries"] = nlohmann::json::array();
    for (const auto& m : rows)
        doc["summaries"].push_back(summary_json(m));
    if (run && scenario) {
        const auto allocators = scenario->allocators();
        doc["points"] = nlohmann::json::array();
        for (const PointRun& p : run->points) {
            nlohmann::json jp{{"id", p.point.id}, {"n_subcarriers", p.point.n_subcarriers},
                              {"tau_max_s", p.point.tau_max}, {"trials", nlohmann::json::array()}};
            for (const TrialRecord& rec : p.records) {
                nlohmann::json jt{{"trial", rec.trial}, {"seed", rec.seed}, {"allocators", nlohmann::json::array()}};
                for (std::size_t a = 0; a < rec.allocators.size(); ++a) {
                    const AllocatorTrial& t = rec.allocators[a];
                    jt["allocators"].push_back({{"algorithm", allocators[a].name()},
                                                {"param", allocators[a].param()},
                                                {"spectral_efficiency", t.spectral_efficiency},
                                                {"mean_iterations", t.mean_iterations},
                                                {"total_groups", t.total_groups},
                                                {"mean_group_corr", t.mean_group_corr},
                                                {"user_capacity", t.user_capacity},
                                                {"user_iterations", t.user_iterations},
                                                {"user_power", t.user_power}});
                }
                jp["trials"].push_back(std::move(jt));
            }
            doc["points"].push_back(std::move(jp));
        }
    }
    const fs::path json_path = dir / "results_full.json";
    std::ofstream out = open_out(json_path);
    out << doc.dump(1) << '\n';
    check_written(out, json_path);
}

} // namespace bitload
