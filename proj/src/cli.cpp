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

#include "bitload/cli.hpp"

#include "bitload/alloc.hpp"
#include "bitload/dump.hpp"
#include "bitload/error.hpp"
#include "bitload/grouping.hpp"
#include "bitload/harness.hpp"
#include "bitload/metrics.hpp"
#include "bitload/scenario.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace bitload::cli {

namespace {

class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct Common {
    std::string scenario_path;
    std::vector<std::string> overrides;
    std::string out_dir = "results";
    std::optional<std::uint64_t> seed;
    std::optional<Index> trials;
    unsigned threads = 0;
    bool quick = false;
    std::string format = "csv";
};

void add_common(CLI::App* sub, Common& c)
{
    sub->add_option("--scenario", c.scenario_path, "Scenario file (key = value lines)");
    sub->add_option("--set", c.overrides, "Override a scenario key: key=value (repeatable)")->allow_extra_args(false);
    sub->add_option("--out", c.out_dir, "Output directory");
    sub->add_option("--seed", c.seed, "Master seed");
    sub->add_option("--trials", c.trials, "Monte Carlo trials");
    sub->add_option("--threads", c.threads, "Worker threads (0 = all cores, 1 = sequential)");
    sub->add_flag("--quick", c.quick, "Desk-scale profile: 500 trials, N <= 1024");
    sub->add_option("--format", c.format, "csv or full")->check(CLI::IsMember({"csv", "full"}));
}

constexpr Index kQuickTrials = 500;
constexpr Index kQuickMaxN = 1024;

Scenario build_scenario(const Common& c)
{
    Scenario s = c.scenario_path.empty() ? Scenario{} : load_scenario(c.scenario_path);
    std::vector<std::string> problems;
    for (const auto& kv : c.overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw UsageError("--set expects key=value, got '" + kv + "'");
        const std::string key = kv.substr(0, eq);
        if (!is_scenario_key(key))
            throw UsageError("--set: unknown scenario key '" + key + "'");
        try {
            apply_setting(s, key, kv.substr(eq + 1));
        } catch (const ConfigError& e) {
            problems.insert(problems.end(), e.problems().begin(), e.problems().end());
        }
    }
    if (!problems.empty())
        throw ConfigError(std::move(problems));
    if (c.quick) {
        s.trials = kQuickTrials;
        s.system.n_subcarriers = std::min(s.system.n_subcarriers, kQuickMaxN);
        std::erase_if(s.sweep_n, [](Index n) { return n > kQuickMaxN; });
    }
    if (c.trials)
        s.trials = *c.trials;
    if (c.seed)
        s.seed = *c.seed;
    s.validate();
    return s;
}

RunOptions run_options(const Common& c, bool keep)
{
    return RunOptions{c.threads, keep};
}

OutputFormat output_format(const Common& c)
{
    return c.format == "full" ? OutputFormat::full : OutputFormat::csv;
}

std::string cell(const std::optional<double>& v, const char* fmt = "%.2f")
{
    if (!v)
        return "-";
    char buf[32];
    std::snprintf(buf, sizeof buf, fmt, *v);
    return buf;
}

void print_table(std::ostream& out, const std::vector<MetricsSummary>& rows)
{
    char line[160];
    std::snprintf(line, sizeof line, "%-22s %-8s %-6s %10s %10s %9s %8s %7s\n", "point", "algorithm", "param",
                  "avg C", "avg I", "groups", "corr", "zeta");
    out << line;
    for (const auto& m : rows) {
        std::snprintf(line, sizeof line, "%-22s %-8s %-6s %10.3f %10s %9s %8s %7s\n", m.scenario_id.c_str(),
                      m.algorithm.c_str(), m.param.c_str(), m.avg_capacity, cell(m.avg_iterations).c_str(),
                      cell(m.avg_groups, "%.1f").c_str(), cell(m.avg_group_corr, "%.3f").c_str(),
                      cell(m.zeta, "%.3f").c_str());
        out << line;
    }
}

int cmd_run(const Common& c, std::ostream& out)
{
    const Scenario s = build_scenario(c);
    const bool full = output_format(c) == OutputFormat::full;
    const ScenarioRun run = run_scenario_detailed(s, run_options(c, full));
    dump_results(run.summaries, c.out_dir, output_format(c), &s, &run);
    print_table(out, run.summaries);
    return ok;
}

int cmd_sweep_n(const Common& c, std::ostream& out)
{
    Scenario s = build_scenario(c);
    if (s.sweep_n.empty()) {
        for (Index n = 128; n <= 4096; n *= 2)
            if (!c.quick || n <= kQuickMaxN)
                s.sweep_n.push_back(n);
        s.validate();
    }
    const bool full = output_format(c) == OutputFormat::full;
    const ScenarioRun run = run_scenario_detailed(s, run_options(c, full));
    dump_results(run.summaries, c.out_dir, output_format(c), &s, &run);
    print_table(out, run.summaries);
    return ok;
}

Scenario with_default_taus(Scenario s)
{
    if (s.sweep_tau_max_s.size() < 2)
        s.sweep_tau_max_s = {1e-6, 2.5e-6, 5e-6, 12e-6, 25e-6};
    s.sweep_n.clear();
    return s;
}

int cmd_tradeoff(const Common& c, std::ostream& out)
{
    const Scenario s = with_default_taus(build_scenario(c));
    const TradeoffSurface surface = run_tradeoff_grid(s, run_options(c, false));
    dump_results(surface.rows, c.out_dir, output_format(c), &s);
    write_tradeoff_plot_data(c.out_dir, surface);
    print_table(out, surface.rows);
    out << "\nbest G_T per tau_max:\n";
    for (std::size_t r = 0; r < surface.tau_max.size(); ++r) {
        const Index best = surface.best_gt[r];
        char line[96];
        std::snprintf(line, sizeof line, "  tau_max = %6.2f us  G_T = %g dB  zeta = %.3f\n", surface.tau_max[r] * 1e6,
                      surface.gt_db[static_cast<std::size_t>(best)], surface.zeta(static_cast<Index>(r), best));
        out << line;
    }
    return ok;
}

int cmd_groups(const Common& c, std::ostream& out)
{
    Scenario s = with_default_taus(build_scenario(c));
    s.algorithms = {Algorithm::hh_grp};
    const std::vector<MetricsSummary> rows = run_scenario(s, run_options(c, false));
    dump_results(rows, c.out_dir, output_format(c), &s);
    char line[128];
    std::snprintf(line, sizeof line, "%-22s %8s %10s %8s\n", "point", "G_T dB", "groups", "corr");
    out << line;
    for (const auto& m : rows) {
        std::snprintf(line, sizeof line, "%-22s %8s %10.1f %8.3f\n", m.scenario_id.c_str(), m.param.c_str(),
                      m.avg_groups.value_or(0.0), m.avg_group_corr.value_or(0.0));
        out << line;
    }
    return ok;
}

/// Gain file: header "# gamma=<val> pmax=<val>", then one delta per line.
GainVector<double> read_gain_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError(path, "cannot open gain file");
    std::string header;
    if (!std::getline(in, header))
        throw ConfigError({path + ": empty gain file"});

    std::optional<double> gamma, pmax;
    std::istringstream hs(header);
    std::string token;
    while (hs >> token) {
        if (token == "#")
            continue;
        const auto eq = token.find('=');
        if (eq == std::string::npos)
            continue;
        const std::string key = token.substr(0, eq);
        try {
            const double v = std::stod(token.substr(eq + 1));
            if (key == "gamma")
                gamma = v;
            else if (key == "pmax")
                pmax = v;
        } catch (const std::exception&) {
            throw ConfigError({path + ": bad header value '" + token + "'"});
        }
    }
    if (!gamma || !pmax)
        throw ConfigError({path + ": header must read '# gamma=<val> pmax=<val>'"});

    std::vector<double> gains;
    std::string line;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#')
            continue;
        try {
            gains.push_back(std::stod(line));
        } catch (const std::exception&) {
            throw ConfigError({path + ":" + std::to_string(lineno) + ": not a number"});
        }
    }
    GainVector<double> g{Eigen::Map<const Eigen::VectorXd>(gains.data(), static_cast<Index>(gains.size())), *gamma,
                         *pmax};
    try {
        g.validate();
    } catch (const InvalidParameter& e) {
        throw ConfigError({path + ": " + e.what()});
    }
    return g;
}

template <typename V>
std::string list(const V& v, const char* fmt)
{
    std::string s = "[";
    char buf[40];
    for (Index i = 0; i < v.size(); ++i) {
        std::snprintf(buf, sizeof buf, fmt, v[i]);
        s += (i ? ", " : "");
        s += buf;
    }
    return s + "]";
}

struct AllocOnce {
    std::string gains_path;
    std::string algorithm = "HH";
    int kappa = 2;
    double gt_db = 1.0;
    std::optional<int> max_bits;
};

int cmd_alloc_once(const AllocOnce& a, std::ostream& out)
{
    const GainVector<double> g = read_gain_file(a.gains_path);
    const auto alg = parse_algorithm(a.algorithm);
    if (!alg)
        throw UsageError("--algorithm: unknown allocator '" + a.algorithm + "'");

    AllocationResult<double> r;
    std::optional<Index> groups;
    switch (*alg) {
        case Algorithm::eq: r = equal_power(g); break;
        case Algorithm::wf: r = waterfill(g); break;
        case Algorithm::hh: r = hh_allocate(g, std::nullopt, 1, a.max_bits); break;
        case Algorithm::hh_wf: r = hh_wf_allocate(g, a.max_bits); break;
        case Algorithm::hh_k: r = hh_allocate(g, std::nullopt, a.kappa, a.max_bits); break;
        case Algorithm::hh_grp: {
            auto grp = hh_grp_allocate(g, a.gt_db);
            groups = grp.partition.size();
            r = std::move(grp.result);
            break;
        }
    }
    out << "algorithm=" << algorithm_name(*alg) << '\n';
    if (r.discrete())
        out << "bits=" << list(r.bits, "%d") << '\n';
    out << "powers=" << list(r.powers, "%.10g") << '\n';
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", r.capacity);
    out << "capacity=" << buf << '\n';
    std::snprintf(buf, sizeof buf, "%.10g", r.total_power());
    out << "total_power=" << buf << '\n';
    out << "iterations=" << r.iterations << '\n';
    if (groups)
        out << "groups=" << *groups << '\n';
    return ok;
}

int cmd_predict(const std::vector<Index>& ns, std::ostream& out)
{
    for (Index n : ns) {
        if (n < 1)
            throw UsageError("predict-complexity: N must be >= 1");
        const PredictedLedger p = ledger_predicted(n);
        char line[256];
        std::snprintf(line, sizeof line,
                      "N=%lld T_HH=%.10g setup{mult=%lld exp=%lld} per_iteration{add=%lld mult=%lld exp=%lld} "
                      "iterations=%lld\n",
                      static_cast<long long>(n), predicted_runtime(n), static_cast<long long>(p.setup.multiplications),
                      static_cast<long long>(p.setup.exponentiations),
                      static_cast<long long>(p.per_iteration.additions),
                      static_cast<long long>(p.per_iteration.multiplications),
                      static_cast<long long>(p.per_iteration.exponentiations), static_cast<long long>(p.iterations));
        out << line;
    }
    return ok;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"bitload: greedy bit loading and OFDMA allocation experiments"};
    app.require_subcommand(1, 1);

    Common common;
    AllocOnce once;
    std::vector<Index> predict_n{128, 256, 512, 1024, 2048, 4096};

    auto* run_cmd = app.add_subcommand("run", "Run every configured allocator over the scenario");
    auto* sweep_cmd = app.add_subcommand("sweep-n", "Capacity, iterations and groups against N");
    auto* grid_cmd = app.add_subcommand("tradeoff-grid", "HH-GRP over tau_max x G_T with the tradeoff factor");
    auto* groups_cmd = app.add_subcommand("groups", "Grouping statistics over tau_max x G_T");
    for (auto* sub : {run_cmd, sweep_cmd, grid_cmd, groups_cmd})
        add_common(sub, common);

    auto* once_cmd = app.add_subcommand("alloc-once", "Allocate one gain vector read from a file");
    once_cmd->add_option("--gains", once.gains_path, "Gain file")->required();
    once_cmd->add_option("--algorithm", once.algorithm, "EQ, WF, HH, HH-WF, HH-K or HH-GRP");
    once_cmd->add_option("--kappa", once.kappa, "Batch size for HH-K")->check(CLI::PositiveNumber);
    once_cmd->add_option("--gt-db", once.gt_db, "Gain threshold for HH-GRP")->check(CLI::PositiveNumber);
    once_cmd->add_option("--max-bits", once.max_bits, "Per-subchannel bit cap");

    auto* predict_cmd = app.add_subcommand("predict-complexity", "Closed-form running time and operation counts");
    predict_cmd->add_option("--n", predict_n, "Subchannel counts")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : usage;
    }

    try {
        if (*run_cmd)
            return cmd_run(common, out);
        if (*sweep_cmd)
            return cmd_sweep_n(common, out);
        if (*grid_cmd)
            return cmd_tradeoff(common, out);
        if (*groups_cmd)
            return cmd_groups(common, out);
        if (*once_cmd)
            return cmd_alloc_once(once, out);
        if (*predict_cmd)
            return cmd_predict(predict_n, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return usage;
    } catch (const ConfigError& e) {
        err << e.what() << '\n';
        return config;
    } catch (const IoError& e) {
        err << "I/O error: " << e.what() << '\n';
        return io;
    } catch (const DegenerateRange& e) {
        err << "error: " << e.what() << '\n';
        return config;
    } catch (const InvalidParameter& e) {
        err << "invalid parameter: " << e.what() << '\n';
        return config;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return failure;
    }
    return usage;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("bitload");
    for (const auto& a : args)
        argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

} // namespace bitload::cli
