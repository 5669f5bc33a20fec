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

#include <catch2/catch_amalgamated.hpp>

#include "bitload/cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome invoke(const std::vector<std::string>& args)
{
    std::ostringstream out, err;
    const int code = bitload::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name)
{
    auto dir = fs::temp_directory_path() / ("bitload_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void write_file(const fs::path& p, const std::string& text)
{
    std::ofstream(p) << text;
}

std::string read_file(const fs::path& p)
{
    std::ifstream in(p);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

const char* kSmall = "n_subcarriers = 64\nn_users = 4\ntrials = 5\nseed = 3\nnoise_density_w_hz = 1.3e-19\n";

} // namespace

TEST_CASE("predict-complexity prints the closed form and ledger")
{
    const auto r = invoke({"predict-complexity", "--n", "1"});
    CHECK(r.code == 0);
    CHECK(r.out.find("N=1 T_HH=7 ") != std::string::npos);
    CHECK(r.out.find("per_iteration{add=3 mult=1 exp=1}") != std::string::npos);

    const auto two = invoke({"predict-complexity", "--n", "2,128"});
    CHECK(two.out.find("N=2 T_HH=22 ") != std::string::npos);
    CHECK(two.out.find("setup{mult=128 exp=128}") != std::string::npos);

    CHECK(invoke({"predict-complexity", "--n", "0"}).code == 2);
}

TEST_CASE("alloc-once loads a single channel")
{
    const auto dir = scratch("once");
    write_file(dir / "g.txt", "# gamma=1 pmax=7\n1\n");
    const auto r = invoke({"alloc-once", "--gains", (dir / "g.txt").string()});
    CHECK(r.code == 0);
    CHECK(r.out.find("bits=[3]") != std::string::npos);

    write_file(dir / "two.txt", "# gamma=2 pmax=4\n2\n2\n");
    const auto k = invoke({"alloc-once", "--gains", (dir / "two.txt").string(), "--algorithm", "HH-K", "--kappa", "2"});
    CHECK(k.code == 0);
    CHECK(k.out.find("bits=[2, 1]") != std::string::npos);

    const auto wf = invoke({"alloc-once", "--gains", (dir / "two.txt").string(), "--algorithm", "WF"});
    CHECK(wf.code == 0);
    CHECK(wf.out.find("algorithm=WF") != std::string::npos);

    write_file(dir / "bad.txt", "1\n2\n");
    CHECK(invoke({"alloc-once", "--gains", (dir / "bad.txt").string()}).code == 3);
    CHECK(invoke({"alloc-once", "--gains", (dir / "missing.txt").string()}).code == 4);
    CHECK(invoke({"alloc-once", "--gains", (dir / "g.txt").string(), "--algorithm", "XX"}).code == 2);
}

TEST_CASE("exit codes")
{
    const auto dir = scratch("codes");
    CHECK(invoke({}).code == 2);
    CHECK(invoke({"run", "--bogus"}).code == 2);
    CHECK(invoke({"run", "--set", "not_a_key=1", "--out", dir.string()}).code == 2);
    CHECK(invoke({"run", "--set", "trials=0", "--out", dir.string()}).code == 3);
    CHECK(invoke({"run", "--set", "trials=abc", "--out", dir.string()}).code == 3);
    CHECK(invoke({"run", "--scenario", (dir / "none.scn").string()}).code == 4);
    write_file(dir / "bad.scn", "n_users = 3\nn_subcarriers = 64\n");
    const auto bad = invoke({"run", "--scenario", (dir / "bad.scn").string(), "--out", dir.string()});
    CHECK(bad.code == 3);
    CHECK_FALSE(bad.err.empty());
}

TEST_CASE("--set overrides equal editing the scenario file")
{
    const auto dir = scratch("set");
    write_file(dir / "base.scn", kSmall);
    write_file(dir / "edited.scn", std::string(kSmall) + "tau_max_s = 5e-06\npmax_w = 2\n");

    const auto a = invoke({"run", "--scenario", (dir / "base.scn").string(), "--set", "tau_max_s=5e-6", "--set",
                           "pmax_w=2", "--out", (dir / "a").string(), "--threads", "2"});
    const auto b = invoke({"run", "--scenario", (dir / "edited.scn").string(), "--out", (dir / "b").string(),
                           "--threads", "1"});
    REQUIRE(a.code == 0);
    REQUIRE(b.code == 0);
    CHECK(read_file(dir / "a" / "results.csv") == read_file(dir / "b" / "results.csv"));
    CHECK(a.out == b.out);

    const auto c = invoke({"run", "--scenario", (dir / "base.scn").string(), "--seed", "4", "--out",
                           (dir / "c").string()});
    CHECK(read_file(dir / "c" / "results.csv") != read_file(dir / "a" / "results.csv"));
}

TEST_CASE("sweep-n emits plot data for every allocator")
{
    const auto dir = scratch("sweep");
    write_file(dir / "s.scn", std::string(kSmall) + "sweep_n = 32, 64\ntrials = 2\n");
    const auto r = invoke({"sweep-n", "--scenario", (dir / "s.scn").string(), "--out", dir.string()});
    REQUIRE(r.code == 0);
    for (const char* f : {"capacity_vs_n_EQ_na.dat", "capacity_vs_n_WF_na.dat", "capacity_vs_n_HH_na.dat",
                          "capacity_vs_n_HH-WF_na.dat", "capacity_vs_n_HH-K_2.dat", "iterations_vs_n_HH-K_16.dat",
                          "capacity_vs_n_HH-GRP_5.dat", "groups_vs_n_HH-GRP_0.25.dat"})
        CHECK(fs::exists(dir / f));
    CHECK(r.out.find("HH-GRP") != std::string::npos);
}

TEST_CASE("tradeoff-grid and groups subcommands")
{
    const auto dir = scratch("grid");
    write_file(dir / "s.scn", std::string(kSmall) + "trials = 2\ngt_db_list = 0.5, 5\n");
    const auto r = invoke({"tradeoff-grid", "--scenario", (dir / "s.scn").string(), "--out", dir.string(),
                           "--set", "sweep_tau_max_s=1e-6,25e-6"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("best G_T") != std::string::npos);
    CHECK(fs::exists(dir / "results.csv"));

    const auto g = invoke({"groups", "--scenario", (dir / "s.scn").string(), "--out", (dir / "g").string()});
    CHECK(g.code == 0);
    CHECK(g.out.find("groups") != std::string::npos);
}
