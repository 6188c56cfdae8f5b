// Copyright 2026 The pqmsel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pqmsel/cli.h"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome cli(std::vector<std::string> args) {
    args.insert(args.begin(), "pqmsel");
    std::vector<const char *> argv;
    for (const auto &a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = pqmsel::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string &name) {
    const auto dir = fs::temp_directory_path() / ("pqmsel_cli_" + name);
    fs::remove_all(dir);
    return dir;
}

const std::string kCancer = std::string(PQMSEL_DATA_DIR) + "/proben1/cancer.dt";

std::vector<std::string> small_select(const fs::path &out, int jobs) {
    return {"select", "--dataset", kCancer, "--folds", "5", "--seeds-per-fold", "2", "--control-qubits", "20",
            "--hidden-min", "1", "--hidden-max", "3", "--seed", "11", "--out", out.string(), "--jobs",
            std::to_string(jobs)};
}

const char *kReportFiles[] = {"report.csv", "table.txt", "scatter.csv", "distribution.csv", "manifest.json"};

}  // namespace

TEST(CliPqm, verify_two_patterns) {
    const auto r = cli({"pqm", "verify", "--pattern", "00", "--pattern", "11", "--input", "00", "--control-qubits",
                        "2"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.substr(0, r.out.find("max_abs_deviation")), "0,0.5\n1,0\n2,0.5\nE(X)=1\n");
}

TEST(CliPqm, analytic_exact_match_is_zero) {
    const auto r = cli({"pqm", "analytic", "--pattern", "0110", "--input", "0110", "--control-qubits", "5"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("E(X)=0\n"), std::string::npos) << r.out;
}

TEST(CliPqm, circuit_default_probe_is_all_ones) {
    const auto r = cli({"pqm", "circuit", "--pattern", "11", "--control-qubits", "3"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NEAR(std::stod(r.out.substr(2)), 1.0, 1e-12);
    EXPECT_EQ(r.out.substr(r.out.find('\n') + 1), "1,0\n2,0\n3,0\nE(X)=0\n");
}

TEST(CliPqm, argument_errors_exit_2) {
    EXPECT_EQ(cli({"pqm", "analytic", "--pattern", "01x", "--control-qubits", "2"}).code, 2);
    EXPECT_EQ(cli({"pqm", "analytic", "--pattern", "01"}).code, 2);
    EXPECT_EQ(cli({"pqm", "analytic", "--control-qubits", "2"}).code, 2);
    EXPECT_EQ(cli({"pqm", "analytic", "--pattern", "01", "--input", "0", "--control-qubits", "2"}).code, 2);
    EXPECT_EQ(cli({"select"}).code, 2);
    EXPECT_EQ(cli({"nonsense"}).code, 2);
    EXPECT_EQ(cli({}).code, 2);
}

TEST(CliPqm, circuit_capacity_error_exits_1) {
    const auto r = cli({"pqm", "circuit", "--pattern", "0101010101", "--control-qubits", "10"});
    EXPECT_EQ(r.code, 1);
    EXPECT_FALSE(r.err.empty());
}

TEST(CliPqm, memory_file_formats) {
    const auto dir = scratch("memfile");
    fs::create_directories(dir);
    std::ofstream(dir / "plain.txt") << "# stored\n00\n11\n";
    std::ofstream(dir / "records.txt") << "0,5,00\n1,6,11\n";
    std::ofstream(dir / "bad.txt") << "00\n1a\n";
    const auto a = cli({"pqm", "analytic", "--memory-file", (dir / "plain.txt").string(), "--input", "00",
                        "--control-qubits", "2"});
    const auto b = cli({"pqm", "analytic", "--memory-file", (dir / "records.txt").string(), "--input", "00",
                        "--control-qubits", "2"});
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    const auto bad = cli({"pqm", "analytic", "--memory-file", (dir / "bad.txt").string(), "--control-qubits", "2"});
    EXPECT_EQ(bad.code, 1);
    EXPECT_NE(bad.err.find(":2:"), std::string::npos) << bad.err;
    fs::remove_all(dir);
}

TEST(CliSuperposition, eight_branch_toy) {
    const auto r = cli({"superposition", "--bits", "1", "--weights", "2", "--folds", "2", "--control-qubits", "5"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.rfind("branches=8\n", 0), 0u) << r.out;
    const auto pos = r.out.find("max_abs_deviation=");
    ASSERT_NE(pos, std::string::npos);
    EXPECT_LE(std::stod(r.out.substr(pos + 18)), 1e-12);
}

TEST(CliSuperposition, cap_exceeded_exits_1) {
    const auto r = cli({"superposition", "--bits", "8", "--weights", "4"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("2^32"), std::string::npos) << r.err;
}

TEST(CliSuperposition, writes_branch_records) {
    const auto dir = scratch("super");
    const auto r = cli({"superposition", "--folds", "2", "--control-qubits", "4", "--out", dir.string()});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(fs::exists(dir / "manifest.json"));
    std::ifstream in(dir / "branches.txt");
    std::string line;
    std::size_t lines = 0;
    while (std::getline(in, line)) ++lines;
    EXPECT_EQ(lines, 32u);
    fs::remove_all(dir);
}

TEST(CliSelect, byte_identical_across_jobs_and_report_reemits) {
    const auto one = scratch("jobs1"), three = scratch("jobs3"), again = scratch("reemit");
    const auto a = cli(small_select(one, 1));
    const auto b = cli(small_select(three, 3));
    ASSERT_EQ(a.code, 0) << a.err;
    ASSERT_EQ(b.code, 0) << b.err;
    EXPECT_EQ(a.out, b.out);
    for (const char *name : kReportFiles) EXPECT_EQ(slurp(one / name), slurp(three / name)) << name;
    EXPECT_EQ(slurp(one / "results.json"), slurp(three / "results.json"));

    const auto r = cli({"report", "--results", (one / "results.json").string(), "--out", again.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    for (const char *name : kReportFiles) EXPECT_EQ(slurp(again / name), slurp(one / name)) << name;

    // 3 architectures, d + 1 = 21 distribution rows each, plus headers.
    std::size_t dist_rows = 0, scatter_rows = 0;
    for (char c : slurp(one / "distribution.csv")) dist_rows += c == '\n';
    for (char c : slurp(one / "scatter.csv")) scatter_rows += c == '\n';
    EXPECT_EQ(dist_rows, 1u + 3 * 21);
    EXPECT_EQ(scatter_rows, 1u + 3);

    const auto manifest = nlohmann::json::parse(slurp(one / "manifest.json"));
    EXPECT_EQ(manifest["command"], "select");
    EXPECT_EQ(manifest["master_seed"], 11);
    EXPECT_EQ(manifest["config"]["selection"]["kappa"], 5);
    EXPECT_EQ(manifest["dataset_fingerprint"].get<std::string>().rfind("fnv1a64:", 0), 0u);
    for (const auto &d : {one, three, again}) fs::remove_all(d);
}

TEST(CliSelect, export_vectors_feed_pqm) {
    const auto dir = scratch("export");
    auto args = small_select(dir, 1);
    args.push_back("--export-vectors");
    ASSERT_EQ(cli(args).code, 0);
    const auto results = nlohmann::json::parse(slurp(dir / "results.json"));
    const double e2 = results["architectures"][1]["expected_ones"].get<double>();
    const auto r = cli({"pqm", "analytic", "--memory-file", (dir / "vectors_h2.txt").string(), "--control-qubits",
                        "20"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto pos = r.out.find("E(X)=");
    EXPECT_NEAR(std::stod(r.out.substr(pos + 5)), e2, 1e-9);
    fs::remove_all(dir);
}

TEST(CliSelect, data_and_argument_errors) {
    const auto dir = scratch("errors");
    auto args = small_select(dir, 1);
    args[2] = "/nonexistent/cancer.dt";
    EXPECT_EQ(cli(args).code, 1);
    args = small_select(dir, 1);
    args[12] = "0";  // --hidden-max 0
    EXPECT_EQ(cli(args).code, 2);
    args = small_select(dir, 1);
    args.insert(args.end(), {"--mode", "greedy"});
    EXPECT_EQ(cli(args).code, 2);
    fs::remove_all(dir);
}

TEST(CliReport, version_mismatch_and_missing_file) {
    const auto dir = scratch("version");
    ASSERT_EQ(cli(small_select(dir, 1)).code, 0);
    auto j = nlohmann::json::parse(slurp(dir / "results.json"));
    j["format"] = 99;
    std::ofstream(dir / "future.json") << j.dump();
    EXPECT_EQ(cli({"report", "--results", (dir / "future.json").string(), "--out", dir.string()}).code, 1);
    j = nlohmann::json::parse(slurp(dir / "results.json"));
    j["manifest"]["version"] = "0.0.0";
    std::ofstream(dir / "old.json") << j.dump();
    EXPECT_EQ(cli({"report", "--results", (dir / "old.json").string(), "--out", dir.string()}).code, 1);
    EXPECT_EQ(cli({"report", "--results", (dir / "none.json").string(), "--out", dir.string()}).code, 1);
    fs::remove_all(dir);
}
