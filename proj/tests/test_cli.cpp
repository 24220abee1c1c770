// Copyright 2026 The AGF Workbench Authors
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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cli.hpp"

namespace agf::cli {
namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome call(std::vector<std::string> args) {
    args.insert(args.begin(), "agf");
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

TEST(Cli, EstimateEmitsJson) {
    const auto r = call({"estimate", "--channel", "depolarizing:0.2", "--epsilon", "0.1", "--delta", "0.2", "--seed",
                         "abc"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["algorithm"], "kwise-design");
    EXPECT_GE(j["estimate"].get<double>(), 0.0);
    EXPECT_LE(j["estimate"].get<double>(), 1.0);
    EXPECT_EQ(j["seed"], "abc");
}

TEST(Cli, EstimateNeedsSeed) {
    EXPECT_EQ(call({"estimate"}).code, kExitParameter);
}

TEST(Cli, EstimateCsv) {
    const auto r = call({"estimate", "--algorithm", "naive-haar", "--epsilon", "0.2", "--seed", "1", "--format", "csv"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 2);
}

TEST(Cli, PreconditionExitCode) {
    const std::vector<std::string> base{"estimate", "--algorithm", "single-qtpe", "--epsilon", "0.2",
                                        "--delta",  "0.5",         "--seed",      "1"};
    const auto r = call(base);
    EXPECT_EQ(r.code, kExitPrecondition);
    EXPECT_NE(r.err.find("108/(eps^2 d) < delta/2"), std::string::npos) << r.err;
    auto waived = base;
    waived.push_back("--waive-preconditions");
    const auto w = call(waived);
    ASSERT_EQ(w.code, kExitOk) << w.err;
    EXPECT_TRUE(nlohmann::json::parse(w.out)["diagnostic"].get<bool>());
}

TEST(Cli, ParameterAndConfigErrors) {
    EXPECT_EQ(call({"estimate", "--epsilon", "2", "--seed", "1"}).code, kExitParameter);
    EXPECT_EQ(call({"estimate", "--channel", "nonsense:1", "--seed", "1"}).code, kExitParameter);
    EXPECT_EQ(call({"estimate", "--algorithm", "iid-design", "--ensemble", "pauli1q", "--channel",
                    "over_rotation:x,0.5", "--seed", "1"})
                  .code,
              kExitParameter);
    EXPECT_EQ(call({"no-such-command"}).code, kExitParameter);
}

TEST(Cli, CheckDesign) {
    const auto r = call({"check-design", "--ensemble", "clifford1q", "--t", "1,2", "--format", "json"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    for (const auto &row : j["rows"]) EXPECT_LE(row["lambda"].get<double>(), 1e-10);
    const auto table = call({"check-design", "--ensemble", "pauli1q", "--t", "2"});
    ASSERT_EQ(table.code, kExitOk);
    EXPECT_NE(table.out.find("vacuous"), std::string::npos) << table.out;
}

TEST(Cli, CapacityExitCode) {
    const auto r = call({"check-design", "--ensemble", "clifford_product:3", "--d", "8", "--t", "4"});
    EXPECT_EQ(r.code, kExitCapacity) << r.err;
}

TEST(Cli, ValidatePrgAndVariance) {
    EXPECT_EQ(call({"validate", "--suite", "prg", "--n", "16", "--k", "4", "--theta", "0.25"}).code, kExitOk);
    const auto v = call({"validate", "--suite", "variance", "--channel", "depolarizing:0.2", "--d", "4"});
    ASSERT_EQ(v.code, kExitOk) << v.err;
    EXPECT_NE(v.out.find("PASS"), std::string::npos);
}

TEST(Cli, GenBits) {
    const std::vector<std::string> args{"gen-bits", "--k", "2", "--n", "4", "--theta", "0.5", "--seed"};
    auto a = args;
    a.push_back("00000");  // m = 5, so r = 10 bits and the seed takes three digits
    EXPECT_EQ(call(a).code, kExitParameter);
    auto b = args;
    b.push_back("000");
    const auto zero = call(b);
    ASSERT_EQ(zero.code, kExitOk) << zero.err;
    EXPECT_EQ(zero.out, "4 2 0.5 10 000\n0\n");
    auto c = args;
    c.push_back("2a7");
    EXPECT_EQ(call(c).out, call(c).out);
}

TEST(Cli, ConfigFile) {
    const auto dir = std::filesystem::temp_directory_path();
    const auto good = (dir / "agf_cli_good.json").string();
    const auto bad = (dir / "agf_cli_bad.json").string();
    std::ofstream(good) << R"({"subcommand":"estimate","algorithm":"naive-haar","epsilon":0.2,"seed":"5"})";
    std::ofstream(bad) << R"({"epsilon":0.2,"mystery":true})";
    const auto r = call({"--config", good, "estimate"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(nlohmann::json::parse(r.out)["algorithm"], "naive-haar");
    const auto over = call({"--config", good, "estimate", "--epsilon", "0.3"});
    EXPECT_EQ(nlohmann::json::parse(over.out)["epsilon"].get<double>(), 0.3);
    EXPECT_EQ(call({"--config", bad, "estimate", "--seed", "1"}).code, kExitParameter);
    std::filesystem::remove(good);
    std::filesystem::remove(bad);
}

TEST(Cli, HarnessVerdictExitCode) {
    const auto fail = call({"harness", "--algorithm", "iid-design", "--channel", "depolarizing:0.2", "--epsilon",
                            "0.001", "--trials", "10", "--repeats", "100", "--seed", "7"});
    EXPECT_EQ(fail.code, kExitValidation) << fail.err;
    const auto pass = call({"harness", "--algorithm", "naive-haar", "--epsilon", "0.2", "--repeats", "100", "--seed", "7"});
    EXPECT_EQ(pass.code, kExitOk) << pass.err;
}

TEST(Cli, OutputFileMatchesStdout) {
    const auto path = (std::filesystem::temp_directory_path() / "agf_cli_out.json").string();
    const std::vector<std::string> args{"estimate", "--algorithm", "naive-haar", "--epsilon", "0.2", "--seed", "9"};
    const auto direct = call(args);
    auto to_file = args;
    to_file.insert(to_file.end(), {"--output", path});
    ASSERT_EQ(call(to_file).code, kExitOk);
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    EXPECT_EQ(ss.str(), direct.out);
    std::filesystem::remove(path);
}

}  // namespace
}  // namespace agf::cli
