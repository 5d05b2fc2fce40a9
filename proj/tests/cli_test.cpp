//
// Copyright 2026 The anonarray Authors
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
//

#include "cli_app.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "support/fixtures.hpp"

namespace anonarray::cli {
namespace {

using ::anonarray::testing::data_path;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "anonarray");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

const std::string kUni = data_path("university/schema.json");
const std::string kUniCs = data_path("university/constraints.json");
const std::string kBin = data_path("binary3/schema.json");

std::filesystem::path temp_file(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "anonarray_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

TEST(CliVerifyTest, ArrayB) {
  const CliRun r = run({"verify", kUni, data_path("university/array_b.csv"), kUniCs,
                     "--t", "2"});
  EXPECT_EQ(r.code, kOk);
  EXPECT_NE(r.out.find("r = 2"), std::string::npos);
}

TEST(CliVerifyTest, ArrayAWithTargetListsViolation) {
  const CliRun r = run({"verify", kUni, data_path("university/array_a.csv"), kUniCs,
                     "--t", "2", "--r", "2"});
  EXPECT_EQ(r.code, kViolation);
  EXPECT_NE(r.out.find("{(Job,grader),(Department,CS)} appears 1 time(s)"),
            std::string::npos);
}

TEST(CliVerifyTest, ConstrainedFixture) {
  const CliRun r = run({"verify", kBin, data_path("binary3/constrained.csv"),
                     data_path("binary3/hard.json"), "--t", "2"});
  EXPECT_EQ(r.code, kOk);
  EXPECT_NE(r.out.find("r = 2"), std::string::npos);
}

TEST(CliVerifyTest, HardViolationExitCode) {
  const auto csv = temp_file("bad.csv");
  std::ofstream(csv) << "a1,a2,a3\n0,0,1\n1,1,1\n";
  const CliRun r = run({"verify", kBin, csv.string(), data_path("binary3/hard.json"),
                     "--t", "2", "--r", "2"});
  EXPECT_EQ(r.code, kHardViolation);
  EXPECT_NE(r.out.find("hard violation: row 1"), std::string::npos);
}

TEST(CliVerifyTest, JsonOutput) {
  const CliRun r = run({"verify", kUni, data_path("university/array_b.csv"), kUniCs,
                     "--t", "3", "--json", "--threads", "2"});
  ASSERT_EQ(r.code, kOk);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["format_version"], 1);
  EXPECT_EQ(doc["r"], 1);
  EXPECT_EQ(doc["t"], 3);
}

TEST(CliVerifyTest, ParseErrorNamesFileLineColumn) {
  const auto csv = temp_file("typo.csv");
  std::ofstream(csv) << "a1,a2,a3\n0,1,0\n1,x,0\n";
  const CliRun r = run({"verify", kBin, csv.string(), "--t", "2"});
  EXPECT_EQ(r.code, kInputError);
  EXPECT_NE(r.err.find(csv.string() + ":3:3"), std::string::npos) << r.err;
}

TEST(CliVerifyTest, UsageErrors) {
  EXPECT_EQ(run({"verify", kBin}).code, kInputError);
  EXPECT_EQ(run({}).code, kInputError);
  EXPECT_EQ(run({"--help"}).code, kOk);
}

TEST(CliProfileTest, ArrayB) {
  const CliRun r = run({"profile", kUni, data_path("university/array_b.csv")});
  EXPECT_EQ(r.code, kOk);
  EXPECT_EQ(r.out, "t\tr\n1\t4\n2\t2\n3\t1\n");
  const CliRun j = run({"profile", kBin, data_path("binary3/low.csv"), "--json"});
  const auto doc = nlohmann::json::parse(j.out);
  EXPECT_EQ(doc["entries"].size(), 3u);
}

TEST(CliHomogeneityTest, LowMediumHighFixtures) {
  const CliRun high = run({"homogeneity", kBin, data_path("binary3/high.csv"), "--t", "2"});
  EXPECT_EQ(high.code, kOk);
  EXPECT_NE(high.out.find("min 0.5 max 1.5 global 0.75"), std::string::npos);
  const CliRun low = run({"homogeneity", kBin, data_path("binary3/low.csv"), "--t", "2"});
  EXPECT_NE(low.out.find("min 0.5 max 0.5 global 0.5"), std::string::npos);
  const CliRun medium =
      run({"homogeneity", kBin, data_path("binary3/medium.csv"), "--t", "2"});
  EXPECT_NE(medium.out.find("min 0.583333 max 0.583333 global 0.583333"),
            std::string::npos);
}

TEST(CliHomogeneityTest, ClosenessAndHypergraphExport) {
  const auto path = temp_file("graph.json");
  const CliRun r = run({"homogeneity", kBin, data_path("binary3/high.csv"), "--t", "2",
                     "--closeness", "--json", "--hypergraph", "json",
                     "--hypergraph-out", path.string()});
  ASSERT_EQ(r.code, kOk);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["closeness"]["matrix"][0][1], "3/2");
  std::ifstream in(path);
  const auto graph = nlohmann::json::parse(in);
  EXPECT_EQ(graph["edges"].size(), 6u);
  EXPECT_EQ(run({"homogeneity", kBin, data_path("binary3/high.csv"), "--t", "2",
                 "--hypergraph", "dot"})
                .code,
            kInputError);
}

TEST(CliConstructTest, ArrayAToTwelveRows) {
  const auto out = temp_file("padded.csv");
  const CliRun r = run({"construct", kUni, "--base", data_path("university/array_a.csv"),
                     "--constraints", kUniCs, "--r", "2", "--t", "2", "--output",
                     out.string()});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_NE(r.out.find("rows 12"), std::string::npos);
  const CliRun check = run({"verify", kUni, out.string(), kUniCs, "--t", "2", "--r", "2"});
  EXPECT_EQ(check.code, kOk);
}

TEST(CliConstructTest, ArrayBUnchanged) {
  const CliRun r = run({"construct", kUni, "--base", data_path("university/array_b.csv"),
                     "--constraints", kUniCs, "--r", "2", "--t", "2", "--json"});
  ASSERT_EQ(r.code, kOk);
  std::ifstream in(data_path("university/array_b.csv"));
  std::stringstream original;
  original << in.rdbuf();
  EXPECT_EQ(r.out, original.str());
  EXPECT_EQ(nlohmann::json::parse(r.err)["padding_count"], 0);
}

TEST(CliConstructTest, InfeasibleHardPairs) {
  const CliRun r = run({"construct", kBin, "--constraints",
                     data_path("binary3/hard.json"), "--r", "2", "--t", "2"});
  EXPECT_EQ(r.code, kInfeasible);
  EXPECT_NE(r.err.find("witness: {(a1,0),(a3,0)}"), std::string::npos);
  EXPECT_NE(r.err.find("witness: {(a1,0),(a3,1)}"), std::string::npos);
}

TEST(CliConstructTest, BudgetExceeded) {
  const CliRun r = run({"construct", kUni, "--base", data_path("university/array_a.csv"),
                     "--constraints", kUniCs, "--r", "2", "--t", "2", "--max-rows",
                     "8"});
  EXPECT_EQ(r.code, kBudgetExceeded);
  EXPECT_NE(r.err.find("short: "), std::string::npos);
}

TEST(CliConstructTest, BaseHardViolation) {
  const auto csv = temp_file("bad_base.csv");
  std::ofstream(csv) << "a1,a2,a3\n0,0,1\n";
  const CliRun r = run({"construct", kBin, "--base", csv.string(), "--constraints",
                     data_path("binary3/hard_with_implicit.json"), "--r", "2",
                     "--t", "2"});
  EXPECT_EQ(r.code, kHardViolation);
}

TEST(CliConstructTest, SeedDeterminism) {
  const std::vector<std::string> args = {"construct", kBin, "--r", "3", "--t", "2",
                                         "--seed", "7"};
  auto with_threads = args;
  with_threads.insert(with_threads.end(), {"--threads", "3"});
  EXPECT_EQ(run(args).out, run(with_threads).out);
}

TEST(CliDeriveTest, HardPairs) {
  const CliRun r = run({"constraints", "derive", kBin, data_path("binary3/hard.json"),
                     "--t", "2"});
  EXPECT_EQ(r.code, kInfeasible);
  EXPECT_NE(r.out.find("implicit hard: {(a1,0)}"), std::string::npos);
  const CliRun ok = run({"constraints", "derive", kBin,
                      data_path("binary3/hard_with_implicit.json"), "--t", "2",
                      "--json"});
  EXPECT_EQ(ok.code, kOk);
  EXPECT_EQ(nlohmann::json::parse(ok.out)["feasible"], true);
}

}  // namespace
}  // namespace anonarray::cli
