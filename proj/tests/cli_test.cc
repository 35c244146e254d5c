// Copyright 2026 The Offload Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Drives the offload binary end to end and checks exit codes and outputs.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>

#include "json.hpp"
#include "offload/datagen_io.h"
#include "offload/model.h"

namespace offload {
namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun Cli(const std::string& args) {
  const std::string cmd = std::string(OFFLOAD_CLI_PATH) + " " + args + " 2>&1";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string Tmp(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("offload_cli_" + name))
      .string();
}

const std::string kData = OFFLOAD_TEST_DATA;

TEST(Cli, SolveTwoNode) {
  const CliRun r = Cli("solve --instance " + kData + "/two_node.json --algo sma --out " +
                    Tmp("two.json"));
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("algo=sma total=3 certified=true"), std::string::npos)
      << r.out;
  const auto doc = nlohmann::json::parse(ReadFile(Tmp("two.json")));
  EXPECT_EQ(doc["total_cost"], 3.0);
  EXPECT_EQ(doc["optimal_certified"], true);
}

TEST(Cli, MincutGuardExitsTwo) {
  EXPECT_EQ(Cli("solve --instance " + kData + "/asymmetric.json --algo mincut").code, 2);
  EXPECT_EQ(Cli("solve --instance " + kData + "/homogeneous.json --algo mincut").code, 0);
}

TEST(Cli, BruteGuardExitsThree) {
  GenConfig cfg;
  cfg.n = 30;
  cfg.m = 60;
  cfg.seed = 4;
  SaveInstance(Generate(cfg), Tmp("n30.json"));
  EXPECT_EQ(Cli("solve --instance " + Tmp("n30.json") + " --algo brute").code, 3);
  EXPECT_EQ(Cli("solve --instance " + Tmp("n30.json") + " --algo sma").code, 0);
}

TEST(Cli, IoAndSchemaErrorsExitOne) {
  EXPECT_EQ(Cli("solve --instance /nonexistent.json").code, 1);
  WriteFile(Tmp("bad.json"), R"({"nodes": []})");
  const CliRun r = Cli("solve --instance " + Tmp("bad.json"));
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("/edges"), std::string::npos) << r.out;
}

TEST(Cli, InvalidInstanceDataExitsSix) {
  WriteFile(Tmp("neg.json"),
            R"({"nodes": [{"id": 0, "w_edge": -1, "w_cloud": 1}], "edges": []})");
  EXPECT_EQ(Cli("solve --instance " + Tmp("neg.json")).code, 6);
  EXPECT_EQ(Cli("gen --nodes 3 --edges 7 --out " + Tmp("g.json")).code, 6);
}

TEST(Cli, UsageErrorsExitFive) {
  EXPECT_EQ(Cli("").code, 5);
  EXPECT_EQ(Cli("solve").code, 5);
  EXPECT_EQ(Cli("solve --instance x --algo fastest").code, 5);
  EXPECT_EQ(Cli("gen --nodes 3 --edges 3 --ratio 1:2 --out " + Tmp("g.json")).code, 5);
  EXPECT_EQ(Cli("--help").code, 0);
}

TEST(Cli, Gen) {
  const CliRun r = Cli("gen --nodes 3 --edges 3 --ratio 3:5:4:2 --seed 7 --out " +
                    Tmp("gen.json"));
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("holds_strong=true"), std::string::npos);
  const TaskGraph g = LoadInstance(Tmp("gen.json"));
  EXPECT_EQ(g.num_nodes(), 3);
  EXPECT_EQ(g.num_edges(), 3);
  EXPECT_TRUE(CheckAssumption(g).holds_strong);
  Cli("gen --nodes 3 --edges 3 --ratio 3:5:4:2 --seed 7 --out " + Tmp("gen2.json"));
  EXPECT_EQ(ReadFile(Tmp("gen.json")), ReadFile(Tmp("gen2.json")));
}

TEST(Cli, ReduceTriangle) {
  const CliRun r = Cli("reduce maxcut --graph " + kData + "/triangle.txt --k 2 --out " +
                    Tmp("red.json"));
  ASSERT_EQ(r.code, 0) << r.out;
  const std::string text = ReadFile(Tmp("red.json"));
  EXPECT_EQ(nlohmann::json::parse(text)["metadata"]["threshold"], 5.0);
  const TaskGraph g = ParseInstance(text);
  EXPECT_EQ(g.num_nodes(), 3);
  EXPECT_EQ(g.edge(0).cost, (EdgeCost{3, 1, 1, 3}));
  EXPECT_EQ(Cli("reduce maxcut --graph " + kData + "/triangle.txt --k 9 --out " +
                Tmp("red.json")).code, 5);
}

TEST(Cli, ValidateReduction) {
  CliRun r = Cli("validate lemma2 --graph " + kData + "/triangle.txt");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("PASS"), std::string::npos);
  EXPECT_NE(r.out.find("q*=2 O*=5"), std::string::npos) << r.out;
  r = Cli("validate lemma2 --graph " + kData + "/path.txt");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("q*=2 O*=2"), std::string::npos) << r.out;
  WriteFile(Tmp("lonely.txt"), "# one vertex\n4 4\n");
  EXPECT_EQ(Cli("validate lemma2 --graph " + Tmp("lonely.txt")).code, 6);
}

TEST(Cli, BenchDeterministicCsv) {
  const std::string suite = kData + "/suite_small.json";
  ASSERT_EQ(Cli("bench --no-timing --suite " + suite + " --out " + Tmp("a.csv")).code, 0);
  ASSERT_EQ(Cli("bench --no-timing --suite " + suite + " --out " + Tmp("b.csv")).code, 0);
  EXPECT_EQ(ReadFile(Tmp("a.csv")), ReadFile(Tmp("b.csv")));
  EXPECT_EQ(ReadFile(Tmp("a.csv")), ReadFile(kData + "/suite_small.expected.csv"));
}

TEST(Cli, BenchAllFailedExitsSeven) {
  WriteFile(Tmp("fail_suite.json"), R"({"algorithms": ["mincut"],
      "instances": [{"name": "a", "nodes": 5, "edges": 8, "seed": 1}]})");
  EXPECT_EQ(Cli("bench --suite " + Tmp("fail_suite.json") + " --out " +
                Tmp("fail.csv")).code, 7);
}

TEST(Cli, BenchIlpExportWritesLp) {
  WriteFile(Tmp("lp_suite.json"), R"({"algorithms": ["ilp-export"],
      "instances": [{"name": "a", "nodes": 5, "edges": 8, "seed": 1}]})");
  ASSERT_EQ(Cli("bench --suite " + Tmp("lp_suite.json") + " --out " + Tmp("lp.csv")).code, 0);
  EXPECT_TRUE(std::filesystem::exists(Tmp("lp.csv") + ".a_r0.lp"));
}

TEST(Cli, ExportLp) {
  ASSERT_EQ(Cli("export-lp --instance " + kData + "/two_node.json --out " +
                Tmp("two.lp")).code, 0);
  EXPECT_NE(ReadFile(Tmp("two.lp")).find("Minimize"), std::string::npos);
}

}  // namespace
}  // namespace offload
