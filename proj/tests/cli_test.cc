// Copyright 2026 The votefw Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Drives the votefw binary end to end.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "mutations.h"

namespace {

namespace fs = std::filesystem;

struct Result {
  int exit_code = -1;
  std::string out;
};

Result Cli(const std::string& args) {
  const std::string cmd = std::string(VOTEFW_CLI) + " " + args + " 2>&1";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string Src(const std::string& rel) { return std::string(VOTEFW_SOURCE_DIR) + "/" + rel; }

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("votefw_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

TEST_F(CliTest, ValidatePrototype) {
  auto r = Cli("validate " + Src("data/prototype.json"));
  EXPECT_EQ(r.exit_code, 0) << r.out;
  EXPECT_EQ(Cli("validate --config " + Src("data/prototype.json")).exit_code, 0);
}

TEST_F(CliTest, ValidateInvalidNamesField) {
  auto doc = nlohmann::json::parse(votefw::testing::PrototypeDocument());
  doc["profiles"][0]["algorithm"]["m"] = 4;
  doc["profiles"][0]["sensors"][1]["scale"] = 0;
  const auto path = dir_ / "bad.json";
  std::ofstream(path) << doc.dump();
  auto r = Cli("validate " + path.string());
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.out.find("profile[1].algorithm.m"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("profile[1].sensors[1].scale"), std::string::npos) << r.out;
}

TEST_F(CliTest, ValidateMissingFile) {
  EXPECT_EQ(Cli("validate " + (dir_ / "nope.json").string()).exit_code, 2);
}

TEST_F(CliTest, RunNominalSummary) {
  auto r = Cli("run " + Src("scenarios/nominal.json"));
  EXPECT_EQ(r.exit_code, 0) << r.out;
  EXPECT_NE(r.out.find("VALID: 100, DEGRADED: 0"), std::string::npos) << r.out;
}

TEST_F(CliTest, RunBabbleSummary) {
  auto r = Cli("run " + Src("scenarios/babble.json"));
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("BABBLE="), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("GOOD -> BAD"), std::string::npos) << r.out;
}

TEST_F(CliTest, SeededRunsAreByteIdenticalAndReportable) {
  const auto a = dir_ / "a.trace", b = dir_ / "b.trace";
  const std::string scenario = Src("scenarios/noisy_faults.json");
  ASSERT_EQ(Cli("run " + scenario + " --seed 99 --trace-out " + a.string()).exit_code, 0);
  ASSERT_EQ(Cli("run " + scenario + " --seed 99 --trace-out " + b.string()).exit_code, 0);
  EXPECT_FALSE(Slurp(a).empty());
  EXPECT_EQ(Slurp(a), Slurp(b));
  auto r = Cli("report " + a.string());
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("timeline"), std::string::npos) << r.out;
}

TEST_F(CliTest, InvalidScenarioAndTrace) {
  const auto scenario = dir_ / "s.json";
  std::ofstream(scenario) << R"({"config": ")" << Src("data/prototype.json")
                          << R"(", "totalCycles": 0})";
  EXPECT_EQ(Cli("run " + scenario.string()).exit_code, 1);
  EXPECT_EQ(Cli("run " + (dir_ / "missing.json").string()).exit_code, 1);
  const auto trace = dir_ / "t.trace";
  std::ofstream(trace) << "{\"type\":\"cycle\"}\n";
  EXPECT_EQ(Cli("report " + trace.string()).exit_code, 1);
  const auto empty = dir_ / "empty.trace";
  std::ofstream(empty).flush();
  auto r = Cli("report " + empty.string());
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("0 cycles"), std::string::npos);
  EXPECT_NE(Cli("run").exit_code, 0);
  EXPECT_NE(Cli("run " + Src("scenarios/nominal.json") + " --clock=sundial").exit_code, 0);
}

}  // namespace
