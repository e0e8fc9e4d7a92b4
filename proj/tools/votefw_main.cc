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

// votefw: validate configurations, run scenarios, report on traces.
//
// Exit codes: 0 ok, 1 invalid input, 2 unreadable config, 3 transport failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "votefw/config.h"
#include "votefw/sim/scenario.h"
#include "votefw/trace.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitUnreadable = 2;
constexpr int kExitTransport = 3;

std::optional<std::string> Slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int CmdValidate(const std::string& path) {
  auto text = Slurp(path);
  if (!text) {
    std::cerr << "error: cannot read " << path << "\n";
    return kExitUnreadable;
  }
  try {
    auto profiles = votefw::load_config(*text);
    std::cout << path << ": ok (" << profiles.size() << " profile"
              << (profiles.size() == 1 ? "" : "s") << ")\n";
    return kExitOk;
  } catch (const votefw::ConfigError& e) {
    std::cout << path << ": invalid\n";
    for (const auto& f : e.findings()) std::cout << "  " << f.ToString() << "\n";
    return kExitInvalid;
  }
}

int CmdRun(const std::string& path, const std::string& trace_out, const std::string& clock,
           std::optional<std::uint64_t> seed) {
  using votefw::sim::ScenarioError;
  using votefw::sim::ScenarioErrorCode;
  try {
    votefw::sim::ScenarioSpec scenario = votefw::sim::LoadScenarioFile(path);
    if (clock == "real") scenario.clock = votefw::sim::ClockMode::kReal;
    if (clock == "virtual") scenario.clock = votefw::sim::ClockMode::kVirtual;
    if (seed) scenario.master_seed = *seed;

    votefw::sim::RunStats stats;
    votefw::Trace trace = votefw::sim::run_scenario(scenario, &stats);
    if (!trace_out.empty()) {
      std::ofstream out(trace_out, std::ios::binary | std::ios::trunc);
      out << votefw::EncodeTrace(trace);
      if (!out) {
        std::cerr << "error: cannot write " << trace_out << "\n";
        return kExitInvalid;
      }
    }
    std::cout << votefw::SummarizeTrace(trace);
    if (stats.malformed_frames + stats.malformed_polls + stats.late_frames > 0) {
      std::cout << "dropped frames: malformed " << stats.malformed_frames << ", late "
                << stats.late_frames << "; malformed polls " << stats.malformed_polls << "\n";
    }
    return kExitOk;
  } catch (const ScenarioError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == ScenarioErrorCode::kConfigMismatch ? kExitInvalid : kExitTransport;
  } catch (const votefw::ConfigError& e) {
    std::cerr << "error: invalid configuration\n";
    for (const auto& f : e.findings()) std::cerr << "  " << f.ToString() << "\n";
    return kExitInvalid;
  }
}

int CmdReport(const std::string& path) {
  auto text = Slurp(path);
  if (!text) {
    std::cerr << "error: cannot read " << path << "\n";
    return kExitInvalid;
  }
  try {
    std::cout << votefw::ReportTrace(votefw::ParseTrace(*text));
    return kExitOk;
  } catch (const votefw::TraceFormatError& e) {
    std::cerr << "error: " << path << ": " << e.what() << "\n";
    return kExitInvalid;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"votefw - redundant sensor voting toolkit"};
  app.require_subcommand(1);

  std::string config_path, config_flag;
  auto* validate = app.add_subcommand("validate", "Check a vote-profile configuration");
  validate->add_option("path", config_path, "configuration file");
  validate->add_option("--config", config_flag, "configuration file");

  std::string scenario_path, trace_out, clock;
  std::optional<std::uint64_t> seed;
  auto* run = app.add_subcommand("run", "Run a scripted scenario");
  run->add_option("scenario", scenario_path, "scenario file")->required();
  run->add_option("--trace-out", trace_out, "write the trace here");
  run->add_option("--clock", clock, "virtual or real")
      ->check(CLI::IsMember({"virtual", "real"}));
  run->add_option("--seed", seed, "override the scenario's master seed");

  std::string trace_path;
  auto* report = app.add_subcommand("report", "Summarize a trace file");
  report->add_option("trace", trace_path, "trace file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitInvalid;
  }

  if (*validate) {
    if (!config_flag.empty()) config_path = config_flag;
    if (config_path.empty()) {
      std::cerr << "error: validate needs a configuration file\n";
      return kExitInvalid;
    }
    return CmdValidate(config_path);
  }
  if (*run) return CmdRun(scenario_path, trace_out, clock, seed);
  return CmdReport(trace_path);
}
