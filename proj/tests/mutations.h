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

// Single-constraint mutations of the bundled prototype configuration.

#pragma once

#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "votefw/config.h"

namespace votefw::testing {

inline std::string ReadSourceFile(const std::string& relative) {
  std::ifstream in(std::string(VOTEFW_SOURCE_DIR) + "/" + relative, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string PrototypeDocument() { return ReadSourceFile("data/prototype.json"); }

struct Mutation {
  std::string name;
  std::string expected_field;
  std::function<void(nlohmann::json& profile)> apply;
};

inline std::vector<Mutation> PrototypeMutations() {
  using nlohmann::json;
  return {
      {"m exceeds n", "algorithm.m", [](json& p) { p["algorithm"]["m"] = 4; }},
      {"n exceeds sensors", "algorithm.n",
       [](json& p) {
         p["algorithm"]["m"] = 1;
         p["algorithm"]["n"] = 4;
       }},
      {"negative epsilon", "algorithm.epsilon", [](json& p) { p["algorithm"]["epsilon"] = -1.0; }},
      {"maxDevices above limit", "maxDevices", [](json& p) { p["maxDevices"] = 300; }},
      {"fourth sensor", "sensors",
       [](json& p) {
         json extra = p["sensors"][0];
         extra["id"] = 4;
         p["sensors"].push_back(extra);
       }},
      {"voting offset past cycle", "votingOffsetMicros",
       [](json& p) { p["votingOffsetMicros"] = 20000; }},
      {"response timeout past cycle", "acceptability.responseTimeoutMicros",
       [](json& p) { p["acceptability"]["responseTimeoutMicros"] = 25000; }},
      {"zero frame budget", "acceptability.maxFramesPerCycle",
       [](json& p) { p["acceptability"]["maxFramesPerCycle"] = 0; }},
      {"zero stale limit", "acceptability.staleLimit",
       [](json& p) { p["acceptability"]["staleLimit"] = 0; }},
      {"zero bad threshold", "health.badThreshold",
       [](json& p) { p["health"]["badThreshold"] = 0; }},
      {"zero rehab threshold", "health.rehabThreshold",
       [](json& p) { p["health"]["rehabThreshold"] = 0; }},
      {"zero unusable threshold", "health.unusableThreshold",
       [](json& p) { p["health"]["unusableThreshold"] = 0; }},
      {"inverted output range", "output.plausibleMin",
       [](json& p) { p["output"]["plausibleMin"] = 2000.0; }},
      {"duplicate sensor id", "sensors[1].id", [](json& p) { p["sensors"][1]["id"] = 1; }},
      {"negative weight", "sensors[2].weight", [](json& p) { p["sensors"][2]["weight"] = -1.0; }},
      {"odd bit size", "sensors[0].bitSize", [](json& p) { p["sensors"][0]["bitSize"] = 12; }},
      {"zero scale", "sensors[1].scale", [](json& p) { p["sensors"][1]["scale"] = 0.0; }},
      {"inverted sensor range", "sensors[2].plausibleMin",
       [](json& p) { p["sensors"][2]["plausibleMin"] = 5000.0; }},
      {"negative rate limit", "sensors[0].maxDeltaPerCycle",
       [](json& p) { p["sensors"][0]["maxDeltaPerCycle"] = -3.0; }},
      {"mixed units", "sensors[2].unitLabel", [](json& p) { p["sensors"][2]["unitLabel"] = "in"; }},
  };
}

struct MutationResult {
  bool rejected = false;
  bool field_named = false;  // exactly one finding, naming the expected field
  std::string findings;
};

inline MutationResult RunMutation(const Mutation& mutation) {
  nlohmann::json doc = nlohmann::json::parse(PrototypeDocument());
  mutation.apply(doc["profiles"][0]);
  MutationResult r;
  try {
    load_config(doc.dump());
  } catch (const ConfigError& e) {
    r.rejected = e.code() == ConfigErrorCode::kConstraintError;
    for (const auto& f : e.findings()) r.findings += f.ToString() + "; ";
    r.field_named = e.findings().size() == 1 && e.findings()[0].field == mutation.expected_field &&
                    e.findings()[0].profile == "profile[1]";
  }
  return r;
}

}  // namespace votefw::testing
