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

// Scripted sensor-network scenarios.
//
// A scenario names one vote profile (inline or from a configuration file),
// a waveform per sensor, optional fault schedules and power-up cycles, and
// object writes to issue mid-cycle. run_scenario() plays it cycle by cycle:
//
//   cycleStart            latch pending writes, poll every usable sensor
//   cycleStart + latency  responses arrive (plus any DELAY)
//   cycleStart + offset   voting_manager runs, the cycle record is appended
//
// Time is logical in both clock modes; REAL mode additionally sleeps so that
// cycle k starts k * cycleTime after the run began.

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "votefw/config.h"
#include "votefw/profile.h"
#include "votefw/sim/endpoint.h"
#include "votefw/sim/waveform.h"
#include "votefw/trace.h"

namespace votefw::sim {

enum class ClockMode { kVirtual, kReal };

struct ScheduledWrite {
  CycleIndex cycle = 0;
  std::uint16_t index = 0;
  ObjectValue value;

  friend bool operator==(const ScheduledWrite&, const ScheduledWrite&) = default;
};

struct SensorScript {
  WaveformSpec waveform;
  std::vector<FaultSpec> faults;
  CycleIndex start_cycle = 0;

  friend bool operator==(const SensorScript&, const SensorScript&) = default;
};

struct ScenarioSpec {
  VoteProfileConfig profile;
  std::map<SensorId, SensorScript> sensors;
  std::uint64_t total_cycles = 0;
  ClockMode clock = ClockMode::kVirtual;
  std::string transport = "loopback";  // "loopback" or "udp"
  std::uint64_t master_seed = 0;
  Micros response_latency{1000};
  std::vector<ScheduledWrite> writes;
};

enum class ScenarioErrorCode { kConfigMismatch, kBindFailure, kTransportFailure };

class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(ScenarioErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ScenarioErrorCode code() const { return code_; }

 private:
  ScenarioErrorCode code_;
};

// Parses a scenario document. A string "config" is resolved relative to
// `base_dir`. Throws ScenarioError(kConfigMismatch) or ConfigError.
ScenarioSpec ParseScenario(std::string_view document,
                           const std::filesystem::path& base_dir = {});
ScenarioSpec LoadScenarioFile(const std::filesystem::path& path);

// Checks the scenario against its profile. Throws ScenarioError.
void ValidateScenario(const ScenarioSpec& scenario);

struct RunStats {
  std::uint64_t malformed_frames = 0;  // DATA frames dropped by the controller
  std::uint64_t malformed_polls = 0;   // polls dropped by endpoints
  std::uint64_t late_frames = 0;       // frames arriving after the cycle ended
};

Trace run_scenario(const ScenarioSpec& scenario, RunStats* stats = nullptr);

// Feeds a trace's recorded samples and writes back through the pipeline and
// returns the recomputed records.
std::vector<TraceRecord> ReplayTrace(const Trace& trace);

}  // namespace votefw::sim
