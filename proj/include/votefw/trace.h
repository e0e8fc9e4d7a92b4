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

// Line-delimited trace files.
//
// The first line is a header record ({"type":"header",...}) carrying the
// profile configuration; each following line is one cycle record
// ({"type":"cycle",...}). Records are compact JSON with sorted keys, so two
// equal traces are byte-identical.

#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "votefw/config.h"
#include "votefw/profile.h"
#include "votefw/types.h"

namespace votefw {

inline constexpr const char* kTraceFormat = "votefw-trace";
inline constexpr int kTraceVersion = 1;

struct HealthTransition {
  SensorId sensor_id;
  HealthState from = HealthState::kGood;
  HealthState to = HealthState::kGood;

  friend bool operator==(const HealthTransition&, const HealthTransition&) = default;
};

struct AppliedWrite {
  std::uint16_t index = 0;
  ObjectValue value;

  friend bool operator==(const AppliedWrite&, const AppliedWrite&) = default;
};

struct TraceRecord {
  CycleIndex cycle = 0;
  std::uint16_t profile_id = 0;
  OutcomeStatus status = OutcomeStatus::kInsufficientSensors;
  std::optional<double> value;
  std::vector<SensorId> contributors;
  std::vector<Rejection> rejections;
  std::vector<HealthTransition> health_transitions;
  // Everything the controller received this cycle, for offline replay.
  std::vector<SensorSample> samples;
  // Object writes issued during this cycle (effective from the next one).
  std::vector<AppliedWrite> writes;

  friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

struct TraceHeader {
  VoteProfileConfig profile;
  std::uint64_t seed = 0;
  std::uint64_t total_cycles = 0;

  friend bool operator==(const TraceHeader&, const TraceHeader&) = default;
};

struct Trace {
  std::optional<TraceHeader> header;  // absent only for an empty file
  std::vector<TraceRecord> records;

  friend bool operator==(const Trace&, const Trace&) = default;
};

class TraceFormatError : public std::runtime_error {
 public:
  TraceFormatError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

std::string EncodeHeader(const TraceHeader& header);
std::string EncodeRecord(const TraceRecord& record);
// Header line plus one line per record, each newline-terminated.
std::string EncodeTrace(const Trace& trace);

// Schema-checked parse. An empty input yields an empty trace.
Trace ParseTrace(std::istream& in);
Trace ParseTrace(const std::string& text);

// Health transitions between two snapshots, ascending by sensor.
std::vector<HealthTransition> DiffHealth(const std::map<SensorId, HealthRecord>& before,
                                         const std::map<SensorId, HealthRecord>& after);

// Run summary: cycle count, outcome histogram, rejection totals and final
// health states.
std::string SummarizeTrace(const Trace& trace);

// Human-readable diagnostic report for maintenance staff.
std::string ReportTrace(const Trace& trace);

}  // namespace votefw
