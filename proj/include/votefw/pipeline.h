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

// The per-cycle voting process.
//
//   input_data   behavioural acceptability (timeouts, staleness, babbling,
//                sequence discipline)
//   input_vote   plausibility of the data (range and rate checks)
//   output_vote  the configured voting algorithm
//   output_data  plausibility of the voted value
//
// The four stages are pure with respect to the profile. voting_manager runs
// them in order and then commits the cycle: sensor tracking, health verdicts,
// the error-management sink and the profile's output value.

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <vector>

#include "votefw/health.h"
#include "votefw/profile.h"
#include "votefw/types.h"

namespace votefw {

struct CycleContext {
  CycleIndex cycle = 0;
  Micros cycle_start{0};
  std::vector<SensorSample> samples;  // possibly several per sensor
  // Consecutive cycles each sensor had no in-window frame, before this one.
  std::map<SensorId, std::uint32_t> missed_by;
};

// Builds a context whose missed_by counters come from the profile's tracks.
CycleContext MakeCycleContext(const VoteProfile& profile, CycleIndex cycle, Micros cycle_start,
                              std::vector<SensorSample> samples);

// Receives every rejection the pipeline produces (append-only).
class ErrorSink {
 public:
  virtual ~ErrorSink() = default;
  virtual void Report(CycleIndex cycle, std::uint16_t profile_id, const Rejection& rejection) = 0;
};

struct DiagnosticRecord {
  CycleIndex cycle = 0;
  std::uint16_t profile_id = 0;
  Rejection rejection;
};

class VectorErrorSink : public ErrorSink {
 public:
  void Report(CycleIndex cycle, std::uint16_t profile_id, const Rejection& rejection) override {
    records_.push_back({cycle, profile_id, rejection});
  }
  const std::vector<DiagnosticRecord>& records() const { return records_; }

 private:
  std::vector<DiagnosticRecord> records_;
};

// Stage-2 checks run on each good sample. A check returns a rejection to
// drop the sample or nullopt to keep it.
using PlausibilityCheck = std::function<std::optional<Rejection>(
    const SensorSample&, const SensorDescriptor&, const SensorTrack&, CycleIndex)>;

std::optional<Rejection> RangeCheck(const SensorSample& sample, const SensorDescriptor& sensor,
                                    const SensorTrack& track, CycleIndex cycle);
std::optional<Rejection> RateCheck(const SensorSample& sample, const SensorDescriptor& sensor,
                                   const SensorTrack& track, CycleIndex cycle);
const std::vector<PlausibilityCheck>& DefaultPlausibilityChecks();

StagePartition input_data(const CycleContext& ctx, const VoteProfile& profile);
StagePartition input_vote(const StagePartition& partition, const VoteProfile& profile);
StagePartition input_vote(const StagePartition& partition, const VoteProfile& profile,
                          const std::vector<PlausibilityCheck>& checks);
VoteOutcome output_vote(const StagePartition& partition, const VoteProfile& profile);
VoteOutcome output_data(VoteOutcome outcome, const VoteProfile& profile);

// Per-sensor verdicts for the health module: good iff the sensor survived
// stages 1 and 2. Covers every configured sensor.
std::map<SensorId, Verdict> CycleVerdicts(const StagePartition& after_plausibility,
                                          const VoteProfile& profile);

// Updates tracks and health from a finished cycle. Split out so callers can
// replay the four stages by hand and still commit identically.
void CommitCycle(const CycleContext& ctx, const StagePartition& after_acceptability,
                 const StagePartition& after_plausibility, const VoteOutcome& outcome,
                 VoteProfile& profile, ErrorSink* sink);

VoteOutcome voting_manager(const CycleContext& ctx, VoteProfile& profile,
                           ErrorSink* sink = nullptr);

}  // namespace votefw
