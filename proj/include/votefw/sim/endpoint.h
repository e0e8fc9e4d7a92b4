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

// Simulated sensor device: answers polls with its waveform value, distorted
// by whichever scripted fault is active in the current cycle.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "votefw/config.h"
#include "votefw/sim/waveform.h"
#include "votefw/types.h"

namespace votefw::sim {

enum class FaultKind { kNone, kSilent, kStuck, kOffset, kSpike, kDelay, kBabble, kDuplicateSeq };

std::string_view ToString(FaultKind kind);
std::optional<FaultKind> ParseFaultKind(std::string_view text);

struct FaultSpec {
  FaultKind kind = FaultKind::kNone;
  CycleIndex start_cycle = 0;
  std::optional<CycleIndex> end_cycle;  // inclusive; nullopt = open-ended
  // OFFSET/SPIKE: engineering offset; DELAY: microseconds; BABBLE: frame count.
  double magnitude = 0.0;

  bool ActiveAt(CycleIndex cycle) const {
    return cycle >= start_cycle && (!end_cycle || cycle <= *end_cycle);
  }

  friend bool operator==(const FaultSpec&, const FaultSpec&) = default;
};

// One datagram leaving an endpoint. `delay` is added to the nominal
// response latency when the frame's logical receive time is computed.
struct ResponseFrame {
  std::vector<std::uint8_t> bytes;
  Micros delay{0};
};

class SensorEndpoint {
 public:
  SensorEndpoint(std::uint16_t profile_id, SensorDescriptor descriptor, WaveformSpec waveform,
                 std::vector<FaultSpec> faults, CycleIndex start_cycle, std::uint64_t seed);

  // Handles one poll. Malformed or misaddressed polls are dropped and
  // counted; a powered-down endpoint stays silent.
  std::vector<ResponseFrame> Step(std::span<const std::uint8_t> poll, CycleIndex cycle);

  // The undistorted engineering value the endpoint would report.
  double NominalValue(CycleIndex cycle) const;
  const FaultSpec* ActiveFault(CycleIndex cycle) const;

  SensorId id() const { return descriptor_.id; }
  std::uint64_t malformed_polls() const { return malformed_polls_; }

 private:
  std::int32_t ToRaw(double eng_value) const;

  std::uint16_t profile_id_;
  SensorDescriptor descriptor_;
  WaveformSpec waveform_;
  std::vector<FaultSpec> faults_;
  CycleIndex start_cycle_;
  std::uint64_t seed_;
  std::optional<std::uint32_t> last_sent_seq_;
  std::uint64_t malformed_polls_ = 0;
};

// Free-function form of SensorEndpoint::Step.
std::vector<ResponseFrame> sensor_endpoint_step(SensorEndpoint& endpoint,
                                                std::span<const std::uint8_t> poll,
                                                CycleIndex cycle);

}  // namespace votefw::sim
