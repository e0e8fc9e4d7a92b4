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

// Domain types shared by every stage of the voting framework.

#pragma once

#include <chrono>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace votefw {

using Micros = std::chrono::microseconds;
using CycleIndex = std::uint64_t;

struct SensorId {
  std::uint16_t value = 0;

  constexpr SensorId() = default;
  constexpr explicit SensorId(std::uint16_t v) : value(v) {}

  friend constexpr auto operator<=>(SensorId, SensorId) = default;
};

std::ostream& operator<<(std::ostream& os, SensorId id);

enum class BitSize : std::uint8_t { k8 = 8, k16 = 16, k32 = 32 };

// Inclusive raw-value bounds for a signed integer of the given width.
std::int64_t RawMin(BitSize bits);
std::int64_t RawMax(BitSize bits);

enum class AlgorithmKind : std::uint8_t {
  kMedian = 0,
  kMoonBoundedMedian = 1,
  kWeightedCluster = 2,
  kExactMajority = 3,
};

enum class RejectReason : std::uint8_t {
  kTimeout,
  kStale,
  kBabble,
  kBadSequence,
  kOutOfRange,
  kRateExceeded,
  kNoCluster,
  kUnusableSensor,
};

enum class OutcomeStatus : std::uint8_t {
  kValid = 0,
  kDegraded = 1,
  kNoConsensus = 2,
  kInsufficientSensors = 3,
  kImplausibleOutput = 4,
};

enum class HealthState : std::uint8_t { kGood, kBad, kUnusable };

std::string_view ToString(AlgorithmKind kind);
std::string_view ToString(RejectReason reason);
std::string_view ToString(OutcomeStatus status);
std::string_view ToString(HealthState state);

std::optional<AlgorithmKind> ParseAlgorithmKind(std::string_view text);
std::optional<RejectReason> ParseRejectReason(std::string_view text);
std::optional<OutcomeStatus> ParseOutcomeStatus(std::string_view text);
std::optional<HealthState> ParseHealthState(std::string_view text);

// True for the reasons input_data may produce.
bool IsBehavioralReason(RejectReason reason);
// True for the reasons input_vote may produce.
bool IsPlausibilityReason(RejectReason reason);

inline bool StatusCarriesValue(OutcomeStatus s) {
  return s == OutcomeStatus::kValid || s == OutcomeStatus::kDegraded;
}

struct SensorSample {
  SensorId sensor_id;
  std::uint32_t seq = 0;
  Micros receive_time{0};
  std::int32_t raw_value = 0;
  double eng_value = 0.0;  // raw_value * scale
  std::uint32_t frame_count_this_cycle = 1;

  friend bool operator==(const SensorSample&, const SensorSample&) = default;
};

struct Rejection {
  SensorId sensor_id;
  RejectReason reason = RejectReason::kTimeout;
  CycleIndex cycle = 0;
  std::string detail;

  friend bool operator==(const Rejection&, const Rejection&) = default;
};

// The good/bad split produced by every pipeline stage. Each input sensor
// lands in exactly one of the two lists.
struct StagePartition {
  CycleIndex cycle = 0;
  std::vector<SensorSample> good;
  std::vector<Rejection> bad;

  friend bool operator==(const StagePartition&, const StagePartition&) = default;
};

struct VoteOutcome {
  OutcomeStatus status = OutcomeStatus::kInsufficientSensors;
  std::optional<double> value;  // present iff status carries a value
  std::vector<SensorId> contributors;
  std::vector<Rejection> rejections;
  CycleIndex cycle = 0;
  std::string detail;

  friend bool operator==(const VoteOutcome&, const VoteOutcome&) = default;
};

struct HealthRecord {
  HealthState state = HealthState::kGood;
  std::uint32_t consecutive_good = 0;
  std::uint32_t consecutive_bad = 0;
  std::uint32_t bad_episodes = 0;
  CycleIndex last_transition_cycle = 0;
  // Set once the sensor has delivered any frame since boot. Until then bad
  // cycles never count as episodes.
  bool ever_contacted = false;

  friend bool operator==(const HealthRecord&, const HealthRecord&) = default;
};

}  // namespace votefw

template <>
struct std::hash<votefw::SensorId> {
  std::size_t operator()(votefw::SensorId id) const noexcept {
    return std::hash<std::uint16_t>{}(id.value);
  }
};
