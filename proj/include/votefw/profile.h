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

// Runtime vote profiles and their object-addressable parameter set.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "votefw/config.h"
#include "votefw/types.h"

namespace votefw {

// Per-sensor bookkeeping the pipeline carries from one cycle to the next.
struct SensorTrack {
  std::optional<std::uint32_t> last_accepted_seq;
  std::optional<double> last_plausible_value;
  CycleIndex last_plausible_cycle = 0;
  std::uint32_t consecutive_missed = 0;

  friend bool operator==(const SensorTrack&, const SensorTrack&) = default;
};

// Object index map.
namespace objects {
inline constexpr std::uint16_t kProfileId = 0x1000;
inline constexpr std::uint16_t kMaxDevices = 0x1001;
inline constexpr std::uint16_t kAlgorithmKind = 0x2000;
inline constexpr std::uint16_t kAlgorithmM = 0x2001;
inline constexpr std::uint16_t kAlgorithmN = 0x2002;
inline constexpr std::uint16_t kEpsilon = 0x2003;
inline constexpr std::uint16_t kWeightBase = 0x2100;  // + sensor position in the profile
inline constexpr std::uint16_t kOutputValue = 0x3000;
inline constexpr std::uint16_t kLastOutcomeStatus = 0x3001;
inline constexpr std::uint16_t kBadThreshold = 0x4000;
inline constexpr std::uint16_t kRehabThreshold = 0x4001;
inline constexpr std::uint16_t kUnusableThreshold = 0x4002;
}  // namespace objects

// An object value is absent, an integer or a real. Integer objects reject
// reals; real objects accept integers.
struct ObjectValue {
  std::variant<std::monostate, std::int64_t, double> v;

  static ObjectValue Absent() { return {}; }
  static ObjectValue Int(std::int64_t i) { return {i}; }
  static ObjectValue Real(double d) { return {d}; }

  bool is_absent() const { return std::holds_alternative<std::monostate>(v); }
  bool is_int() const { return std::holds_alternative<std::int64_t>(v); }
  bool is_real() const { return std::holds_alternative<double>(v); }
  std::int64_t as_int() const { return std::get<std::int64_t>(v); }
  double as_real() const { return std::get<double>(v); }

  friend bool operator==(const ObjectValue&, const ObjectValue&) = default;
};

// One instantiated voting group. Parameter writes go to a pending copy of
// the configuration and become active only at the next cycle boundary
// (LatchPendingWrites), so a cycle always votes with one coherent set.
class VoteProfile {
 public:
  explicit VoteProfile(VoteProfileConfig config);

  const VoteProfileConfig& config() const { return active_; }
  const VoteProfileConfig& pending_config() const { return pending_; }
  bool has_pending_writes() const { return !(pending_ == active_); }
  void LatchPendingWrites() { active_ = pending_; }

  std::uint16_t id() const { return active_.profile_id; }

  const std::map<SensorId, HealthRecord>& health_records() const { return health_; }
  std::map<SensorId, HealthRecord>& mutable_health_records() { return health_; }
  const HealthRecord& health(SensorId id) const { return health_.at(id); }
  HealthRecord& mutable_health(SensorId id) { return health_.at(id); }

  const std::map<SensorId, SensorTrack>& tracks() const { return tracks_; }
  const SensorTrack& track(SensorId id) const { return tracks_.at(id); }
  SensorTrack& mutable_track(SensorId id) { return tracks_.at(id); }

  const std::optional<double>& output_value() const { return output_value_; }
  const std::optional<VoteOutcome>& last_outcome() const { return last_outcome_; }
  // Records a finished cycle; output_value follows the outcome's value.
  void SetOutcome(VoteOutcome outcome);

 private:
  friend void object_write(VoteProfile&, std::uint16_t, const ObjectValue&);

  VoteProfileConfig active_;
  VoteProfileConfig pending_;
  std::map<SensorId, HealthRecord> health_;
  std::map<SensorId, SensorTrack> tracks_;
  std::optional<double> output_value_;
  std::optional<VoteOutcome> last_outcome_;
};

// Builds one profile per configuration, each GOOD with zeroed counters.
std::vector<VoteProfile> instantiate_profiles(const std::vector<VoteProfileConfig>& configs);

enum class ObjectErrorCode { kUnknownIndex, kReadOnly, kConstraintError };

class ObjectAccessError : public std::runtime_error {
 public:
  ObjectAccessError(ObjectErrorCode code, std::uint16_t index, const std::string& message);
  ObjectErrorCode code() const { return code_; }
  std::uint16_t index() const { return index_; }

 private:
  ObjectErrorCode code_;
  std::uint16_t index_;
};

// Reads reflect pending writes, so a write followed by a read returns the
// written value even before it latches.
ObjectValue object_read(const VoteProfile& profile, std::uint16_t index);

// Validates the write against the same rules as load_config and stages it
// for the next cycle. Throws ObjectAccessError.
void object_write(VoteProfile& profile, std::uint16_t index, const ObjectValue& value);

// Every index object_read accepts for this profile, ascending.
std::vector<std::uint16_t> ObjectIndices(const VoteProfile& profile);
bool IsWritableObject(std::uint16_t index);

}  // namespace votefw
