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

// Boot-time configuration of vote profiles.
//
// A configuration document is a JSON object with a "profiles" array; each
// entry describes one sensor group, its voting algorithm and the thresholds
// used by the acceptability, plausibility and health stages. load_config()
// validates the whole document and either returns every profile or throws a
// ConfigError listing every violation found.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "votefw/types.h"

namespace votefw {

// Upper bound on maxDevices; the object index space reserves 0x2100..0x21FF
// for per-sensor weights.
inline constexpr std::uint32_t kMaxDevicesLimit = 256;

struct DataCharacteristics {
  BitSize bit_size = BitSize::k16;
  double scale = 1.0;  // engineering units per raw count
  std::string unit_label;
  double plausible_min = 0.0;
  double plausible_max = 0.0;
  double max_delta_per_cycle = 0.0;

  friend bool operator==(const DataCharacteristics&, const DataCharacteristics&) = default;
};

struct SensorDescriptor {
  SensorId id;
  std::string name;
  double weight = 1.0;
  DataCharacteristics characteristics;

  friend bool operator==(const SensorDescriptor&, const SensorDescriptor&) = default;
};

struct AcceptabilityParams {
  Micros response_timeout{0};
  std::uint32_t max_frames_per_cycle = 1;
  std::uint32_t stale_limit = 1;

  friend bool operator==(const AcceptabilityParams&, const AcceptabilityParams&) = default;
};

struct HealthParams {
  std::uint32_t bad_threshold = 1;
  std::uint32_t rehab_threshold = 1;
  std::uint32_t unusable_threshold = 1;

  friend bool operator==(const HealthParams&, const HealthParams&) = default;
};

struct AlgorithmSpec {
  AlgorithmKind kind = AlgorithmKind::kMoonBoundedMedian;
  std::uint32_t m = 2;
  std::uint32_t n = 3;
  double epsilon = 0.0;

  friend bool operator==(const AlgorithmSpec&, const AlgorithmSpec&) = default;
};

struct VoteProfileConfig {
  std::uint16_t profile_id = 0;
  std::vector<SensorDescriptor> sensors;
  std::uint32_t max_devices = 1;
  AlgorithmSpec algorithm;
  Micros cycle_time{20000};
  Micros voting_offset{0};
  AcceptabilityParams acceptability;
  HealthParams health;
  double output_plausible_min = 0.0;
  double output_plausible_max = 0.0;

  const SensorDescriptor* FindSensor(SensorId id) const;

  friend bool operator==(const VoteProfileConfig&, const VoteProfileConfig&) = default;
};

enum class ConfigErrorCode { kSchemaError, kConstraintError };

struct ConfigFinding {
  ConfigErrorCode code = ConfigErrorCode::kConstraintError;
  std::string profile;  // "profile[<id>]" or "profiles[<index>]" when the id is unusable
  std::string field;    // dotted path inside the profile, e.g. "algorithm.m"
  std::string message;

  // "profile[1].algorithm.m: m (4) exceeds n (3)"
  std::string ToString() const;
};

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<ConfigFinding> findings);

  const std::vector<ConfigFinding>& findings() const { return findings_; }
  // Schema errors take precedence when both kinds are present.
  ConfigErrorCode code() const;

 private:
  std::vector<ConfigFinding> findings_;
};

// Parses and validates a configuration document. Throws ConfigError.
std::vector<VoteProfileConfig> load_config(std::string_view document);

// Inverse of load_config for valid configurations.
std::string serialize_config(const std::vector<VoteProfileConfig>& configs);

// Constraint checks on already-typed values. `profile_label` prefixes the
// findings. Used by load_config and by object writes.
std::vector<ConfigFinding> ValidateProfile(const VoteProfileConfig& config,
                                           const std::string& profile_label);

std::string ProfileLabel(std::uint16_t profile_id);

}  // namespace votefw
