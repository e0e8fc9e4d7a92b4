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

#include "votefw/profile.h"

#include <cmath>
#include <limits>
#include <sstream>

namespace votefw {

namespace {

std::string Hex(std::uint16_t index) {
  std::ostringstream os;
  os << "0x" << std::hex << std::uppercase << index;
  return os.str();
}

[[noreturn]] void Fail(ObjectErrorCode code, std::uint16_t index, const std::string& msg) {
  throw ObjectAccessError(code, index, "object " + Hex(index) + ": " + msg);
}

bool IsWeightIndex(const VoteProfileConfig& cfg, std::uint16_t index) {
  return index >= objects::kWeightBase &&
         index < objects::kWeightBase + static_cast<std::uint32_t>(cfg.sensors.size());
}

std::int64_t RequireInt(std::uint16_t index, const ObjectValue& value) {
  if (!value.is_int()) Fail(ObjectErrorCode::kConstraintError, index, "expects an integer");
  return value.as_int();
}

double RequireReal(std::uint16_t index, const ObjectValue& value) {
  if (value.is_int()) return static_cast<double>(value.as_int());
  if (!value.is_real()) Fail(ObjectErrorCode::kConstraintError, index, "expects a number");
  return value.as_real();
}

std::uint32_t RequireCount(std::uint16_t index, const ObjectValue& value) {
  std::int64_t v = RequireInt(index, value);
  if (v < 0 || v > std::numeric_limits<std::uint32_t>::max()) {
    Fail(ObjectErrorCode::kConstraintError, index, "value out of range");
  }
  return static_cast<std::uint32_t>(v);
}

}  // namespace

VoteProfile::VoteProfile(VoteProfileConfig config)
    : active_(std::move(config)), pending_(active_) {
  for (const auto& s : active_.sensors) {
    health_.emplace(s.id, HealthRecord{});
    tracks_.emplace(s.id, SensorTrack{});
  }
}

void VoteProfile::SetOutcome(VoteOutcome outcome) {
  output_value_ = StatusCarriesValue(outcome.status) ? outcome.value : std::nullopt;
  last_outcome_ = std::move(outcome);
}

std::vector<VoteProfile> instantiate_profiles(const std::vector<VoteProfileConfig>& configs) {
  std::vector<VoteProfile> profiles;
  profiles.reserve(configs.size());
  for (const auto& c : configs) profiles.emplace_back(c);
  return profiles;
}

ObjectAccessError::ObjectAccessError(ObjectErrorCode code, std::uint16_t index,
                                     const std::string& message)
    : std::runtime_error(message), code_(code), index_(index) {}

bool IsWritableObject(std::uint16_t index) {
  switch (index) {
    case objects::kAlgorithmKind:
    case objects::kAlgorithmM:
    case objects::kAlgorithmN:
    case objects::kEpsilon:
    case objects::kBadThreshold:
    case objects::kRehabThreshold:
    case objects::kUnusableThreshold:
      return true;
    default:
      return index >= objects::kWeightBase && index < objects::kWeightBase + kMaxDevicesLimit;
  }
}

ObjectValue object_read(const VoteProfile& profile, std::uint16_t index) {
  const VoteProfileConfig& c = profile.pending_config();
  switch (index) {
    case objects::kProfileId:
      return ObjectValue::Int(c.profile_id);
    case objects::kMaxDevices:
      return ObjectValue::Int(c.max_devices);
    case objects::kAlgorithmKind:
      return ObjectValue::Int(static_cast<std::int64_t>(c.algorithm.kind));
    case objects::kAlgorithmM:
      return ObjectValue::Int(c.algorithm.m);
    case objects::kAlgorithmN:
      return ObjectValue::Int(c.algorithm.n);
    case objects::kEpsilon:
      return ObjectValue::Real(c.algorithm.epsilon);
    case objects::kOutputValue:
      return profile.output_value() ? ObjectValue::Real(*profile.output_value())
                                    : ObjectValue::Absent();
    case objects::kLastOutcomeStatus:
      return profile.last_outcome()
                 ? ObjectValue::Int(static_cast<std::int64_t>(profile.last_outcome()->status))
                 : ObjectValue::Absent();
    case objects::kBadThreshold:
      return ObjectValue::Int(c.health.bad_threshold);
    case objects::kRehabThreshold:
      return ObjectValue::Int(c.health.rehab_threshold);
    case objects::kUnusableThreshold:
      return ObjectValue::Int(c.health.unusable_threshold);
    default:
      break;
  }
  if (IsWeightIndex(c, index)) {
    return ObjectValue::Real(c.sensors[index - objects::kWeightBase].weight);
  }
  Fail(ObjectErrorCode::kUnknownIndex, index, "unknown index");
}

void object_write(VoteProfile& profile, std::uint16_t index, const ObjectValue& value) {
  switch (index) {
    case objects::kProfileId:
    case objects::kMaxDevices:
    case objects::kOutputValue:
    case objects::kLastOutcomeStatus:
      Fail(ObjectErrorCode::kReadOnly, index, "read-only");
    default:
      break;
  }

  VoteProfileConfig next = profile.pending_;
  switch (index) {
    case objects::kAlgorithmKind: {
      std::int64_t k = RequireInt(index, value);
      if (k < 0 || k > static_cast<std::int64_t>(AlgorithmKind::kExactMajority)) {
        Fail(ObjectErrorCode::kConstraintError, index, "unknown algorithm kind");
      }
      next.algorithm.kind = static_cast<AlgorithmKind>(k);
      break;
    }
    case objects::kAlgorithmM:
      next.algorithm.m = RequireCount(index, value);
      break;
    case objects::kAlgorithmN:
      next.algorithm.n = RequireCount(index, value);
      break;
    case objects::kEpsilon:
      next.algorithm.epsilon = RequireReal(index, value);
      break;
    case objects::kBadThreshold:
      next.health.bad_threshold = RequireCount(index, value);
      break;
    case objects::kRehabThreshold:
      next.health.rehab_threshold = RequireCount(index, value);
      break;
    case objects::kUnusableThreshold:
      next.health.unusable_threshold = RequireCount(index, value);
      break;
    default:
      if (!IsWeightIndex(next, index)) Fail(ObjectErrorCode::kUnknownIndex, index, "unknown index");
      next.sensors[index - objects::kWeightBase].weight = RequireReal(index, value);
      break;
  }

  auto findings = ValidateProfile(next, ProfileLabel(next.profile_id));
  if (!findings.empty()) Fail(ObjectErrorCode::kConstraintError, index, findings.front().ToString());
  profile.pending_ = std::move(next);
}

std::vector<std::uint16_t> ObjectIndices(const VoteProfile& profile) {
  std::vector<std::uint16_t> out = {objects::kProfileId, objects::kMaxDevices,
                                    objects::kAlgorithmKind, objects::kAlgorithmM,
                                    objects::kAlgorithmN, objects::kEpsilon};
  for (std::size_t k = 0; k < profile.pending_config().sensors.size(); ++k) {
    out.push_back(static_cast<std::uint16_t>(objects::kWeightBase + k));
  }
  out.insert(out.end(), {objects::kOutputValue, objects::kLastOutcomeStatus,
                         objects::kBadThreshold, objects::kRehabThreshold,
                         objects::kUnusableThreshold});
  return out;
}

}  // namespace votefw
