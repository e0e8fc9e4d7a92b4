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

#include "votefw/types.h"

#include <array>
#include <utility>

namespace votefw {

namespace {

template <typename E, std::size_t N>
std::optional<E> Lookup(const std::array<std::pair<E, std::string_view>, N>& table,
                        std::string_view text) {
  for (const auto& [value, name] : table) {
    if (name == text) return value;
  }
  return std::nullopt;
}

template <typename E, std::size_t N>
std::string_view NameOf(const std::array<std::pair<E, std::string_view>, N>& table,
                        E value) {
  for (const auto& [v, name] : table) {
    if (v == value) return name;
  }
  return "UNKNOWN";
}

constexpr std::array<std::pair<AlgorithmKind, std::string_view>, 4> kAlgorithmNames{{
    {AlgorithmKind::kMedian, "MEDIAN"},
    {AlgorithmKind::kMoonBoundedMedian, "MOON_BOUNDED_MEDIAN"},
    {AlgorithmKind::kWeightedCluster, "WEIGHTED_CLUSTER"},
    {AlgorithmKind::kExactMajority, "EXACT_MAJORITY"},
}};

constexpr std::array<std::pair<RejectReason, std::string_view>, 8> kReasonNames{{
    {RejectReason::kTimeout, "TIMEOUT"},
    {RejectReason::kStale, "STALE"},
    {RejectReason::kBabble, "BABBLE"},
    {RejectReason::kBadSequence, "BAD_SEQUENCE"},
    {RejectReason::kOutOfRange, "OUT_OF_RANGE"},
    {RejectReason::kRateExceeded, "RATE_EXCEEDED"},
    {RejectReason::kNoCluster, "NO_CLUSTER"},
    {RejectReason::kUnusableSensor, "UNUSABLE_SENSOR"},
}};

constexpr std::array<std::pair<OutcomeStatus, std::string_view>, 5> kStatusNames{{
    {OutcomeStatus::kValid, "VALID"},
    {OutcomeStatus::kDegraded, "DEGRADED"},
    {OutcomeStatus::kNoConsensus, "NO_CONSENSUS"},
    {OutcomeStatus::kInsufficientSensors, "INSUFFICIENT_SENSORS"},
    {OutcomeStatus::kImplausibleOutput, "IMPLAUSIBLE_OUTPUT"},
}};

constexpr std::array<std::pair<HealthState, std::string_view>, 3> kHealthNames{{
    {HealthState::kGood, "GOOD"},
    {HealthState::kBad, "BAD"},
    {HealthState::kUnusable, "UNUSABLE"},
}};

}  // namespace

std::ostream& operator<<(std::ostream& os, SensorId id) {
  return os << "s" << id.value;
}

std::int64_t RawMin(BitSize bits) {
  return -(std::int64_t{1} << (static_cast<int>(bits) - 1));
}

std::int64_t RawMax(BitSize bits) {
  return (std::int64_t{1} << (static_cast<int>(bits) - 1)) - 1;
}

std::string_view ToString(AlgorithmKind kind) { return NameOf(kAlgorithmNames, kind); }
std::string_view ToString(RejectReason reason) { return NameOf(kReasonNames, reason); }
std::string_view ToString(OutcomeStatus status) { return NameOf(kStatusNames, status); }
std::string_view ToString(HealthState state) { return NameOf(kHealthNames, state); }

std::optional<AlgorithmKind> ParseAlgorithmKind(std::string_view text) {
  return Lookup(kAlgorithmNames, text);
}
std::optional<RejectReason> ParseRejectReason(std::string_view text) {
  return Lookup(kReasonNames, text);
}
std::optional<OutcomeStatus> ParseOutcomeStatus(std::string_view text) {
  return Lookup(kStatusNames, text);
}
std::optional<HealthState> ParseHealthState(std::string_view text) {
  return Lookup(kHealthNames, text);
}

bool IsBehavioralReason(RejectReason reason) {
  switch (reason) {
    case RejectReason::kTimeout:
    case RejectReason::kStale:
    case RejectReason::kBabble:
    case RejectReason::kBadSequence:
    case RejectReason::kUnusableSensor:
      return true;
    default:
      return false;
  }
}

bool IsPlausibilityReason(RejectReason reason) {
  return reason == RejectReason::kOutOfRange || reason == RejectReason::kRateExceeded;
}

}  // namespace votefw
