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

#include "votefw/health.h"

namespace votefw {

HealthRecord record_cycle_verdict(HealthRecord record, Verdict verdict,
                                  const HealthParams& params, CycleIndex cycle) {
  if (record.state == HealthState::kUnusable) {
    throw HealthError(HealthErrorCode::kFrozenRecord, "record is UNUSABLE");
  }

  if (verdict == Verdict::kGood) {
    ++record.consecutive_good;
    record.consecutive_bad = 0;
    if (record.state == HealthState::kBad && record.consecutive_good >= params.rehab_threshold) {
      record.state = HealthState::kGood;
      record.consecutive_good = 0;
      record.consecutive_bad = 0;
      record.last_transition_cycle = cycle;
    }
    return record;
  }

  ++record.consecutive_bad;
  record.consecutive_good = 0;
  if (record.state == HealthState::kGood && record.consecutive_bad >= params.bad_threshold) {
    record.state = HealthState::kBad;
    record.last_transition_cycle = cycle;
    // A sensor that never answered since boot is still powering up.
    if (record.ever_contacted) {
      ++record.bad_episodes;
      if (record.bad_episodes >= params.unusable_threshold) {
        record.state = HealthState::kUnusable;
      }
    }
  }
  return record;
}

HealthRecord acknowledge_maintenance(HealthRecord record) {
  if (record.state != HealthState::kUnusable) {
    throw HealthError(HealthErrorCode::kNotUnusable, "record is not UNUSABLE");
  }
  HealthRecord reset;
  reset.ever_contacted = record.ever_contacted;
  return reset;
}

std::map<SensorId, HealthRecord> health_snapshot(const VoteProfile& profile) {
  return profile.health_records();
}

}  // namespace votefw
