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

// Sensor health lifecycle: GOOD -> BAD after badThreshold consecutive bad
// cycles, BAD -> GOOD after rehabThreshold consecutive good cycles, and
// BAD -> UNUSABLE once the number of GOOD -> BAD episodes reaches
// unusableThreshold. UNUSABLE is left only through maintenance.

#pragma once

#include <map>
#include <stdexcept>

#include "votefw/config.h"
#include "votefw/profile.h"
#include "votefw/types.h"

namespace votefw {

enum class Verdict : bool { kBad = false, kGood = true };

enum class HealthErrorCode { kFrozenRecord, kNotUnusable };

class HealthError : public std::logic_error {
 public:
  HealthError(HealthErrorCode code, const std::string& message)
      : std::logic_error(message), code_(code) {}
  HealthErrorCode code() const { return code_; }

 private:
  HealthErrorCode code_;
};

// Applies one cycle's verdict. Throws HealthError(kFrozenRecord) on an
// UNUSABLE record.
HealthRecord record_cycle_verdict(HealthRecord record, Verdict verdict,
                                  const HealthParams& params, CycleIndex cycle);

// Resets an UNUSABLE record to GOOD. Throws HealthError(kNotUnusable).
HealthRecord acknowledge_maintenance(HealthRecord record);

std::map<SensorId, HealthRecord> health_snapshot(const VoteProfile& profile);

}  // namespace votefw
