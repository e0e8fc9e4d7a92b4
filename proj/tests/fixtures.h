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

// Randomized pipeline inputs shared by unit and acceptance tests.

#pragma once

#include <random>
#include <vector>

#include "oracles.h"
#include "votefw/pipeline.h"
#include "votefw/profile.h"

namespace votefw::testing {

inline SensorSample Sample(std::uint16_t id, std::uint32_t seq, Micros t, double eng) {
  SensorSample s;
  s.sensor_id = SensorId{id};
  s.seq = seq;
  s.receive_time = t;
  s.eng_value = eng;
  s.raw_value = static_cast<std::int32_t>(eng * 10);
  s.frame_count_this_cycle = 1;
  return s;
}

// A profile with random algorithm choice and randomly aged per-sensor state.
inline VoteProfile RandomProfile(std::mt19937_64& rng) {
  VoteProfileConfig cfg = PrototypeProfile();
  const int sensors = 3 + static_cast<int>(rng() % 3);
  for (int i = 3; i < sensors; ++i) {
    SensorDescriptor s = cfg.sensors[0];
    s.id = SensorId{static_cast<std::uint16_t>(i + 1)};
    cfg.sensors.push_back(s);
  }
  cfg.max_devices = static_cast<std::uint32_t>(sensors);
  cfg.algorithm.kind = static_cast<AlgorithmKind>(rng() % 4);
  cfg.algorithm.n = static_cast<std::uint32_t>(sensors);
  cfg.algorithm.m = 1 + static_cast<std::uint32_t>(rng() % sensors);
  cfg.algorithm.epsilon = static_cast<double>(rng() % 6);
  for (auto& s : cfg.sensors) s.weight = static_cast<double>(rng() % 3);
  cfg.sensors[0].weight = 1.0;
  cfg.output_plausible_max = 120.0 + static_cast<double>(rng() % 900);

  VoteProfile profile(cfg);
  for (const auto& s : cfg.sensors) {
    HealthRecord& h = profile.mutable_health(s.id);
    const auto pick = rng() % 6;
    h.state = pick == 0 ? HealthState::kUnusable : (pick == 1 ? HealthState::kBad : HealthState::kGood);
    h.ever_contacted = rng() % 2;
    h.bad_episodes = h.state == HealthState::kUnusable ? cfg.health.unusable_threshold : 0;
    SensorTrack& t = profile.mutable_track(s.id);
    if (rng() % 3) t.last_accepted_seq = static_cast<std::uint32_t>(rng() % 20);
    if (rng() % 3) t.last_plausible_value = 80.0 + static_cast<double>(rng() % 60);
    t.last_plausible_cycle = rng() % 20;
    t.consecutive_missed = static_cast<std::uint32_t>(rng() % 4);
  }
  return profile;
}

// Random frames for cycle 20: late, duplicated, stale-sequence, out-of-range.
inline CycleContext RandomCycle(std::mt19937_64& rng, const VoteProfile& profile) {
  const CycleIndex cycle = 20;
  const Micros start{400000};
  std::vector<SensorSample> samples;
  for (const auto& s : profile.config().sensors) {
    const int frames = static_cast<int>(rng() % 8) - 1;  // -1 => none
    for (int f = 0; f < frames; ++f) {
      const auto t = start + Micros{static_cast<std::int64_t>(rng() % 14000)};
      const auto seq = static_cast<std::uint32_t>(rng() % 25);
      double v = 90.0 + static_cast<double>(rng() % 40);
      if (rng() % 10 == 0) v = 2000.0;
      samples.push_back(Sample(s.id.value, seq, t, v));
    }
  }
  std::shuffle(samples.begin(), samples.end(), rng);
  return MakeCycleContext(profile, cycle, start, std::move(samples));
}

// The literal four-stage composition, without committing state.
inline VoteOutcome ComposeStages(const CycleContext& ctx, const VoteProfile& profile) {
  return output_data(output_vote(input_vote(input_data(ctx, profile), profile), profile), profile);
}

}  // namespace votefw::testing
