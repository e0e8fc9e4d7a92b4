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

// Synthetic measurand signals for simulated sensors.
//
// Noise is counter-based: the value for cycle c is SplitMix64 applied to
// (seed + golden * (c + 1)), so any cycle can be recomputed without
// replaying earlier ones. Per-sensor seeds are split from the scenario's
// master seed with the same mixer:
//
//   sensor_seed = mix(master + golden * (sensor_id + 1)) ^ waveform.seed
//   u(c)        = (mix(sensor_seed + golden * (c + 1)) >> 11) * 2^-53
//
// where golden = 0x9E3779B97F4A7C15 and mix is the SplitMix64 finaliser.

#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "votefw/types.h"

namespace votefw::sim {

enum class WaveformKind { kConstant, kRamp, kSine, kNoisyConstant };

std::string_view ToString(WaveformKind kind);
std::optional<WaveformKind> ParseWaveformKind(std::string_view text);

struct WaveformSpec {
  WaveformKind kind = WaveformKind::kConstant;
  double offset = 0.0;
  double amplitude = 0.0;    // RAMP: slope per cycle; SINE: peak deviation
  double period = 1.0;       // SINE, in cycles
  double noise_range = 0.0;  // NOISY_CONSTANT: uniform in [-range, range)
  std::uint64_t seed = 0;

  friend bool operator==(const WaveformSpec&, const WaveformSpec&) = default;
};

std::uint64_t SplitMix64(std::uint64_t x);
std::uint64_t SensorSeed(std::uint64_t master_seed, SensorId id, std::uint64_t waveform_seed);
// Uniform in [0, 1).
double UnitNoise(std::uint64_t sensor_seed, CycleIndex cycle);

// Engineering value of the signal at `cycle`.
double WaveformValue(const WaveformSpec& spec, std::uint64_t sensor_seed, CycleIndex cycle);

}  // namespace votefw::sim
