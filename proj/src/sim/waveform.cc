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

#include "votefw/sim/waveform.h"

#include <cmath>
#include <numbers>

namespace votefw::sim {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
}  // namespace

std::string_view ToString(WaveformKind kind) {
  switch (kind) {
    case WaveformKind::kConstant:
      return "CONSTANT";
    case WaveformKind::kRamp:
      return "RAMP";
    case WaveformKind::kSine:
      return "SINE";
    case WaveformKind::kNoisyConstant:
      return "NOISY_CONSTANT";
  }
  return "UNKNOWN";
}

std::optional<WaveformKind> ParseWaveformKind(std::string_view text) {
  for (auto k : {WaveformKind::kConstant, WaveformKind::kRamp, WaveformKind::kSine,
                 WaveformKind::kNoisyConstant}) {
    if (ToString(k) == text) return k;
  }
  return std::nullopt;
}

std::uint64_t SplitMix64(std::uint64_t x) {
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t SensorSeed(std::uint64_t master_seed, SensorId id, std::uint64_t waveform_seed) {
  return SplitMix64(master_seed + kGolden * (std::uint64_t{id.value} + 1)) ^ waveform_seed;
}

double UnitNoise(std::uint64_t sensor_seed, CycleIndex cycle) {
  const std::uint64_t bits = SplitMix64(sensor_seed + kGolden * (cycle + 1));
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

double WaveformValue(const WaveformSpec& spec, std::uint64_t sensor_seed, CycleIndex cycle) {
  const double c = static_cast<double>(cycle);
  switch (spec.kind) {
    case WaveformKind::kConstant:
      return spec.offset;
    case WaveformKind::kRamp:
      return spec.offset + spec.amplitude * c;
    case WaveformKind::kSine:
      return spec.offset + spec.amplitude * std::sin(2.0 * std::numbers::pi * c / spec.period);
    case WaveformKind::kNoisyConstant:
      return spec.offset + spec.noise_range * (2.0 * UnitNoise(sensor_seed, cycle) - 1.0);
  }
  return spec.offset;
}

}  // namespace votefw::sim
