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

#include "votefw/sim/endpoint.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

#include "votefw/sim/wire.h"

namespace votefw::sim {

namespace {

constexpr std::array<std::pair<FaultKind, std::string_view>, 8> kFaultNames{{
    {FaultKind::kNone, "NONE"},
    {FaultKind::kSilent, "SILENT"},
    {FaultKind::kStuck, "STUCK"},
    {FaultKind::kOffset, "OFFSET"},
    {FaultKind::kSpike, "SPIKE"},
    {FaultKind::kDelay, "DELAY"},
    {FaultKind::kBabble, "BABBLE"},
    {FaultKind::kDuplicateSeq, "DUPLICATE_SEQ"},
}};

}  // namespace

std::string_view ToString(FaultKind kind) {
  for (const auto& [k, name] : kFaultNames) {
    if (k == kind) return name;
  }
  return "UNKNOWN";
}

std::optional<FaultKind> ParseFaultKind(std::string_view text) {
  for (const auto& [k, name] : kFaultNames) {
    if (name == text) return k;
  }
  return std::nullopt;
}

SensorEndpoint::SensorEndpoint(std::uint16_t profile_id, SensorDescriptor descriptor,
                               WaveformSpec waveform, std::vector<FaultSpec> faults,
                               CycleIndex start_cycle, std::uint64_t seed)
    : profile_id_(profile_id),
      descriptor_(std::move(descriptor)),
      waveform_(waveform),
      faults_(std::move(faults)),
      start_cycle_(start_cycle),
      seed_(seed) {}

double SensorEndpoint::NominalValue(CycleIndex cycle) const {
  return WaveformValue(waveform_, seed_, cycle);
}

const FaultSpec* SensorEndpoint::ActiveFault(CycleIndex cycle) const {
  for (const auto& f : faults_) {
    if (f.kind != FaultKind::kNone && f.ActiveAt(cycle)) return &f;
  }
  return nullptr;
}

std::int32_t SensorEndpoint::ToRaw(double eng_value) const {
  const BitSize bits = descriptor_.characteristics.bit_size;
  const double counts = std::round(eng_value / descriptor_.characteristics.scale);
  const double clamped = std::clamp(counts, static_cast<double>(RawMin(bits)),
                                    static_cast<double>(RawMax(bits)));
  return static_cast<std::int32_t>(clamped);
}

std::vector<ResponseFrame> SensorEndpoint::Step(std::span<const std::uint8_t> poll,
                                                CycleIndex cycle) {
  auto decoded = DecodePoll(poll);
  if (!decoded || decoded->profile_id != profile_id_ ||
      decoded->sensor_id != descriptor_.id.value) {
    ++malformed_polls_;
    return {};
  }
  if (cycle < start_cycle_) return {};

  const FaultSpec* fault = ActiveFault(cycle);
  const FaultKind kind = fault ? fault->kind : FaultKind::kNone;
  if (kind == FaultKind::kSilent) return {};

  double value = NominalValue(cycle);
  switch (kind) {
    case FaultKind::kStuck:
      value = NominalValue(fault->start_cycle);
      break;
    case FaultKind::kOffset:
      value += fault->magnitude;
      break;
    case FaultKind::kSpike:
      if (cycle == fault->start_cycle) value += fault->magnitude;
      break;
    default:
      break;
  }

  std::uint32_t seq = decoded->seq;
  if (kind == FaultKind::kDuplicateSeq && last_sent_seq_) seq = *last_sent_seq_;
  last_sent_seq_ = seq;

  DataFrame data;
  data.profile_id = profile_id_;
  data.sensor_id = descriptor_.id.value;
  data.seq = seq;
  data.status = DataStatus::kOk;
  data.bit_size = static_cast<std::uint8_t>(descriptor_.characteristics.bit_size);
  data.raw_value = ToRaw(value);
  const auto encoded = EncodeData(data);

  ResponseFrame frame{std::vector<std::uint8_t>(encoded.begin(), encoded.end()), Micros{0}};
  if (kind == FaultKind::kDelay) {
    frame.delay = Micros{static_cast<std::int64_t>(std::llround(fault->magnitude))};
  }
  std::size_t copies = 1;
  if (kind == FaultKind::kBabble) {
    copies = static_cast<std::size_t>(std::max(1.0, std::floor(fault->magnitude)));
  }
  return std::vector<ResponseFrame>(copies, frame);
}

std::vector<ResponseFrame> sensor_endpoint_step(SensorEndpoint& endpoint,
                                                std::span<const std::uint8_t> poll,
                                                CycleIndex cycle) {
  return endpoint.Step(poll, cycle);
}

}  // namespace votefw::sim
