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

#include "votefw/sim/wire.h"

namespace votefw::sim {

namespace {

void Put16(std::uint8_t* p, std::uint16_t v) {
  p[0] = static_cast<std::uint8_t>(v >> 8);
  p[1] = static_cast<std::uint8_t>(v);
}

void Put32(std::uint8_t* p, std::uint32_t v) {
  p[0] = static_cast<std::uint8_t>(v >> 24);
  p[1] = static_cast<std::uint8_t>(v >> 16);
  p[2] = static_cast<std::uint8_t>(v >> 8);
  p[3] = static_cast<std::uint8_t>(v);
}

std::uint16_t Get16(const std::uint8_t* p) {
  return static_cast<std::uint16_t>((p[0] << 8) | p[1]);
}

std::uint32_t Get32(const std::uint8_t* p) {
  return (std::uint32_t{p[0]} << 24) | (std::uint32_t{p[1]} << 16) | (std::uint32_t{p[2]} << 8) |
         std::uint32_t{p[3]};
}

void PutHeader(std::uint8_t* p, MsgType type, std::uint16_t profile, std::uint16_t sensor,
               std::uint32_t seq) {
  p[0] = kMagic0;
  p[1] = kMagic1;
  p[2] = kWireVersion;
  p[3] = static_cast<std::uint8_t>(type);
  Put16(p + 4, profile);
  Put16(p + 6, sensor);
  Put32(p + 8, seq);
}

bool HeaderOk(std::span<const std::uint8_t> bytes, std::size_t size, MsgType type) {
  return bytes.size() == size && bytes[0] == kMagic0 && bytes[1] == kMagic1 &&
         bytes[2] == kWireVersion && bytes[3] == static_cast<std::uint8_t>(type);
}

}  // namespace

std::array<std::uint8_t, kPollSize> EncodePoll(const PollFrame& poll) {
  std::array<std::uint8_t, kPollSize> out{};
  PutHeader(out.data(), MsgType::kPoll, poll.profile_id, poll.sensor_id, poll.seq);
  return out;
}

std::array<std::uint8_t, kDataSize> EncodeData(const DataFrame& data) {
  std::array<std::uint8_t, kDataSize> out{};
  PutHeader(out.data(), MsgType::kData, data.profile_id, data.sensor_id, data.seq);
  out[12] = static_cast<std::uint8_t>(data.status);
  out[13] = data.bit_size;
  Put32(out.data() + 14, static_cast<std::uint32_t>(data.raw_value));
  return out;
}

std::optional<PollFrame> DecodePoll(std::span<const std::uint8_t> bytes) {
  if (!HeaderOk(bytes, kPollSize, MsgType::kPoll)) return std::nullopt;
  return PollFrame{Get16(&bytes[4]), Get16(&bytes[6]), Get32(&bytes[8])};
}

std::optional<DataFrame> DecodeData(std::span<const std::uint8_t> bytes) {
  if (!HeaderOk(bytes, kDataSize, MsgType::kData)) return std::nullopt;
  DataFrame d;
  d.profile_id = Get16(&bytes[4]);
  d.sensor_id = Get16(&bytes[6]);
  d.seq = Get32(&bytes[8]);
  if (bytes[12] > static_cast<std::uint8_t>(DataStatus::kSensorFault)) return std::nullopt;
  d.status = static_cast<DataStatus>(bytes[12]);
  d.bit_size = bytes[13];
  d.raw_value = static_cast<std::int32_t>(Get32(&bytes[14]));
  return d;
}

}  // namespace votefw::sim
