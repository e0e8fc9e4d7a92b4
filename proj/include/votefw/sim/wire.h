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

// Poll/response datagrams exchanged between the controller and sensor
// endpoints. All multi-byte fields are big-endian.
//
//   POLL (12 bytes): 'V' 'F' | version | type=0 | profileId u16 | sensorId u16 | seq u32
//   DATA (18 bytes): 'V' 'F' | version | type=1 | profileId u16 | sensorId u16 | seq u32
//                    | status u8 | bitSize u8 | rawValue i32 (sign-extended)

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>

namespace votefw::sim {

inline constexpr std::uint8_t kMagic0 = 0x56;
inline constexpr std::uint8_t kMagic1 = 0x46;
inline constexpr std::uint8_t kWireVersion = 0x01;
inline constexpr std::size_t kPollSize = 12;
inline constexpr std::size_t kDataSize = 18;

enum class MsgType : std::uint8_t { kPoll = 0x00, kData = 0x01 };
enum class DataStatus : std::uint8_t { kOk = 0, kSensorFault = 1 };

struct PollFrame {
  std::uint16_t profile_id = 0;
  std::uint16_t sensor_id = 0;
  std::uint32_t seq = 0;

  friend bool operator==(const PollFrame&, const PollFrame&) = default;
};

struct DataFrame {
  std::uint16_t profile_id = 0;
  std::uint16_t sensor_id = 0;
  std::uint32_t seq = 0;
  DataStatus status = DataStatus::kOk;
  std::uint8_t bit_size = 16;
  std::int32_t raw_value = 0;

  friend bool operator==(const DataFrame&, const DataFrame&) = default;
};

std::array<std::uint8_t, kPollSize> EncodePoll(const PollFrame& poll);
std::array<std::uint8_t, kDataSize> EncodeData(const DataFrame& data);

// nullopt on a bad length, magic, version or message type.
std::optional<PollFrame> DecodePoll(std::span<const std::uint8_t> bytes);
std::optional<DataFrame> DecodeData(std::span<const std::uint8_t> bytes);

}  // namespace votefw::sim
