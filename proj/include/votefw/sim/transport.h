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

// Carries polls to sensor endpoints and their answers back.

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "votefw/sim/endpoint.h"

namespace votefw::sim {

class TransportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when sockets cannot be created or bound.
class BindFailure : public TransportError {
 public:
  using TransportError::TransportError;
};

class Transport {
 public:
  virtual ~Transport() = default;
  // Delivers one poll to `endpoint` and returns every frame it answered
  // with, in send order.
  virtual std::vector<ResponseFrame> Exchange(SensorEndpoint& endpoint,
                                              std::span<const std::uint8_t> poll,
                                              CycleIndex cycle) = 0;
  virtual std::string_view name() const = 0;
};

// In-process delivery; keeps each frame's logical delay.
class LoopbackTransport : public Transport {
 public:
  std::vector<ResponseFrame> Exchange(SensorEndpoint& endpoint, std::span<const std::uint8_t> poll,
                                      CycleIndex cycle) override;
  std::string_view name() const override { return "loopback"; }
};

// Real UDP datagrams over 127.0.0.1: one socket for the controller and one
// per endpoint. Datagrams carry no timestamp, so DELAY faults are not
// represented on this transport.
class UdpTransport : public Transport {
 public:
  explicit UdpTransport(const std::vector<SensorId>& sensors,
                        std::chrono::milliseconds receive_timeout = std::chrono::milliseconds(1000));
  ~UdpTransport() override;
  UdpTransport(const UdpTransport&) = delete;
  UdpTransport& operator=(const UdpTransport&) = delete;

  std::vector<ResponseFrame> Exchange(SensorEndpoint& endpoint, std::span<const std::uint8_t> poll,
                                      CycleIndex cycle) override;
  std::string_view name() const override { return "udp"; }

 private:
  struct Socket {
    int fd = -1;
    std::uint16_t port = 0;
  };
  static Socket OpenBound();
  std::vector<std::uint8_t> Receive(int fd);
  void SendTo(int fd, std::uint16_t port, std::span<const std::uint8_t> bytes);

  Socket controller_;
  std::map<SensorId, Socket> endpoints_;
  std::chrono::milliseconds receive_timeout_;
};

std::unique_ptr<Transport> MakeTransport(std::string_view kind, const std::vector<SensorId>& sensors);

}  // namespace votefw::sim
