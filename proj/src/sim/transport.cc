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

#include "votefw/sim/transport.h"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

namespace votefw::sim {

namespace {

sockaddr_in Loopback(std::uint16_t port) {
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(port);
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  return addr;
}

std::string Errno(const char* what) { return std::string(what) + ": " + std::strerror(errno); }

}  // namespace

std::vector<ResponseFrame> LoopbackTransport::Exchange(SensorEndpoint& endpoint,
                                                       std::span<const std::uint8_t> poll,
                                                       CycleIndex cycle) {
  return endpoint.Step(poll, cycle);
}

UdpTransport::UdpTransport(const std::vector<SensorId>& sensors,
                           std::chrono::milliseconds receive_timeout)
    : receive_timeout_(receive_timeout) {
  try {
    controller_ = OpenBound();
    for (SensorId id : sensors) endpoints_[id] = OpenBound();
  } catch (...) {
    if (controller_.fd >= 0) ::close(controller_.fd);
    for (auto& [id, s] : endpoints_) ::close(s.fd);
    throw;
  }
}

UdpTransport::~UdpTransport() {
  ::close(controller_.fd);
  for (auto& [id, s] : endpoints_) ::close(s.fd);
}

UdpTransport::Socket UdpTransport::OpenBound() {
  Socket s;
  s.fd = ::socket(AF_INET, SOCK_DGRAM, 0);
  if (s.fd < 0) throw BindFailure(Errno("socket"));
  sockaddr_in addr = Loopback(0);
  if (::bind(s.fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) {
    std::string msg = Errno("bind");
    ::close(s.fd);
    throw BindFailure(msg);
  }
  socklen_t len = sizeof(addr);
  if (::getsockname(s.fd, reinterpret_cast<sockaddr*>(&addr), &len) != 0) {
    std::string msg = Errno("getsockname");
    ::close(s.fd);
    throw BindFailure(msg);
  }
  s.port = ntohs(addr.sin_port);
  return s;
}

void UdpTransport::SendTo(int fd, std::uint16_t port, std::span<const std::uint8_t> bytes) {
  sockaddr_in addr = Loopback(port);
  ssize_t n = ::sendto(fd, bytes.data(), bytes.size(), 0, reinterpret_cast<sockaddr*>(&addr),
                       sizeof(addr));
  if (n != static_cast<ssize_t>(bytes.size())) throw TransportError(Errno("sendto"));
}

std::vector<std::uint8_t> UdpTransport::Receive(int fd) {
  pollfd pfd{fd, POLLIN, 0};
  int ready = ::poll(&pfd, 1, static_cast<int>(receive_timeout_.count()));
  if (ready <= 0) throw TransportError(ready == 0 ? "receive timed out" : Errno("poll"));
  std::vector<std::uint8_t> buf(512);
  ssize_t n = ::recv(fd, buf.data(), buf.size(), 0);
  if (n < 0) throw TransportError(Errno("recv"));
  buf.resize(static_cast<std::size_t>(n));
  return buf;
}

std::vector<ResponseFrame> UdpTransport::Exchange(SensorEndpoint& endpoint,
                                                  std::span<const std::uint8_t> poll,
                                                  CycleIndex cycle) {
  auto it = endpoints_.find(endpoint.id());
  if (it == endpoints_.end()) throw TransportError("no socket for sensor");
  const Socket& ep = it->second;

  SendTo(controller_.fd, ep.port, poll);
  std::vector<std::uint8_t> request = Receive(ep.fd);
  std::vector<ResponseFrame> replies = endpoint.Step(request, cycle);
  for (const auto& r : replies) SendTo(ep.fd, controller_.port, r.bytes);

  std::vector<ResponseFrame> received;
  received.reserve(replies.size());
  for (std::size_t i = 0; i < replies.size(); ++i) {
    received.push_back({Receive(controller_.fd), Micros{0}});
  }
  return received;
}

std::unique_ptr<Transport> MakeTransport(std::string_view kind,
                                         const std::vector<SensorId>& sensors) {
  if (kind == "udp") return std::make_unique<UdpTransport>(sensors);
  if (kind == "loopback") return std::make_unique<LoopbackTransport>();
  throw TransportError("unknown transport '" + std::string(kind) + "'");
}

}  // namespace votefw::sim
