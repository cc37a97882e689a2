// Copyright 2026 The sortbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Backend plumbing shared by world.cpp and the two backends. Not installed.

#ifndef SORTBENCH_SRC_TRANSPORT_FABRIC_HPP
#define SORTBENCH_SRC_TRANSPORT_FABRIC_HPP

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <string>

#include "sortbench/transport/envelope.hpp"
#include "sortbench/transport/world.hpp"

namespace sortbench::transport::detail {

using Clock = std::chrono::steady_clock;

/// Inbound queue of one rank. recv takes the oldest envelope whose
/// (source, tag) matches, which keeps every (source, dest, tag) stream FIFO.
class Mailbox {
 public:
  void deliver(Envelope env);
  ElementArray take(std::uint32_t source, std::uint32_t tag, Clock::time_point deadline);
  /// Wakes all waiters with ShutdownError. The first reason sticks.
  void shutdown(const std::string& reason);

 private:
  std::mutex mu_;
  std::condition_variable cv_;
  std::deque<Envelope> queue_;
  bool closed_ = false;
  std::string reason_;
};

class Endpoint {
 public:
  virtual ~Endpoint() = default;
  /// Eager: returns once the envelope is queued for delivery.
  virtual void send(Envelope env) = 0;
  virtual ElementArray recv(std::uint32_t source, std::uint32_t tag,
                            Clock::time_point deadline) = 0;
};

/// The connections of one world.
class Fabric {
 public:
  virtual ~Fabric() = default;
  /// Called once per rank from that rank's thread. May block while the
  /// backend wires itself up.
  virtual Endpoint& attach(int rank, Clock::time_point deadline) = 0;
  /// Unblocks every pending and future recv. Any thread, any number of times.
  virtual void abort(const std::string& reason) = 0;
  /// Releases everything. Called after all rank threads have returned.
  virtual void close() = 0;
};

std::unique_ptr<Fabric> make_in_process_fabric(int size);
std::unique_ptr<Fabric> make_socket_fabric(int size, std::uint16_t rendezvous_port);

}  // namespace sortbench::transport::detail

#endif  // SORTBENCH_SRC_TRANSPORT_FABRIC_HPP
