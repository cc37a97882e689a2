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

// Rank-addressed message passing.
//
// A world is `size` ranks running the same entry function concurrently, one
// thread per rank. Ranks talk only through their RankContext: blocking
// send/recv matched on (source, tag). Sends are eager: they return once the
// message is queued, without waiting for the receiver.
//
// Two backends share this interface. In-process delivers envelopes straight
// into the destination's mailbox. Socket connects every pair of ranks over
// loopback TCP and moves encoded frames (see envelope.hpp) between them.
//
// Every world has a deadline. A recv still waiting when it passes throws
// TimeoutError, and the world as a whole fails with WorldError.

#ifndef SORTBENCH_TRANSPORT_WORLD_HPP
#define SORTBENCH_TRANSPORT_WORLD_HPP

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "sortbench/transport/envelope.hpp"
#include "sortbench/types.hpp"

namespace sortbench::transport {

enum class Backend { kInProcess, kSocket };

std::string_view backend_name(Backend backend) noexcept;

/// Accepts "in-process" and "socket".
Backend parse_backend(std::string_view name);

class TransportError : public Error {
 public:
  using Error::Error;
};

/// A recv did not complete before the world deadline.
class TimeoutError : public TransportError {
 public:
  using TransportError::TransportError;
};

/// The world was torn down while this rank was blocked.
class ShutdownError : public TransportError {
 public:
  using TransportError::TransportError;
};

/// A rank failed; the whole world was aborted.
class WorldError : public Error {
 public:
  WorldError(int rank, bool timed_out, const std::string& what)
      : Error("rank " + std::to_string(rank) + (timed_out ? " timed out: " : " failed: ") + what),
        rank_(rank),
        timed_out_(timed_out) {}

  [[nodiscard]] int rank() const noexcept { return rank_; }
  [[nodiscard]] bool timed_out() const noexcept { return timed_out_; }

 private:
  int rank_;
  bool timed_out_;
};

/// Tags at or above this value are used by the collectives and the socket
/// bootstrap. Application messages should stay below it.
inline constexpr std::uint32_t kReservedTagBase = 0xFFFFFF00u;

inline constexpr std::chrono::milliseconds kDefaultTimeout{30'000};

struct WorldOptions {
  int size = 1;
  Backend backend = Backend::kInProcess;
  std::chrono::milliseconds timeout = kDefaultTimeout;
  /// Socket backend only: where rank 0 accepts the other ranks' hellos.
  /// 0 lets the OS pick a free port.
  std::uint16_t rendezvous_port = 0;
};

/// Per-rank transport counters, filled in when the world finishes.
struct WorldStats {
  std::vector<std::uint64_t> messages_sent;

  [[nodiscard]] std::uint64_t total_messages() const noexcept {
    std::uint64_t total = 0;
    for (auto n : messages_sent) total += n;
    return total;
  }
};

namespace detail {
class Endpoint;
}  // namespace detail

/// One rank's view of the world. Owned by that rank's thread only.
class RankContext {
 public:
  using Clock = std::chrono::steady_clock;

  RankContext(int rank, int size, detail::Endpoint& endpoint, Clock::time_point deadline);

  [[nodiscard]] int rank() const noexcept { return rank_; }
  [[nodiscard]] int size() const noexcept { return size_; }
  [[nodiscard]] bool is_root() const noexcept { return rank_ == 0; }
  [[nodiscard]] Clock::time_point deadline() const noexcept { return deadline_; }

  void send(std::span<const Element> payload, int dest, std::uint32_t tag);

  /// Blocks for the oldest message from `src` carrying `tag`.
  ElementArray recv(int src, std::uint32_t tag);

  [[nodiscard]] std::uint64_t messages_sent() const noexcept { return messages_sent_; }

 private:
  void check_peer(int peer, const char* op) const;

  int rank_;
  int size_;
  detail::Endpoint* endpoint_;
  Clock::time_point deadline_;
  std::uint64_t messages_sent_ = 0;
};

/// Runs `entry` once per rank and waits for all of them. Throws WorldError
/// naming the first rank that failed, or that timed out.
void run_world(const WorldOptions& options, const std::function<void(RankContext&)>& entry,
               WorldStats* stats = nullptr);

/// run_world that collects each rank's return value, indexed by rank.
template <class F>
auto world_spawn(const WorldOptions& options, F entry, WorldStats* stats = nullptr)
    -> std::vector<std::invoke_result_t<F&, RankContext&>> {
  using R = std::invoke_result_t<F&, RankContext&>;
  std::vector<std::optional<R>> slots(static_cast<std::size_t>(std::max(options.size, 0)));
  run_world(
      options,
      [&](RankContext& ctx) { slots[static_cast<std::size_t>(ctx.rank())].emplace(entry(ctx)); },
      stats);
  std::vector<R> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace sortbench::transport

#endif  // SORTBENCH_TRANSPORT_WORLD_HPP
