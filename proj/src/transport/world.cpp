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

#include "sortbench/transport/world.hpp"

#include <condition_variable>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "fabric.hpp"

namespace sortbench::transport {

namespace {

// How long the watchdog waits past the deadline before it aborts the world
// itself. A blocked recv normally times out on its own first.
constexpr std::chrono::milliseconds kWatchdogGrace{250};

struct Failure {
  int rank = -1;
  bool timed_out = false;
  std::string what;
};

}  // namespace

std::string_view backend_name(Backend backend) noexcept {
  switch (backend) {
    case Backend::kInProcess:
      return "in-process";
    case Backend::kSocket:
      return "socket";
  }
  return "unknown";
}

Backend parse_backend(std::string_view name) {
  if (name == "in-process") return Backend::kInProcess;
  if (name == "socket") return Backend::kSocket;
  throw std::invalid_argument("unknown backend '" + std::string(name) +
                              "' (expected in-process or socket)");
}

RankContext::RankContext(int rank, int size, detail::Endpoint& endpoint,
                         Clock::time_point deadline)
    : rank_(rank), size_(size), endpoint_(&endpoint), deadline_(deadline) {}

void RankContext::check_peer(int peer, const char* op) const {
  if (peer < 0 || peer >= size_) {
    throw TransportError(std::string(op) + ": rank " + std::to_string(peer) +
                         " is outside a world of size " + std::to_string(size_));
  }
  if (peer == rank_) {
    throw TransportError(std::string(op) + ": rank " + std::to_string(rank_) +
                         " cannot address itself");
  }
}

void RankContext::send(std::span<const Element> payload, int dest, std::uint32_t tag) {
  check_peer(dest, "send");
  Envelope env;
  env.payload.assign(payload.begin(), payload.end());
  env.tag = tag;
  env.source = static_cast<std::uint32_t>(rank_);
  env.dest = static_cast<std::uint32_t>(dest);
  endpoint_->send(std::move(env));
  ++messages_sent_;
}

ElementArray RankContext::recv(int src, std::uint32_t tag) {
  check_peer(src, "recv");
  return endpoint_->recv(static_cast<std::uint32_t>(src), tag, deadline_);
}

void run_world(const WorldOptions& options, const std::function<void(RankContext&)>& entry,
               WorldStats* stats) {
  if (options.size < 1) throw std::invalid_argument("world size must be at least 1");
  const auto size = static_cast<std::size_t>(options.size);
  const auto deadline = RankContext::Clock::now() + options.timeout;

  std::unique_ptr<detail::Fabric> fabric =
      options.backend == Backend::kSocket
          ? detail::make_socket_fabric(options.size, options.rendezvous_port)
          : detail::make_in_process_fabric(options.size);

  std::mutex mu;
  std::condition_variable done_cv;
  std::vector<bool> finished(size, false);
  std::size_t finished_count = 0;
  std::optional<Failure> primary;    // the rank that actually went wrong
  std::optional<Failure> secondary;  // ranks knocked over by the abort
  std::vector<std::uint64_t> sent(size, 0);

  auto fail = [&](int rank, bool timed_out, std::string what, bool knock_on) {
    {
      std::lock_guard lock(mu);
      auto& slot = knock_on ? secondary : primary;
      if (!slot) slot = Failure{rank, timed_out, std::move(what)};
    }
    if (!knock_on) fabric->abort("rank " + std::to_string(rank) + " failed");
  };

  std::vector<std::thread> threads;
  threads.reserve(size);
  for (int r = 0; r < options.size; ++r) {
    threads.emplace_back([&, r] {
      try {
        detail::Endpoint& ep = fabric->attach(r, deadline);
        RankContext ctx(r, options.size, ep, deadline);
        try {
          entry(ctx);
        } catch (...) {
          sent[static_cast<std::size_t>(r)] = ctx.messages_sent();
          throw;
        }
        sent[static_cast<std::size_t>(r)] = ctx.messages_sent();
      } catch (const ShutdownError& e) {
        fail(r, false, e.what(), true);
      } catch (const TimeoutError& e) {
        fail(r, true, e.what(), false);
      } catch (const std::exception& e) {
        fail(r, false, e.what(), false);
      } catch (...) {
        fail(r, false, "unknown exception", false);
      }
      {
        std::lock_guard lock(mu);
        finished[static_cast<std::size_t>(r)] = true;
        ++finished_count;
      }
      done_cv.notify_all();
    });
  }

  {
    std::unique_lock lock(mu);
    const bool all_done = done_cv.wait_until(lock, deadline + kWatchdogGrace,
                                             [&] { return finished_count == size; });
    if (!all_done) {
      int stuck = 0;
      while (finished[static_cast<std::size_t>(stuck)]) ++stuck;
      if (!primary) primary = Failure{stuck, true, "world deadline exceeded"};
      lock.unlock();
      fabric->abort("world deadline exceeded");
    }
  }

  for (auto& t : threads) t.join();
  fabric->close();

  if (stats) stats->messages_sent = sent;
  if (primary) throw WorldError(primary->rank, primary->timed_out, primary->what);
  if (secondary) throw WorldError(secondary->rank, secondary->timed_out, secondary->what);
}

}  // namespace sortbench::transport
