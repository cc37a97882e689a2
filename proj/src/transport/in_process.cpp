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

#include <vector>

#include "fabric.hpp"

namespace sortbench::transport::detail {

void Mailbox::deliver(Envelope env) {
  {
    std::lock_guard lock(mu_);
    if (closed_) return;
    queue_.push_back(std::move(env));
  }
  cv_.notify_all();
}

ElementArray Mailbox::take(std::uint32_t source, std::uint32_t tag, Clock::time_point deadline) {
  std::unique_lock lock(mu_);
  for (;;) {
    if (closed_) throw ShutdownError(reason_);
    for (auto it = queue_.begin(); it != queue_.end(); ++it) {
      if (it->source == source && it->tag == tag) {
        ElementArray payload = std::move(it->payload);
        queue_.erase(it);
        return payload;
      }
    }
    if (cv_.wait_until(lock, deadline) == std::cv_status::timeout && Clock::now() >= deadline) {
      throw TimeoutError("recv from rank " + std::to_string(source) + " tag " +
                         std::to_string(tag) + " passed the world deadline");
    }
  }
}

void Mailbox::shutdown(const std::string& reason) {
  {
    std::lock_guard lock(mu_);
    if (closed_) return;
    closed_ = true;
    reason_ = reason;
    queue_.clear();
  }
  cv_.notify_all();
}

namespace {

class InProcessFabric;

class InProcessEndpoint final : public Endpoint {
 public:
  explicit InProcessEndpoint(InProcessFabric& fabric, int rank) : fabric_(fabric), rank_(rank) {}

  void send(Envelope env) override;

  ElementArray recv(std::uint32_t source, std::uint32_t tag, Clock::time_point deadline) override;

 private:
  InProcessFabric& fabric_;
  int rank_;
};

class InProcessFabric final : public Fabric {
 public:
  explicit InProcessFabric(int size) : mailboxes_(static_cast<std::size_t>(size)) {
    endpoints_.reserve(static_cast<std::size_t>(size));
    for (int r = 0; r < size; ++r) endpoints_.emplace_back(*this, r);
  }

  Endpoint& attach(int rank, Clock::time_point) override {
    return endpoints_[static_cast<std::size_t>(rank)];
  }

  void abort(const std::string& reason) override {
    for (auto& m : mailboxes_) m.shutdown(reason);
  }

  void close() override { abort("world closed"); }

  Mailbox& mailbox(std::uint32_t rank) { return mailboxes_[rank]; }

 private:
  std::vector<Mailbox> mailboxes_;
  std::vector<InProcessEndpoint> endpoints_;
};

void InProcessEndpoint::send(Envelope env) { fabric_.mailbox(env.dest).deliver(std::move(env)); }

ElementArray InProcessEndpoint::recv(std::uint32_t source, std::uint32_t tag,
                                     Clock::time_point deadline) {
  return fabric_.mailbox(static_cast<std::uint32_t>(rank_)).take(source, tag, deadline);
}

}  // namespace

std::unique_ptr<Fabric> make_in_process_fabric(int size) {
  return std::make_unique<InProcessFabric>(size);
}

}  // namespace sortbench::transport::detail
