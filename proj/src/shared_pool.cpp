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

#include "sortbench/shared_pool.hpp"

#include <stdexcept>

#include "sortbench/core_sort.hpp"

namespace sortbench {

WorkerPool::WorkerPool(std::size_t workers) {
  if (workers == 0) throw std::invalid_argument("worker pool needs at least one worker");
  workers_.reserve(workers);
  for (std::size_t i = 0; i < workers; ++i) {
    workers_.emplace_back([this] { worker_loop(); });
  }
}

WorkerPool::~WorkerPool() { close(); }

bool WorkerPool::is_open() const {
  std::lock_guard lock(mu_);
  return open_;
}

void WorkerPool::close() {
  {
    std::lock_guard lock(mu_);
    open_ = false;
  }
  work_cv_.notify_all();
  std::call_once(join_once_, [this] {
    for (auto& t : workers_) t.join();
  });
}

bool WorkerPool::submit(std::vector<std::function<void()>> jobs) {
  {
    std::lock_guard lock(mu_);
    if (!open_) return false;
    for (auto& job : jobs) queue_.push_back(std::move(job));
  }
  work_cv_.notify_all();
  return true;
}

void WorkerPool::worker_loop() {
  for (;;) {
    std::function<void()> job;
    {
      std::unique_lock lock(mu_);
      work_cv_.wait(lock, [this] { return !queue_.empty() || !open_; });
      // Closed pools still drain what was queued before close().
      if (queue_.empty()) return;
      job = std::move(queue_.front());
      queue_.pop_front();
    }
    job();
  }
}

ChunkPlan chunk_array(std::span<const Element> input, std::size_t workers) {
  if (workers == 0) throw std::invalid_argument("chunk_array needs at least one worker");
  ChunkPlan plan;
  plan.total_length = input.size();
  plan.chunk_size = (input.size() + workers - 1) / workers;
  for (std::size_t i = 0; i < workers; ++i) {
    const std::size_t begin = plan.chunk_size * i;
    if (begin >= input.size()) break;
    const std::size_t len = std::min(plan.chunk_size, input.size() - begin);
    auto part = input.subspan(begin, len);
    plan.chunks.emplace_back(part.begin(), part.end());
  }
  return plan;
}

ElementArray merge_chunks(std::vector<ElementArray> chunks) {
  if (chunks.empty()) return {};
  while (chunks.size() > 1) {
    std::vector<ElementArray> next;
    next.reserve((chunks.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < chunks.size(); i += 2) {
      next.push_back(merge(chunks[i], chunks[i + 1]));
    }
    if (chunks.size() % 2 == 1) next.push_back(std::move(chunks.back()));
    chunks = std::move(next);
  }
  return std::move(chunks.front());
}

ElementArray pool_mergesort(std::span<const Element> input, std::size_t workers) {
  ChunkPlan plan = chunk_array(input, workers);
  WorkerPool pool(workers);
  auto sorted = pool.map([](ElementArray chunk) { return baseline_sort(chunk); },
                         std::move(plan.chunks));
  pool.close();
  return merge_chunks(std::move(sorted));
}

}  // namespace sortbench
