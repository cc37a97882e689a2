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

// Shared-memory merge sort on a fixed-size worker pool: split the input into
// one chunk per worker, sort the chunks in parallel, close the pool, then
// merge the sorted chunks on the calling thread.

#ifndef SORTBENCH_SHARED_POOL_HPP
#define SORTBENCH_SHARED_POOL_HPP

#include <atomic>
#include <condition_variable>
#include <cstddef>
#include <deque>
#include <exception>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

#include "sortbench/types.hpp"

namespace sortbench {

class PoolClosedError : public Error {
 public:
  PoolClosedError() : Error("worker pool is closed") {}
};

/// A task in a map batch threw. Carries the index of the failing input.
class TaskError : public Error {
 public:
  TaskError(std::size_t index, const std::string& what)
      : Error("task " + std::to_string(index) + " failed: " + what), index_(index) {}

  [[nodiscard]] std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

namespace pool_detail {

// Completion state of one map batch. Shared between the pool's workers and
// the AsyncResult handle, so either side may go away first.
template <class R>
struct Batch {
  explicit Batch(std::size_t n) : results(n) {}

  std::mutex mu;
  std::condition_variable done_cv;
  std::vector<std::optional<R>> results;
  std::size_t remaining = 0;
  std::atomic<bool> aborted{false};
  std::optional<std::size_t> failed_index;
  std::string failure;
  std::exception_ptr rejected;
};

}  // namespace pool_detail

/// Handle to a batch submitted with WorkerPool::map_async.
template <class R>
class AsyncResult {
 public:
  AsyncResult() = default;

  [[nodiscard]] bool ready() const {
    std::lock_guard lock(batch_->mu);
    return batch_->remaining == 0;
  }

  /// Blocks until the batch is complete. Results are in submission order.
  /// May be called any number of times.
  std::vector<R> get() const {
    auto& b = *batch_;
    std::unique_lock lock(b.mu);
    b.done_cv.wait(lock, [&] { return b.remaining == 0; });
    if (b.rejected) std::rethrow_exception(b.rejected);
    if (b.failed_index) throw TaskError(*b.failed_index, b.failure);
    std::vector<R> out;
    out.reserve(b.results.size());
    for (const auto& r : b.results) out.push_back(*r);
    return out;
  }

 private:
  friend class WorkerPool;
  explicit AsyncResult(std::shared_ptr<pool_detail::Batch<R>> batch) : batch_(std::move(batch)) {}

  std::shared_ptr<pool_detail::Batch<R>> batch_;
};

/// Fixed set of worker threads fed from one FIFO queue.
///
/// Thread-safe for submission. close() drains queued and running tasks,
/// joins the workers, and may be called repeatedly or concurrently.
class WorkerPool {
 public:
  explicit WorkerPool(std::size_t workers);
  ~WorkerPool();

  WorkerPool(const WorkerPool&) = delete;
  WorkerPool& operator=(const WorkerPool&) = delete;

  [[nodiscard]] std::size_t worker_count() const noexcept { return workers_.size(); }
  [[nodiscard]] bool is_open() const;

  void close();

  /// Submits task(inputs[i]) for every i without waiting. Each task owns its
  /// input. The first failing task aborts the tasks of the batch that have
  /// not started yet. Failures, including submission to a closed pool, are
  /// reported by AsyncResult::get().
  template <class In, class F>
  auto map_async(F task, std::vector<In> inputs) -> AsyncResult<std::invoke_result_t<F&, In>> {
    using R = std::invoke_result_t<F&, In>;
    auto batch = std::make_shared<pool_detail::Batch<R>>(inputs.size());
    batch->remaining = inputs.size();
    auto shared_task = std::make_shared<F>(std::move(task));

    std::vector<std::function<void()>> jobs;
    jobs.reserve(inputs.size());
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      jobs.emplace_back([batch, shared_task, i, input = std::make_shared<In>(std::move(inputs[i]))] {
        std::optional<R> value;
        std::string error;
        bool failed = false;
        if (!batch->aborted.load(std::memory_order_acquire)) {
          try {
            value.emplace((*shared_task)(std::move(*input)));
          } catch (const std::exception& e) {
            failed = true;
            error = e.what();
          } catch (...) {
            failed = true;
            error = "unknown exception";
          }
        }
        std::lock_guard lock(batch->mu);
        if (failed) {
          batch->aborted.store(true, std::memory_order_release);
          if (!batch->failed_index || i < *batch->failed_index) {
            batch->failed_index = i;
            batch->failure = std::move(error);
          }
        } else if (value) {
          batch->results[i] = std::move(value);
        }
        if (--batch->remaining == 0) batch->done_cv.notify_all();
      });
    }
    if (!submit(std::move(jobs))) {
      std::lock_guard lock(batch->mu);
      batch->rejected = std::make_exception_ptr(PoolClosedError{});
      batch->remaining = 0;
    }
    return AsyncResult<R>(std::move(batch));
  }

  /// Blocking map: result i == task(inputs[i]).
  template <class In, class F>
  auto map(F task, std::vector<In> inputs) -> std::vector<std::invoke_result_t<F&, In>> {
    return map_async(std::move(task), std::move(inputs)).get();
  }

 private:
  // False when the pool is closed; nothing is queued in that case.
  bool submit(std::vector<std::function<void()>> jobs);
  void worker_loop();

  mutable std::mutex mu_;
  std::condition_variable work_cv_;
  std::deque<std::function<void()>> queue_;
  bool open_ = true;
  std::once_flag join_once_;
  std::vector<std::thread> workers_;
};

/// Input split into at most `workers` contiguous chunks of ceil(n / workers)
/// elements; only the last chunk may be shorter. Empty chunks are omitted.
struct ChunkPlan {
  std::size_t total_length = 0;
  std::size_t chunk_size = 0;
  std::vector<ElementArray> chunks;
};

ChunkPlan chunk_array(std::span<const Element> input, std::size_t workers);

/// Pairwise reduction: merges chunks (0,1), (2,3), ... and repeats until one
/// array is left.
ElementArray merge_chunks(std::vector<ElementArray> chunks);

/// chunk_array -> map(baseline_sort) on a fresh pool -> close -> merge_chunks.
ElementArray pool_mergesort(std::span<const Element> input, std::size_t workers);

}  // namespace sortbench

#endif  // SORTBENCH_SHARED_POOL_HPP
