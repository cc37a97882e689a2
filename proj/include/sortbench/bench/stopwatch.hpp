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

#ifndef SORTBENCH_BENCH_STOPWATCH_HPP
#define SORTBENCH_BENCH_STOPWATCH_HPP

#include <chrono>
#include <cstddef>
#include <map>
#include <optional>
#include <string>

#include "sortbench/types.hpp"

namespace sortbench::bench {

class StopWatchError : public Error {
 public:
  using Error::Error;
};

/// Named timers on the monotonic clock. Starting and stopping one label
/// repeatedly accumulates. Not thread-safe; use one per thread.
class StopWatch {
 public:
  using Clock = std::chrono::steady_clock;

  /// Throws if `label` is already running.
  void start(const std::string& label);

  /// Returns the label's accumulated seconds. Throws unless running.
  double stop(const std::string& label);

  /// Accumulated seconds, including the current run if one is in progress.
  /// Throws for labels never started.
  [[nodiscard]] double elapsed(const std::string& label) const;

  [[nodiscard]] bool running(const std::string& label) const;

  void clear() { timers_.clear(); }

 private:
  struct Timer {
    Clock::duration accumulated{};
    std::optional<Clock::time_point> started;
  };

  std::map<std::string, Timer, std::less<>> timers_;
};

}  // namespace sortbench::bench

#endif  // SORTBENCH_BENCH_STOPWATCH_HPP
