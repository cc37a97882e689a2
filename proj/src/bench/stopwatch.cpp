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

#include "sortbench/bench/stopwatch.hpp"

namespace sortbench::bench {

namespace {

double seconds(StopWatch::Clock::duration d) {
  return std::chrono::duration<double>(d).count();
}

}  // namespace

void StopWatch::start(const std::string& label) {
  Timer& t = timers_[label];
  if (t.started) throw StopWatchError("timer '" + label + "' is already running");
  t.started = Clock::now();
}

double StopWatch::stop(const std::string& label) {
  const auto now = Clock::now();
  auto it = timers_.find(label);
  if (it == timers_.end() || !it->second.started) {
    throw StopWatchError("timer '" + label + "' was stopped without being started");
  }
  it->second.accumulated += now - *it->second.started;
  it->second.started.reset();
  return seconds(it->second.accumulated);
}

double StopWatch::elapsed(const std::string& label) const {
  auto it = timers_.find(label);
  if (it == timers_.end()) throw StopWatchError("no timer named '" + label + "'");
  auto total = it->second.accumulated;
  if (it->second.started) total += Clock::now() - *it->second.started;
  return seconds(total);
}

bool StopWatch::running(const std::string& label) const {
  auto it = timers_.find(label);
  return it != timers_.end() && it->second.started.has_value();
}

}  // namespace sortbench::bench
