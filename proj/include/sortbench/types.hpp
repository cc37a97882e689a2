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

#ifndef SORTBENCH_TYPES_HPP
#define SORTBENCH_TYPES_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sortbench {

/// Benchmark value domain. The sort kernels themselves are generic.
using Element = std::int64_t;
using ElementArray = std::vector<Element>;

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Subarray length below which recursive merge sort hands off to the
/// native sort. Always at least one.
class CutoffThreshold {
 public:
  static constexpr std::size_t kDefault = 32;

  constexpr CutoffThreshold() = default;
  explicit CutoffThreshold(std::size_t value) : value_(value) {
    if (value == 0) throw std::invalid_argument("cutoff threshold must be >= 1");
  }

  [[nodiscard]] constexpr std::size_t value() const noexcept { return value_; }

 private:
  std::size_t value_ = kDefault;
};

}  // namespace sortbench

#endif  // SORTBENCH_TYPES_HPP
