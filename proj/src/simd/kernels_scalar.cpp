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

#include "sortbench/simd/kernels.hpp"

namespace sortbench::simd::scalar {

void merge(std::span<const std::int64_t> left, std::span<const std::int64_t> right,
           std::span<std::int64_t> out) {
  std::size_t i = 0, j = 0, k = 0;
  while (i < left.size() && j < right.size()) {
    // Take from the left on ties.
    if (right[j] < left[i]) {
      out[k++] = right[j++];
    } else {
      out[k++] = left[i++];
    }
  }
  while (i < left.size()) out[k++] = left[i++];
  while (j < right.size()) out[k++] = right[j++];
}

bool is_sorted(std::span<const std::int64_t> values) {
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] < values[i - 1]) return false;
  }
  return true;
}

}  // namespace sortbench::simd::scalar
