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

#ifndef SORTBENCH_TESTS_TEST_UTIL_HPP
#define SORTBENCH_TESTS_TEST_UTIL_HPP

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "sortbench/types.hpp"

namespace sortbench::testing {

// Test-side generator, independent of the library's generate_array.
inline ElementArray random_array(std::mt19937_64& rng, std::size_t n, Element lo, Element hi) {
  std::uniform_int_distribution<Element> dist(lo, hi);
  ElementArray out(n);
  for (auto& v : out) v = dist(rng);
  return out;
}

inline ElementArray oracle_sort(ElementArray v) {
  std::sort(v.begin(), v.end());
  return v;
}

inline ElementArray iota_array(std::size_t n, Element first = 0) {
  ElementArray out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = first + static_cast<Element>(i);
  return out;
}

}  // namespace sortbench::testing

#endif  // SORTBENCH_TESTS_TEST_UTIL_HPP
