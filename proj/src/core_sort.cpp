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

#include "sortbench/core_sort.hpp"

#include "sortbench/simd/kernels.hpp"

namespace sortbench {

namespace {

// Equal int64 values are indistinguishable, so the vector merge kernels can
// stand in for the stable scalar merge here.
void kernel_merge(std::span<const Element> left, std::span<const Element> right,
                  std::span<Element> out) {
  simd::kernels().merge(left, right, out);
}

}  // namespace

ElementArray merge(std::span<const Element> left, std::span<const Element> right) {
  ElementArray out(left.size() + right.size());
  kernel_merge(left, right, out);
  return out;
}

ElementArray mergesort_classic(std::span<const Element> input) {
  return generic::detail::mergesort_with<Element>(input, 2, std::less<>{}, &kernel_merge);
}

ElementArray mergesort_cutoff(std::span<const Element> input, CutoffThreshold threshold) {
  return generic::detail::mergesort_with<Element>(
      input, std::max<std::size_t>(threshold.value(), 2), std::less<>{}, &kernel_merge);
}

ElementArray baseline_sort(std::span<const Element> input) {
  ElementArray out(input.begin(), input.end());
  std::sort(out.begin(), out.end());
  return out;
}

bool is_sorted(std::span<const Element> values) { return simd::kernels().is_sorted(values); }

bool is_sorted_permutation(std::span<const Element> original, std::span<const Element> candidate) {
  if (original.size() != candidate.size()) return false;
  if (!is_sorted(candidate)) return false;
  const ElementArray expected = baseline_sort(original);
  return std::equal(expected.begin(), expected.end(), candidate.begin());
}

ElementArray generate_array(std::size_t n, std::uint64_t seed) {
  ElementArray out(n);
  SplitMix64 rng(seed);
  for (auto& v : out) v = static_cast<Element>(rng.below(n));
  return out;
}

}  // namespace sortbench
