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

// Sequential sorting kernels: stable two-way merge, top-down merge sort,
// merge sort with a small-array cutoff, and the native-sort baseline.
//
// The templates in `generic` work on any totally ordered value type. The
// functions in `sortbench` fix the value type to Element and route the merge
// step through the runtime-selected SIMD kernel. All sorts are pure: they
// copy their input and return a new array.

#ifndef SORTBENCH_CORE_SORT_HPP
#define SORTBENCH_CORE_SORT_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "sortbench/types.hpp"

namespace sortbench {

namespace generic {

/// Stable merge of two sorted ranges into `out`
/// (size == left.size() + right.size()). On equal keys `left` goes first.
template <class T, class Compare = std::less<>>
void merge_into(std::span<const T> left, std::span<const T> right, std::span<T> out,
                Compare comp = {}) {
  std::size_t i = 0, j = 0, k = 0;
  while (i < left.size() && j < right.size()) {
    if (comp(right[j], left[i])) {
      out[k++] = right[j++];
    } else {
      out[k++] = left[i++];
    }
  }
  std::copy(left.begin() + static_cast<std::ptrdiff_t>(i), left.end(),
            out.begin() + static_cast<std::ptrdiff_t>(k));
  k += left.size() - i;
  std::copy(right.begin() + static_cast<std::ptrdiff_t>(j), right.end(),
            out.begin() + static_cast<std::ptrdiff_t>(k));
}

template <class T, class Compare = std::less<>>
std::vector<T> merge(std::span<const T> left, std::span<const T> right, Compare comp = {}) {
  std::vector<T> out(left.size() + right.size());
  merge_into<T>(left, right, out, comp);
  return out;
}

namespace detail {

// Top-down merge sort over two buffers that start with identical contents.
// Sorts dst[lo, hi) reading the children's results out of src. A range is
// touched only after its parent has recursed into it, so at a leaf both
// buffers still hold the original elements.
template <class T, class Compare, class Merge>
void split_merge(std::span<T> src, std::span<T> dst, std::size_t lo, std::size_t hi,
                 std::size_t leaf, Compare& comp, Merge& merge_step) {
  const std::size_t n = hi - lo;
  if (n < 2) return;
  if (n < leaf) {
    std::stable_sort(dst.begin() + static_cast<std::ptrdiff_t>(lo),
                     dst.begin() + static_cast<std::ptrdiff_t>(hi), comp);
    return;
  }
  const std::size_t mid = lo + n / 2;
  split_merge(dst, src, lo, mid, leaf, comp, merge_step);
  split_merge(dst, src, mid, hi, leaf, comp, merge_step);
  merge_step(std::span<const T>(src.subspan(lo, mid - lo)),
             std::span<const T>(src.subspan(mid, hi - mid)), dst.subspan(lo, n));
}

template <class T, class Compare, class Merge>
std::vector<T> mergesort_with(std::span<const T> input, std::size_t leaf, Compare comp,
                              Merge merge_step) {
  std::vector<T> result(input.begin(), input.end());
  if (result.size() < 2) return result;
  if (result.size() < leaf) {
    std::stable_sort(result.begin(), result.end(), comp);
    return result;
  }
  std::vector<T> scratch(result);
  split_merge<T>(std::span<T>(scratch), std::span<T>(result), 0, result.size(), leaf, comp,
                 merge_step);
  return result;
}

}  // namespace detail

/// Recursive merge sort down to single elements. Left half is [0, n/2).
template <class T, class Compare = std::less<>>
std::vector<T> mergesort_classic(std::span<const T> input, Compare comp = {}) {
  auto step = [&comp](std::span<const T> l, std::span<const T> r, std::span<T> out) {
    merge_into<T>(l, r, out, comp);
  };
  return detail::mergesort_with<T>(input, 2, comp, step);
}

/// Merge sort that stops recursing below `threshold` elements and finishes
/// those subarrays with the native (stable) sort.
template <class T, class Compare = std::less<>>
std::vector<T> mergesort_cutoff(std::span<const T> input, CutoffThreshold threshold,
                                Compare comp = {}) {
  auto step = [&comp](std::span<const T> l, std::span<const T> r, std::span<T> out) {
    merge_into<T>(l, r, out, comp);
  };
  return detail::mergesort_with<T>(input, std::max<std::size_t>(threshold.value(), 2), comp,
                                   step);
}

template <class T, class Compare = std::less<>>
std::vector<T> baseline_sort(std::span<const T> input, Compare comp = {}) {
  std::vector<T> out(input.begin(), input.end());
  std::stable_sort(out.begin(), out.end(), comp);
  return out;
}

}  // namespace generic

/// Stable merge of two non-decreasing arrays.
ElementArray merge(std::span<const Element> left, std::span<const Element> right);

ElementArray mergesort_classic(std::span<const Element> input);

ElementArray mergesort_cutoff(std::span<const Element> input,
                              CutoffThreshold threshold = CutoffThreshold{});

/// The host's native sort. Used as the correctness oracle throughout.
ElementArray baseline_sort(std::span<const Element> input);

bool is_sorted(std::span<const Element> values);

/// True iff `candidate` is a non-decreasing permutation of `original`.
bool is_sorted_permutation(std::span<const Element> original, std::span<const Element> candidate);

/// `n` values uniform on [0, n), reproducible from (n, seed).
///
/// Generator: SplitMix64 seeded with `seed`; each draw is mapped to [0, n)
/// by rejection sampling (draws below 2^64 mod n are discarded, the rest
/// reduced modulo n), so the result is unbiased and identical on every
/// platform.
ElementArray generate_array(std::size_t n, std::uint64_t seed);

/// SplitMix64. Exposed so tests can check generate_array independently.
class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Unbiased draw from [0, bound). bound must be nonzero.
  constexpr std::uint64_t below(std::uint64_t bound) noexcept {
    const std::uint64_t reject_under = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t x = next();
      if (x >= reject_under) return x % bound;
    }
  }

 private:
  std::uint64_t state_;
};

}  // namespace sortbench

#endif  // SORTBENCH_CORE_SORT_HPP
