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

// Built with -mavx2. Nothing in here may run before the dispatcher has
// confirmed the CPU supports AVX2.

#include "sortbench/simd/kernels.hpp"

#if defined(__AVX2__)
#include <immintrin.h>
#endif

namespace sortbench::simd::avx2 {

#if defined(__AVX2__)

namespace {

inline __m256i load(const std::int64_t* p) {
  return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
}

inline void store(std::int64_t* p, __m256i v) {
  _mm256_storeu_si256(reinterpret_cast<__m256i*>(p), v);
}

// AVX2 has no 64-bit min/max; build them from the signed compare.
inline __m256i min64(__m256i a, __m256i b) {
  return _mm256_blendv_epi8(a, b, _mm256_cmpgt_epi64(a, b));
}

inline __m256i max64(__m256i a, __m256i b) {
  return _mm256_blendv_epi8(b, a, _mm256_cmpgt_epi64(a, b));
}

// Sorts a bitonic 4-lane vector ascending: compare-exchange at distance 2,
// then at distance 1.
inline __m256i bitonic_finish(__m256i v) {
  __m256i p = _mm256_permute4x64_epi64(v, _MM_SHUFFLE(1, 0, 3, 2));
  v = _mm256_blend_epi32(min64(v, p), max64(v, p), 0xF0);
  p = _mm256_permute4x64_epi64(v, _MM_SHUFFLE(2, 3, 0, 1));
  return _mm256_blend_epi32(min64(v, p), max64(v, p), 0xCC);
}

// a and b sorted ascending. lo receives the four smallest of the eight
// lanes, hi the four largest, both ascending.
inline void merge_4x4(__m256i a, __m256i b, __m256i& lo, __m256i& hi) {
  const __m256i rb = _mm256_permute4x64_epi64(b, _MM_SHUFFLE(0, 1, 2, 3));
  lo = bitonic_finish(min64(a, rb));
  hi = bitonic_finish(max64(a, rb));
}

}  // namespace

bool compiled() noexcept { return true; }

void merge(std::span<const std::int64_t> left, std::span<const std::int64_t> right,
           std::span<std::int64_t> out) {
  const std::size_t na = left.size();
  const std::size_t nb = right.size();
  if (na < 4 || nb < 4) {
    scalar::merge(left, right, out);
    return;
  }

  const std::int64_t* a = left.data();
  const std::int64_t* b = right.data();
  std::int64_t* o = out.data();

  __m256i lo;
  __m256i hi;
  merge_4x4(load(a), load(b), lo, hi);
  store(o, lo);
  std::size_t ia = 4, ib = 4, k = 4;

  // hi always holds the four largest elements consumed so far.
  while (ia + 4 <= na && ib + 4 <= nb) {
    __m256i next;
    if (b[ib] < a[ia]) {
      next = load(b + ib);
      ib += 4;
    } else {
      next = load(a + ia);
      ia += 4;
    }
    merge_4x4(next, hi, lo, hi);
    store(o + k, lo);
    k += 4;
  }

  // At least one side has fewer than four elements left. Fold the carried
  // lanes into that short tail, then finish against the long tail.
  std::int64_t carry[4];
  store(carry, hi);
  std::span<const std::int64_t> rest_a(a + ia, na - ia);
  std::span<const std::int64_t> rest_b(b + ib, nb - ib);
  const bool a_short = rest_a.size() < 4;
  std::span<const std::int64_t> short_tail = a_short ? rest_a : rest_b;
  std::span<const std::int64_t> long_tail = a_short ? rest_b : rest_a;

  std::int64_t buf[8];
  std::span<std::int64_t> folded(buf, 4 + short_tail.size());
  scalar::merge(carry, short_tail, folded);
  scalar::merge(folded, long_tail, out.subspan(k));
}

bool is_sorted(std::span<const std::int64_t> values) {
  const std::size_t n = values.size();
  const std::int64_t* v = values.data();
  std::size_t i = 0;
  for (; i + 5 <= n; i += 4) {
    const __m256i gt = _mm256_cmpgt_epi64(load(v + i), load(v + i + 1));
    if (!_mm256_testz_si256(gt, gt)) return false;
  }
  for (; i + 1 < n; ++i) {
    if (v[i + 1] < v[i]) return false;
  }
  return true;
}

#else

bool compiled() noexcept { return false; }

void merge(std::span<const std::int64_t> left, std::span<const std::int64_t> right,
           std::span<std::int64_t> out) {
  scalar::merge(left, right, out);
}

bool is_sorted(std::span<const std::int64_t> values) { return scalar::is_sorted(values); }

#endif

}  // namespace sortbench::simd::avx2
