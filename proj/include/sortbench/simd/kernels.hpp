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

// Data-parallel inner loops over int64 arrays. Every kernel has a scalar
// reference implementation; wider variants are compiled in separate
// translation units and picked once at startup from the CPU's feature bits.
//
// The scalar variants define the results. Any other variant must produce
// byte-identical output for every input (see tests/simd_kernels_test.cpp).

#ifndef SORTBENCH_SIMD_KERNELS_HPP
#define SORTBENCH_SIMD_KERNELS_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace sortbench::simd {

enum class Isa { kScalar, kAvx2 };

std::string_view isa_name(Isa isa) noexcept;

/// Merges two non-decreasing ranges into `out`, which must hold exactly
/// left.size() + right.size() elements and must not alias either input.
using MergeFn = void (*)(std::span<const std::int64_t> left, std::span<const std::int64_t> right,
                         std::span<std::int64_t> out);

/// True iff the range is non-decreasing.
using IsSortedFn = bool (*)(std::span<const std::int64_t> values);

struct KernelTable {
  Isa isa;
  MergeFn merge;
  IsSortedFn is_sorted;
};

namespace scalar {
void merge(std::span<const std::int64_t> left, std::span<const std::int64_t> right,
           std::span<std::int64_t> out);
bool is_sorted(std::span<const std::int64_t> values);
}  // namespace scalar

namespace avx2 {
/// False when the AVX2 translation unit was not compiled in.
bool compiled() noexcept;
void merge(std::span<const std::int64_t> left, std::span<const std::int64_t> right,
           std::span<std::int64_t> out);
bool is_sorted(std::span<const std::int64_t> values);
}  // namespace avx2

/// ISAs that are both compiled in and supported by the running CPU.
std::vector<Isa> available_isas();

/// The table for one ISA. Throws std::invalid_argument when unavailable.
const KernelTable& kernels_for(Isa isa);

/// The active table: the widest available ISA, unless SORTBENCH_ISA=scalar
/// is set in the environment at first use.
const KernelTable& kernels();

}  // namespace sortbench::simd

#endif  // SORTBENCH_SIMD_KERNELS_HPP
