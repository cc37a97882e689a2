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

#include <cstdlib>
#include <stdexcept>
#include <string>

#include "sortbench/simd/kernels.hpp"

namespace sortbench::simd {

namespace {

constexpr KernelTable kScalarTable{Isa::kScalar, &scalar::merge, &scalar::is_sorted};
constexpr KernelTable kAvx2Table{Isa::kAvx2, &avx2::merge, &avx2::is_sorted};

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

bool usable(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return true;
    case Isa::kAvx2:
      return avx2::compiled() && cpu_has_avx2();
  }
  return false;
}

const KernelTable& select_default() {
  if (const char* forced = std::getenv("SORTBENCH_ISA"); forced && std::string(forced) == "scalar") {
    return kScalarTable;
  }
  return usable(Isa::kAvx2) ? kAvx2Table : kScalarTable;
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
  }
  return "unknown";
}

std::vector<Isa> available_isas() {
  std::vector<Isa> out{Isa::kScalar};
  if (usable(Isa::kAvx2)) out.push_back(Isa::kAvx2);
  return out;
}

const KernelTable& kernels_for(Isa isa) {
  if (!usable(isa)) {
    throw std::invalid_argument("kernel ISA not available: " + std::string(isa_name(isa)));
  }
  return isa == Isa::kAvx2 ? kAvx2Table : kScalarTable;
}

const KernelTable& kernels() {
  static const KernelTable& active = select_default();
  return active;
}

}  // namespace sortbench::simd
