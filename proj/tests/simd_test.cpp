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

#include <gtest/gtest.h>

#include <algorithm>
#include <limits>
#include <random>

#include "test_util.hpp"

namespace sortbench::simd {
namespace {

using testing::oracle_sort;
using testing::random_array;

class KernelEquivalence : public ::testing::TestWithParam<Isa> {
 protected:
  const KernelTable& table() const { return kernels_for(GetParam()); }

  void check_merge(const ElementArray& l, const ElementArray& r) const {
    ElementArray want(l.size() + r.size()), got(l.size() + r.size());
    scalar::merge(l, r, want);
    table().merge(l, r, got);
    ASSERT_EQ(got, want) << "left " << l.size() << " right " << r.size();
  }
};

TEST_P(KernelEquivalence, MergeAllSmallShapes) {
  std::mt19937_64 rng(11);
  for (std::size_t nl = 0; nl <= 41; ++nl) {
    for (std::size_t nr = 0; nr <= 41; ++nr) {
      check_merge(oracle_sort(random_array(rng, nl, -50, 50)),
                  oracle_sort(random_array(rng, nr, -50, 50)));
    }
  }
}

TEST_P(KernelEquivalence, MergeHeavyDuplicates) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 500; ++trial) {
    check_merge(oracle_sort(random_array(rng, rng() % 200, 0, 2)),
                oracle_sort(random_array(rng, rng() % 200, 0, 2)));
  }
}

TEST_P(KernelEquivalence, MergeExtremes) {
  const Element lo = std::numeric_limits<Element>::min();
  const Element hi = std::numeric_limits<Element>::max();
  check_merge({lo, lo, -1, 0, hi}, {lo, 0, 1, hi, hi});
  check_merge({lo, lo, lo, lo, lo, lo, lo, lo, lo}, {hi, hi, hi, hi, hi, hi, hi, hi});
  check_merge({hi, hi, hi, hi, hi, hi, hi, hi}, {lo, lo, lo, lo, lo, lo, lo, lo, lo});
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    check_merge(oracle_sort(random_array(rng, rng() % 100, lo, hi)),
                oracle_sort(random_array(rng, rng() % 100, lo, hi)));
  }
}

TEST_P(KernelEquivalence, MergeDisjointRuns) {
  check_merge(testing::iota_array(37), testing::iota_array(53, 37));
  check_merge(testing::iota_array(53, 37), testing::iota_array(37));
}

TEST_P(KernelEquivalence, MergeLargeRandom) {
  std::mt19937_64 rng(14);
  for (std::size_t n : {1000, 4096, 100'001}) {
    check_merge(oracle_sort(random_array(rng, n, -1'000'000, 1'000'000)),
                oracle_sort(random_array(rng, n / 3, -1'000'000, 1'000'000)));
  }
}

TEST_P(KernelEquivalence, IsSortedAgrees) {
  std::mt19937_64 rng(15);
  for (std::size_t n = 0; n <= 70; ++n) {
    auto sorted = oracle_sort(random_array(rng, n, -20, 20));
    ASSERT_EQ(table().is_sorted(sorted), scalar::is_sorted(sorted));
    ASSERT_TRUE(table().is_sorted(sorted));
    // One inversion at every position.
    for (std::size_t i = 0; i + 1 < n; ++i) {
      auto broken = sorted;
      if (broken[i] == broken[i + 1]) broken[i + 1] = broken[i] - 1;
      else std::swap(broken[i], broken[i + 1]);
      ASSERT_EQ(table().is_sorted(broken), scalar::is_sorted(broken)) << n << " at " << i;
      ASSERT_FALSE(table().is_sorted(broken));
    }
  }
  const Element lo = std::numeric_limits<Element>::min();
  const Element hi = std::numeric_limits<Element>::max();
  EXPECT_TRUE(table().is_sorted(ElementArray{lo, lo, 0, hi, hi}));
  EXPECT_FALSE(table().is_sorted(ElementArray{lo, hi, lo, 0, 1, 2, 3, 4}));
}

INSTANTIATE_TEST_SUITE_P(AvailableIsas, KernelEquivalence,
                         ::testing::ValuesIn(available_isas()),
                         [](const auto& info) { return std::string(isa_name(info.param)); });

TEST(Dispatch, ScalarAlwaysAvailable) {
  const auto isas = available_isas();
  ASSERT_FALSE(isas.empty());
  EXPECT_EQ(isas.front(), Isa::kScalar);
  EXPECT_EQ(kernels_for(Isa::kScalar).isa, Isa::kScalar);
}

TEST(Dispatch, ActiveTableIsAvailable) {
  const auto isas = available_isas();
  EXPECT_NE(std::find(isas.begin(), isas.end(), kernels().isa), isas.end());
}

TEST(Dispatch, Avx2TableMatchesAvailability) {
  const auto isas = available_isas();
  if (std::find(isas.begin(), isas.end(), Isa::kAvx2) != isas.end()) {
    EXPECT_EQ(kernels_for(Isa::kAvx2).isa, Isa::kAvx2);
  } else {
    EXPECT_THROW(kernels_for(Isa::kAvx2), std::invalid_argument);
  }
}

}  // namespace
}  // namespace sortbench::simd
