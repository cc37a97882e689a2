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

// Message-passing merge sort. Rank 0 holds the input and scatters equal
// chunks, every rank sorts its chunk with the chosen subsort, then a halving
// binary tree merges the chunks back into rank 0:
//
//   split = size / 2
//   while split >= 1:
//     split <= rank < 2*split : send local to rank - split, drop out
//     rank < split            : recv from rank + split, merge into local
//     split /= 2
//
// With the native subsort this is the plain message-passing merge sort; with
// the pool subsort it is the hybrid two-level variant.

#ifndef SORTBENCH_MP_TREE_HPP
#define SORTBENCH_MP_TREE_HPP

#include <cstddef>
#include <cstdint>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sortbench/transport/world.hpp"
#include "sortbench/types.hpp"

namespace sortbench {

/// How each rank sorts its scattered chunk.
class SubsortKind {
 public:
  enum class Kind { kBaseline, kPool };

  static SubsortKind baseline() { return SubsortKind(Kind::kBaseline, 1); }
  static SubsortKind pool(std::size_t workers);

  [[nodiscard]] Kind kind() const noexcept { return kind_; }
  [[nodiscard]] std::size_t workers() const noexcept { return workers_; }
  [[nodiscard]] std::string name() const;

  friend bool operator==(const SubsortKind&, const SubsortKind&) = default;

 private:
  SubsortKind(Kind kind, std::size_t workers) : kind_(kind), workers_(workers) {}

  Kind kind_;
  std::size_t workers_;
};

enum class TreeRole { kParent, kRightChild, kInactive };

/// Role of `rank` in the round whose half-size is `split`.
TreeRole tree_role(int rank, int split) noexcept;

[[nodiscard]] constexpr bool is_power_of_two(long long v) noexcept {
  return v > 0 && (v & (v - 1)) == 0;
}

/// Tag carried by every tree-merge message.
inline constexpr std::uint32_t kTreeMergeTag = 0;

/// Records the (round, sender, receiver) of every tree-merge message. Shared
/// by all ranks of a world.
class TreeTrace {
 public:
  struct Event {
    int round;
    int sender;
    int receiver;
  };

  void record(Event e);
  [[nodiscard]] std::vector<Event> events() const;

 private:
  mutable std::mutex mu_;
  std::vector<Event> events_;
};

ElementArray local_subsort(std::span<const Element> chunk, const SubsortKind& subsort);

/// Runs the merge tree from one rank. `local` must be sorted and the same
/// length on every rank. Rank 0 returns the merged array, everyone else
/// nullopt.
std::optional<ElementArray> tree_merge(transport::RankContext& ctx, ElementArray local,
                                       TreeTrace* trace = nullptr);

struct MpSortOptions {
  transport::WorldOptions world;
  SubsortKind subsort = SubsortKind::baseline();
};

/// Scatter -> local_subsort -> tree_merge over a fresh world, with `input`
/// held by rank 0. World size must be a power of two dividing input.size().
ElementArray mp_sort(std::span<const Element> input, const MpSortOptions& options,
                     transport::WorldStats* stats = nullptr);

/// As mp_sort, with rank 0 generating generate_array(n, seed) itself.
ElementArray mp_mergesort(std::size_t n, std::uint64_t seed, const MpSortOptions& options,
                          transport::WorldStats* stats = nullptr);

}  // namespace sortbench

#endif  // SORTBENCH_MP_TREE_HPP
