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

#include "sortbench/mp_tree.hpp"

#include <functional>
#include <stdexcept>

#include "sortbench/core_sort.hpp"
#include "sortbench/shared_pool.hpp"
#include "sortbench/transport/collectives.hpp"

namespace sortbench {

SubsortKind SubsortKind::pool(std::size_t workers) {
  if (workers == 0) throw std::invalid_argument("pool subsort needs at least one worker");
  return SubsortKind(Kind::kPool, workers);
}

std::string SubsortKind::name() const {
  return kind_ == Kind::kBaseline ? "sorted" : "mp(" + std::to_string(workers_) + ")";
}

TreeRole tree_role(int rank, int split) noexcept {
  if (rank < split) return TreeRole::kParent;
  if (rank < 2 * split) return TreeRole::kRightChild;
  return TreeRole::kInactive;
}

void TreeTrace::record(Event e) {
  std::lock_guard lock(mu_);
  events_.push_back(e);
}

std::vector<TreeTrace::Event> TreeTrace::events() const {
  std::lock_guard lock(mu_);
  return events_;
}

ElementArray local_subsort(std::span<const Element> chunk, const SubsortKind& subsort) {
  switch (subsort.kind()) {
    case SubsortKind::Kind::kBaseline:
      return baseline_sort(chunk);
    case SubsortKind::Kind::kPool:
      return pool_mergesort(chunk, subsort.workers());
  }
  throw std::logic_error("unhandled subsort kind");
}

std::optional<ElementArray> tree_merge(transport::RankContext& ctx, ElementArray local,
                                       TreeTrace* trace) {
  if (!is_power_of_two(ctx.size())) {
    throw std::invalid_argument("tree_merge needs a power-of-two world, got " +
                                std::to_string(ctx.size()));
  }
  const int rank = ctx.rank();
  int round = 0;
  for (int split = ctx.size() / 2; split >= 1; split /= 2, ++round) {
    switch (tree_role(rank, split)) {
      case TreeRole::kRightChild:
        ctx.send(local, rank - split, kTreeMergeTag);
        if (trace) trace->record({round, rank, rank - split});
        local.clear();
        break;
      case TreeRole::kParent: {
        ElementArray partner = ctx.recv(rank + split, kTreeMergeTag);
        if (partner.size() != local.size()) {
          throw std::runtime_error("tree_merge: rank " + std::to_string(rank + split) + " sent " +
                                   std::to_string(partner.size()) + " elements, expected " +
                                   std::to_string(local.size()));
        }
        local = merge(local, partner);
        break;
      }
      case TreeRole::kInactive:
        break;
    }
  }
  if (rank == 0) return local;
  return std::nullopt;
}

namespace {

void check_shape(std::size_t n, const MpSortOptions& options) {
  const int p = options.world.size;
  if (!is_power_of_two(p)) {
    throw std::invalid_argument("message-passing sort needs a power-of-two rank count, got " +
                                std::to_string(p));
  }
  if (n % static_cast<std::size_t>(p) != 0) {
    throw std::invalid_argument("array length " + std::to_string(n) +
                                " is not divisible by rank count " + std::to_string(p));
  }
}

ElementArray run_tree_sort(const MpSortOptions& options, transport::WorldStats* stats,
                           const std::function<ElementArray()>& load_at_root) {
  auto results = transport::world_spawn(
      options.world,
      [&](transport::RankContext& ctx) -> std::optional<ElementArray> {
        ElementArray unsorted;
        if (ctx.is_root()) unsorted = load_at_root();
        ElementArray chunk = ctx.is_root() ? transport::scatter(ctx, std::span<const Element>(unsorted))
                                           : transport::scatter(ctx, std::nullopt);
        return tree_merge(ctx, local_subsort(chunk, options.subsort));
      },
      stats);
  return std::move(*results.front());
}

}  // namespace

ElementArray mp_sort(std::span<const Element> input, const MpSortOptions& options,
                     transport::WorldStats* stats) {
  check_shape(input.size(), options);
  return run_tree_sort(options, stats, [input] { return ElementArray(input.begin(), input.end()); });
}

ElementArray mp_mergesort(std::size_t n, std::uint64_t seed, const MpSortOptions& options,
                          transport::WorldStats* stats) {
  check_shape(n, options);
  return run_tree_sort(options, stats, [n, seed] { return generate_array(n, seed); });
}

}  // namespace sortbench
