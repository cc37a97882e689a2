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

// Benchmark plans: a grid of cells, each timed over several seeds and
// repetitions, every result checked against the native sort before it is
// recorded.
//
// Plan files are `key = value` lines; `#` starts a comment and list values
// are comma separated:
//
//   algos    = mp, mpi          # seq, cutoff, sorted, mp, mpi
//   subsorts = sorted, mp       # mpi only; default sorted
//   sizes    = 1e4, 10^5, 250000
//   workers  = 1, 2, 4          # mp, and mpi with the mp subsort
//   ranks    = 1, 2, 4          # mpi; powers of two
//   seeds    = 42
//   reps     = 3
//   cutoff   = 32
//   backend  = in-process       # or socket
//   timeout  = 30               # seconds per mpi world
//   user     = alice
//   node     = desk

#ifndef SORTBENCH_BENCH_PLAN_HPP
#define SORTBENCH_BENCH_PLAN_HPP

#include <chrono>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "sortbench/bench/record.hpp"
#include "sortbench/transport/world.hpp"
#include "sortbench/types.hpp"

namespace sortbench::bench {

class PlanError : public Error {
 public:
  using Error::Error;
};

/// How to run an algorithm beyond what a cell names.
struct ExecSettings {
  CutoffThreshold cutoff{};
  transport::Backend backend = transport::Backend::kInProcess;
  std::chrono::milliseconds timeout = transport::kDefaultTimeout;
  std::uint16_t rendezvous_port = 0;
};

struct RunPlan {
  std::vector<SortId> algos;
  std::vector<SubsortId> subsorts{SubsortId::kSorted};
  std::vector<std::size_t> sizes;
  std::vector<std::size_t> workers{1};
  std::vector<std::size_t> ranks{1};
  std::vector<std::uint64_t> seeds{42};
  std::size_t repetitions = 3;
  ExecSettings exec;
  std::string user;
  std::string node;
};

/// One point of the grid. For mpi rows size is already rounded up to a
/// multiple of p.
struct BenchCell {
  SortId sort = SortId::kSeq;
  SubsortId subsort = SubsortId::kNone;
  std::size_t p = 1;
  std::size_t c = 1;
  std::size_t size = 0;

  [[nodiscard]] std::string label() const;
  friend bool operator==(const BenchCell&, const BenchCell&) = default;
};

/// Parses the key=value format above. Throws PlanError naming the line.
RunPlan parse_plan(std::istream& in);
RunPlan parse_plan_file(const std::string& path);

/// Throws PlanError if the plan cannot run (empty grid, zero reps, a
/// non-power-of-two rank count, ...).
void validate(const RunPlan& plan);

/// Expands the grid in plan order: algos, then sizes, then ranks, subsorts
/// and workers where they apply.
std::vector<BenchCell> expand_cells(const RunPlan& plan);

/// Smallest multiple of p that is >= n.
[[nodiscard]] constexpr std::size_t round_up_to_multiple(std::size_t n, std::size_t p) noexcept {
  return p == 0 ? n : (n + p - 1) / p * p;
}

/// Runs the algorithm named by `cell` on `input`.
ElementArray execute_cell(const BenchCell& cell, std::span<const Element> input,
                          const ExecSettings& exec);

using CellExecutor = std::function<ElementArray(const BenchCell&, std::span<const Element>)>;

struct RunOptions {
  /// Replaces execute_cell; tests use it to inject faults.
  CellExecutor executor;
  /// Called after every verified run with its wall-clock seconds.
  std::function<void(const BenchCell&, std::uint64_t seed, double seconds)> on_sample;
};

/// Times every cell. The recorded time is, per seed, the minimum over the
/// repetitions, averaged across seeds. mp and mpi rows get a speedup against
/// the p = 1, c = 1 row of the same sort, subsort and size when the plan has
/// one; mp rows also get efficiency = speedup / c. Throws PlanError naming
/// the cell if any output is not the sorted input.
std::vector<BenchRecord> run_plan(const RunPlan& plan, const RunOptions& options = {});

}  // namespace sortbench::bench

#endif  // SORTBENCH_BENCH_PLAN_HPP
