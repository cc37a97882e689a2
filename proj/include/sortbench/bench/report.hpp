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

// Plot-ready series derived from benchmark rows. Everything here is a pure
// function of the rows, so regenerating a report is byte-for-byte stable.

#ifndef SORTBENCH_BENCH_REPORT_HPP
#define SORTBENCH_BENCH_REPORT_HPP

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sortbench/bench/record.hpp"

namespace sortbench::bench {

struct Series {
  std::string name;  // file stem, e.g. "time_vs_cores_mp_n10000"
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<std::pair<double, double>> points;  // sorted by x
};

/// One series per (sort, subsort, p, size) of the mp and mpi rows: time
/// against c.
std::vector<Series> time_vs_cores(std::span<const BenchRecord> records);

/// One series per (sort, subsort, p, c) of rows that carry a speedup:
/// speedup against size.
std::vector<Series> speedup_vs_size(std::span<const BenchRecord> records);

/// Columnar text: comment lines, then "x y" rows.
std::string format_series(const Series& s);

/// Rows whose stored speedup or efficiency differs from the value recomputed
/// from the time column by more than `tolerance`.
std::vector<std::string> consistency_warnings(std::span<const BenchRecord> records,
                                              double tolerance = 0.001);

}  // namespace sortbench::bench

#endif  // SORTBENCH_BENCH_REPORT_HPP
