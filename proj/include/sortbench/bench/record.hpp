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

// Benchmark rows and their CSV form.
//
//   p,c,size,sort,subsort,time,speedup,efficiency,user,node
//
// time is printed with three decimals. speedup and efficiency use the
// shortest text that parses back to the same double, or are left empty when
// absent. user and node are quoted RFC 4180 style when they need it. Rows
// are LF-terminated and appear in input order.

#ifndef SORTBENCH_BENCH_RECORD_HPP
#define SORTBENCH_BENCH_RECORD_HPP

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sortbench/types.hpp"

namespace sortbench::bench {

/// Algorithm column.
enum class SortId { kSeq, kCutoff, kSorted, kMp, kMpi };

/// Subsort column: what each rank runs locally in an mpi row.
enum class SubsortId { kNone, kSorted, kMp };

std::string_view to_string(SortId id) noexcept;
std::string_view to_string(SubsortId id) noexcept;
SortId parse_sort_id(std::string_view s);
SubsortId parse_subsort_id(std::string_view s);

/// True for the algorithms whose rows carry speedup and efficiency.
[[nodiscard]] constexpr bool is_parallel(SortId id) noexcept {
  return id == SortId::kMp || id == SortId::kMpi;
}

/// t_ref / t. Both must be positive.
double speedup(double t_ref, double t);

/// s / c. c must be at least one and s positive.
double efficiency(double s, std::size_t c);

struct BenchRecord {
  std::size_t p = 1;
  std::size_t c = 1;
  std::size_t size = 0;
  SortId sort = SortId::kSeq;
  SubsortId subsort = SubsortId::kNone;
  double time = 0.0;
  std::optional<double> speedup;
  std::optional<double> efficiency;
  std::string user;
  std::string node;

  friend bool operator==(const BenchRecord&, const BenchRecord&) = default;
};

class CsvError : public Error {
 public:
  using Error::Error;
};

inline constexpr std::string_view kCsvHeader =
    "p,c,size,sort,subsort,time,speedup,efficiency,user,node";

void emit_csv(std::span<const BenchRecord> records, std::ostream& out);

/// Writes to a sibling temporary and renames it over `path`, so readers
/// never see a partial file. Throws CsvError when the path is unwritable.
void emit_csv_file(std::span<const BenchRecord> records, const std::filesystem::path& path);

/// Accepts a header-only or completely empty document.
std::vector<BenchRecord> parse_csv(std::istream& in);
std::vector<BenchRecord> parse_csv_file(const std::filesystem::path& path);

}  // namespace sortbench::bench

#endif  // SORTBENCH_BENCH_RECORD_HPP
