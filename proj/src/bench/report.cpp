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

#include "sortbench/bench/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <tuple>

namespace sortbench::bench {

namespace {

std::string group_stem(const BenchRecord& r) {
  std::string s(to_string(r.sort));
  if (r.subsort != SubsortId::kNone) s += "-" + std::string(to_string(r.subsort));
  if (r.sort == SortId::kMpi) s += "_p" + std::to_string(r.p);
  return s;
}

std::string group_title(const BenchRecord& r) {
  return "sort=" + std::string(to_string(r.sort)) + " subsort=" + std::string(to_string(r.subsort)) +
         " p=" + std::to_string(r.p);
}

std::string num(double v, const char* fmt) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, v);
  return buf;
}

void sort_points(Series& s) {
  std::stable_sort(s.points.begin(), s.points.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
}

}  // namespace

std::vector<Series> time_vs_cores(std::span<const BenchRecord> records) {
  using Key = std::tuple<SortId, SubsortId, std::size_t, std::size_t>;
  std::map<Key, Series> groups;
  for (const auto& r : records) {
    if (!is_parallel(r.sort)) continue;
    auto [it, fresh] = groups.try_emplace(Key{r.sort, r.subsort, r.p, r.size});
    Series& s = it->second;
    if (fresh) {
      s.name = "time_vs_cores_" + group_stem(r) + "_n" + std::to_string(r.size);
      s.title = "time by cores: " + group_title(r) + " size=" + std::to_string(r.size);
      s.x_label = "cores";
      s.y_label = "time_s";
    }
    s.points.emplace_back(static_cast<double>(r.c), r.time);
  }
  std::vector<Series> out;
  for (auto& [key, s] : groups) {
    sort_points(s);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<Series> speedup_vs_size(std::span<const BenchRecord> records) {
  using Key = std::tuple<SortId, SubsortId, std::size_t, std::size_t>;
  std::map<Key, Series> groups;
  for (const auto& r : records) {
    if (!r.speedup) continue;
    auto [it, fresh] = groups.try_emplace(Key{r.sort, r.subsort, r.p, r.c});
    Series& s = it->second;
    if (fresh) {
      s.name = "speedup_vs_size_" + group_stem(r) + "_c" + std::to_string(r.c);
      s.title = "speedup by size: " + group_title(r) + " c=" + std::to_string(r.c);
      s.x_label = "size";
      s.y_label = "speedup";
    }
    s.points.emplace_back(static_cast<double>(r.size), *r.speedup);
  }
  std::vector<Series> out;
  for (auto& [key, s] : groups) {
    sort_points(s);
    out.push_back(std::move(s));
  }
  return out;
}

std::string format_series(const Series& s) {
  std::string out = "# " + s.title + "\n# " + s.x_label + " " + s.y_label + "\n";
  const bool time_y = s.y_label == "time_s";
  for (const auto& [x, y] : s.points) {
    out += num(x, "%.0f");
    out += ' ';
    out += num(y, time_y ? "%.3f" : "%.6f");
    out += '\n';
  }
  return out;
}

std::vector<std::string> consistency_warnings(std::span<const BenchRecord> records,
                                              double tolerance) {
  std::vector<std::string> warnings;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    if (!r.speedup && !r.efficiency) continue;
    const std::string where = "row " + std::to_string(i + 1) + " (" + group_title(r) +
                              " c=" + std::to_string(r.c) + " size=" + std::to_string(r.size) + ")";
    if (r.speedup) {
      auto ref = std::find_if(records.begin(), records.end(), [&](const BenchRecord& o) {
        return o.sort == r.sort && o.subsort == r.subsort && o.size == r.size && o.p == 1 &&
               o.c == 1;
      });
      if (ref == records.end()) {
        warnings.push_back(where + ": speedup present but no p=1 c=1 reference row");
      } else if (!(r.time > 0.0) || !(ref->time > 0.0)) {
        warnings.push_back(where + ": time is below the CSV's resolution, speedup unverifiable");
      } else {
        const double recomputed = ref->time / r.time;
        if (std::fabs(recomputed - *r.speedup) > tolerance) {
          warnings.push_back(where + ": stored speedup " + num(*r.speedup, "%.6f") +
                             " but time column gives " + num(recomputed, "%.6f"));
        }
      }
    }
    if (r.efficiency) {
      if (!r.speedup || r.c == 0) {
        warnings.push_back(where + ": efficiency present without speedup");
      } else {
        const double recomputed = *r.speedup / static_cast<double>(r.c);
        if (std::fabs(recomputed - *r.efficiency) > tolerance) {
          warnings.push_back(where + ": stored efficiency " + num(*r.efficiency, "%.6f") +
                             " but speedup / c gives " + num(recomputed, "%.6f"));
        }
      }
    }
  }
  return warnings;
}

}  // namespace sortbench::bench
