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

#include "sortbench/bench/plan.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <sstream>

#include "sortbench/bench/stopwatch.hpp"
#include "sortbench/core_sort.hpp"
#include "sortbench/mp_tree.hpp"
#include "sortbench/shared_pool.hpp"

namespace sortbench::bench {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::uint64_t parse_u64(std::string_view s) {
  std::uint64_t v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw std::invalid_argument("not a non-negative integer: '" + std::string(s) + "'");
  }
  return v;
}

// Plain integers, or mantissa-exponent forms "1e4" and "10^4".
std::size_t parse_count(const std::string& s) {
  const auto pow10 = [&](std::uint64_t mantissa, std::uint64_t exponent) {
    std::uint64_t v = mantissa;
    for (std::uint64_t i = 0; i < exponent; ++i) {
      if (v > std::numeric_limits<std::uint64_t>::max() / 10) {
        throw std::invalid_argument("count overflows: '" + s + "'");
      }
      v *= 10;
    }
    return v;
  };
  if (auto e = s.find_first_of("eE"); e != std::string::npos) {
    return pow10(parse_u64(std::string_view(s).substr(0, e)),
                 parse_u64(std::string_view(s).substr(e + 1)));
  }
  if (auto caret = s.find('^'); caret != std::string::npos) {
    const auto base = parse_u64(std::string_view(s).substr(0, caret));
    if (base != 10) throw std::invalid_argument("only powers of ten are supported: '" + s + "'");
    return pow10(1, parse_u64(std::string_view(s).substr(caret + 1)));
  }
  return parse_u64(s);
}

template <class T, class F>
std::vector<T> parse_each(const std::string& value, F&& parse_one) {
  std::vector<T> out;
  for (const auto& item : split_list(value)) out.push_back(parse_one(item));
  return out;
}

}  // namespace

std::string BenchCell::label() const {
  std::string s = std::string(to_string(sort));
  if (subsort != SubsortId::kNone) s += "/" + std::string(to_string(subsort));
  s += " p=" + std::to_string(p) + " c=" + std::to_string(c) + " size=" + std::to_string(size);
  return s;
}

RunPlan parse_plan(std::istream& in) {
  RunPlan plan;
  std::string line;
  std::size_t line_no = 0;
  bool saw_algos = false;
  bool saw_sizes = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw PlanError("plan line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    try {
      if (key == "algos") {
        plan.algos = parse_each<SortId>(value, [](const std::string& v) { return parse_sort_id(v); });
        saw_algos = true;
      } else if (key == "subsorts") {
        plan.subsorts = parse_each<SubsortId>(value, [](const std::string& v) {
          auto id = parse_subsort_id(v);
          if (id == SubsortId::kNone) throw std::invalid_argument("subsort none is not runnable");
          return id;
        });
      } else if (key == "sizes") {
        plan.sizes = parse_each<std::size_t>(value, parse_count);
        saw_sizes = true;
      } else if (key == "workers") {
        plan.workers = parse_each<std::size_t>(value, parse_count);
      } else if (key == "ranks") {
        plan.ranks = parse_each<std::size_t>(value, parse_count);
      } else if (key == "seeds") {
        plan.seeds = parse_each<std::uint64_t>(value, [](const std::string& v) { return parse_u64(v); });
      } else if (key == "reps") {
        plan.repetitions = parse_count(value);
      } else if (key == "cutoff") {
        plan.exec.cutoff = CutoffThreshold(parse_count(value));
      } else if (key == "backend") {
        plan.exec.backend = transport::parse_backend(value);
      } else if (key == "timeout") {
        plan.exec.timeout = std::chrono::seconds(parse_count(value));
      } else if (key == "user") {
        plan.user = value;
      } else if (key == "node") {
        plan.node = value;
      } else {
        throw std::invalid_argument("unknown key '" + key + "'");
      }
    } catch (const PlanError&) {
      throw;
    } catch (const std::exception& e) {
      throw PlanError("plan line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!saw_algos) throw PlanError("plan has no algos line");
  if (!saw_sizes) throw PlanError("plan has no sizes line");
  validate(plan);
  return plan;
}

RunPlan parse_plan_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PlanError("cannot read plan file " + path);
  return parse_plan(in);
}

void validate(const RunPlan& plan) {
  if (plan.algos.empty()) throw PlanError("plan lists no algorithms");
  if (plan.sizes.empty()) throw PlanError("plan lists no sizes");
  if (plan.seeds.empty()) throw PlanError("plan lists no seeds");
  if (plan.repetitions == 0) throw PlanError("plan needs reps >= 1");
  const bool uses_workers = std::any_of(plan.algos.begin(), plan.algos.end(), [&](SortId a) {
    return a == SortId::kMp ||
           (a == SortId::kMpi && std::count(plan.subsorts.begin(), plan.subsorts.end(), SubsortId::kMp));
  });
  if (uses_workers) {
    if (plan.workers.empty()) throw PlanError("plan lists no worker counts");
    for (auto w : plan.workers) {
      if (w == 0) throw PlanError("worker counts must be >= 1");
    }
  }
  if (std::count(plan.algos.begin(), plan.algos.end(), SortId::kMpi)) {
    if (plan.ranks.empty()) throw PlanError("plan lists no rank counts");
    if (plan.subsorts.empty()) throw PlanError("plan lists no subsorts");
    for (auto r : plan.ranks) {
      if (!is_power_of_two(static_cast<long long>(r))) {
        throw PlanError("rank count " + std::to_string(r) + " is not a power of two");
      }
    }
  }
}

std::vector<BenchCell> expand_cells(const RunPlan& plan) {
  std::vector<BenchCell> cells;
  for (SortId algo : plan.algos) {
    for (std::size_t size : plan.sizes) {
      switch (algo) {
        case SortId::kSeq:
        case SortId::kCutoff:
        case SortId::kSorted:
          cells.push_back({algo, SubsortId::kNone, 1, 1, size});
          break;
        case SortId::kMp:
          for (auto w : plan.workers) cells.push_back({algo, SubsortId::kNone, 1, w, size});
          break;
        case SortId::kMpi:
          for (auto p : plan.ranks) {
            const std::size_t n = round_up_to_multiple(size, p);
            for (SubsortId ss : plan.subsorts) {
              if (ss == SubsortId::kMp) {
                for (auto w : plan.workers) cells.push_back({algo, ss, p, w, n});
              } else {
                cells.push_back({algo, ss, p, 1, n});
              }
            }
          }
          break;
      }
    }
  }
  return cells;
}

ElementArray execute_cell(const BenchCell& cell, std::span<const Element> input,
                          const ExecSettings& exec) {
  switch (cell.sort) {
    case SortId::kSeq:
      return mergesort_classic(input);
    case SortId::kCutoff:
      return mergesort_cutoff(input, exec.cutoff);
    case SortId::kSorted:
      return baseline_sort(input);
    case SortId::kMp:
      return pool_mergesort(input, cell.c);
    case SortId::kMpi: {
      MpSortOptions opts;
      opts.world.size = static_cast<int>(cell.p);
      opts.world.backend = exec.backend;
      opts.world.timeout = exec.timeout;
      opts.world.rendezvous_port = exec.rendezvous_port;
      opts.subsort =
          cell.subsort == SubsortId::kMp ? SubsortKind::pool(cell.c) : SubsortKind::baseline();
      return mp_sort(input, opts);
    }
  }
  throw std::logic_error("unhandled sort id");
}

std::vector<BenchRecord> run_plan(const RunPlan& plan, const RunOptions& options) {
  validate(plan);
  const CellExecutor exec = options.executor ? options.executor
                                             : CellExecutor([&](const BenchCell& c, std::span<const Element> in) {
                                                 return execute_cell(c, in, plan.exec);
                                               });
  const auto cells = expand_cells(plan);
  std::vector<BenchRecord> records;
  records.reserve(cells.size());

  StopWatch watch;
  for (const auto& cell : cells) {
    double seed_sum = 0.0;
    for (std::uint64_t seed : plan.seeds) {
      const ElementArray input = generate_array(cell.size, seed);
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t rep = 0; rep < plan.repetitions; ++rep) {
        watch.clear();
        watch.start("cell");
        ElementArray output;
        try {
          output = exec(cell, input);
        } catch (const std::exception& e) {
          throw PlanError("cell " + cell.label() + " seed " + std::to_string(seed) + " failed: " +
                          e.what());
        }
        const double t = watch.stop("cell");
        if (!is_sorted_permutation(input, output)) {
          throw PlanError("cell " + cell.label() + " seed " + std::to_string(seed) +
                          " produced an output that is not the sorted input");
        }
        if (options.on_sample) options.on_sample(cell, seed, t);
        best = std::min(best, t);
      }
      seed_sum += best;
    }

    BenchRecord r;
    r.p = cell.p;
    r.c = cell.c;
    r.size = cell.size;
    r.sort = cell.sort;
    r.subsort = cell.subsort;
    r.time = seed_sum / static_cast<double>(plan.seeds.size());
    r.user = plan.user;
    r.node = plan.node;
    records.push_back(std::move(r));
  }

  for (auto& r : records) {
    if (!is_parallel(r.sort) || !(r.time > 0.0)) continue;
    auto ref = std::find_if(records.begin(), records.end(), [&](const BenchRecord& o) {
      return o.sort == r.sort && o.subsort == r.subsort && o.size == r.size && o.p == 1 && o.c == 1;
    });
    if (ref == records.end() || !(ref->time > 0.0)) continue;
    r.speedup = speedup(ref->time, r.time);
    if (r.sort == SortId::kMp) r.efficiency = efficiency(*r.speedup, r.c);
  }
  return records;
}

}  // namespace sortbench::bench
