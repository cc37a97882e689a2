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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <thread>

#include "sortbench/bench/plan.hpp"
#include "sortbench/bench/record.hpp"
#include "sortbench/bench/report.hpp"
#include "sortbench/bench/stopwatch.hpp"
#include "sortbench/core_sort.hpp"

namespace sortbench::bench {
namespace {

using namespace std::chrono_literals;

// ---- StopWatch ----

TEST(StopWatch, ImmediateStop) {
  StopWatch w;
  w.start("a");
  const double t = w.stop("a");
  EXPECT_GE(t, 0.0);
  EXPECT_LT(t, 0.1);
  EXPECT_EQ(w.elapsed("a"), t);
}

TEST(StopWatch, SleepIsMeasured) {
  StopWatch w;
  w.start("sleep");
  std::this_thread::sleep_for(100ms);
  const double t = w.stop("sleep");
  EXPECT_GE(t, 0.1);
  EXPECT_LE(t, 0.2);
}

TEST(StopWatch, Errors) {
  StopWatch w;
  EXPECT_THROW(w.stop("never"), StopWatchError);
  EXPECT_THROW((void)w.elapsed("never"), StopWatchError);
  w.start("x");
  EXPECT_THROW(w.start("x"), StopWatchError);
  w.stop("x");
  EXPECT_THROW(w.stop("x"), StopWatchError);
}

TEST(StopWatch, AccumulatesAndReportsRunningTime) {
  StopWatch w;
  w.start("x");
  std::this_thread::sleep_for(20ms);
  const double first = w.stop("x");
  w.start("x");
  EXPECT_TRUE(w.running("x"));
  std::this_thread::sleep_for(20ms);
  const double mid = w.elapsed("x");
  EXPECT_GT(mid, first);
  const double total = w.stop("x");
  EXPECT_GE(total, first + 0.02);
  EXPECT_FALSE(w.running("x"));
}

// ---- Speedup and efficiency ----

struct ReferenceRow {
  std::size_t c;
  double time;
  double speedup;
  double efficiency;
};

// Shared-memory rows of the reference results table: cores, time, printed
// speedup, printed efficiency.
const std::vector<ReferenceRow> kMpRows{
    {1, 7.724, 1.000, 1.000},  {4, 3.474, 2.223, 0.556},  {8, 3.164, 2.441, 0.305},
    {12, 2.487, 3.106, 0.259}, {16, 2.820, 2.739, 0.171}, {20, 2.858, 2.703, 0.135},
    {24, 2.830, 2.730, 0.114},
};

TEST(Ratios, ReproducePrintedColumns) {
  for (const auto& row : kMpRows) {
    const double s = speedup(kMpRows[0].time, row.time);
    EXPECT_NEAR(s, row.speedup, 0.001) << "c=" << row.c;
    EXPECT_NEAR(efficiency(row.speedup, row.c), row.efficiency, 0.001) << "c=" << row.c;
  }
}

TEST(Ratios, Examples) {
  EXPECT_NEAR(speedup(7.724, 2.487), 3.106, 0.001);
  EXPECT_EQ(speedup(3.5, 3.5), 1.0);
  EXPECT_NEAR(speedup(85.611, 2.487), 34.42, 0.01);
  EXPECT_NEAR(efficiency(3.106, 12), 0.2588, 0.001);
  EXPECT_EQ(efficiency(1.0, 1), 1.0);
  EXPECT_NEAR(efficiency(2.223, 4), 0.556, 0.001);
  EXPECT_EQ(efficiency(2.5, 1), 2.5);
}

TEST(Ratios, RejectInvalidInput) {
  EXPECT_THROW(speedup(0.0, 1.0), std::invalid_argument);
  EXPECT_THROW(speedup(1.0, 0.0), std::invalid_argument);
  EXPECT_THROW(speedup(1.0, -2.0), std::invalid_argument);
  EXPECT_THROW(efficiency(1.0, 0), std::invalid_argument);
  EXPECT_THROW(efficiency(0.0, 2), std::invalid_argument);
}

// ---- CSV ----

std::vector<BenchRecord> reference_records() {
  std::vector<BenchRecord> out;
  BenchRecord seq;
  seq.size = 10'000'000;
  seq.sort = SortId::kSeq;
  seq.time = 85.611;
  out.push_back(seq);
  BenchRecord sorted = seq;
  sorted.sort = SortId::kSorted;
  sorted.time = 3.860;
  out.push_back(sorted);
  for (const auto& row : kMpRows) {
    BenchRecord r = seq;
    r.c = row.c;
    r.sort = SortId::kMp;
    r.time = row.time;
    r.speedup = row.speedup;
    r.efficiency = row.efficiency;
    out.push_back(r);
  }
  return out;
}

std::string to_csv(const std::vector<BenchRecord>& records) {
  std::ostringstream out;
  emit_csv(records, out);
  return out.str();
}

std::vector<BenchRecord> from_csv(const std::string& text) {
  std::istringstream in(text);
  return parse_csv(in);
}

TEST(Csv, HeaderOnlyForEmpty) {
  EXPECT_EQ(to_csv({}), "p,c,size,sort,subsort,time,speedup,efficiency,user,node\n");
  EXPECT_EQ(std::string(kCsvHeader), "p,c,size,sort,subsort,time,speedup,efficiency,user,node");
  EXPECT_TRUE(from_csv(to_csv({})).empty());
  EXPECT_TRUE(from_csv("").empty());
}

TEST(Csv, SingleMpRecord) {
  BenchRecord r;
  r.c = 4;
  r.size = 10'000;
  r.sort = SortId::kMp;
  r.time = 1.5;
  r.speedup = 2.223;
  r.efficiency = 0.556;
  r.user = "alex";
  r.node = "v100";
  const std::string csv = to_csv({r});
  EXPECT_EQ(csv,
            "p,c,size,sort,subsort,time,speedup,efficiency,user,node\n"
            "1,4,10000,mp,none,1.500,2.223,0.556,alex,v100\n");
  EXPECT_EQ(from_csv(csv), std::vector<BenchRecord>{r});
}

TEST(Csv, ReferenceRowsRecomputeFromTimeColumn) {
  const auto back = from_csv(to_csv(reference_records()));
  ASSERT_EQ(back.size(), 9u);
  EXPECT_EQ(back, reference_records());
  const double t1 = back[2].time;
  for (const auto& r : back) {
    if (!r.speedup) {
      EXPECT_FALSE(r.efficiency.has_value());
      continue;
    }
    EXPECT_NEAR(speedup(t1, r.time), *r.speedup, 0.001) << "c=" << r.c;
    EXPECT_NEAR(efficiency(*r.speedup, r.c), *r.efficiency, 0.001) << "c=" << r.c;
  }
  EXPECT_TRUE(consistency_warnings(back).empty());
}

TEST(Csv, MpiLayoutRow) {
  const auto rows = from_csv(
      "p,c,size,sort,subsort,time,speedup,efficiency,user,node\n"
      "1,24,10000000,mpi,mp,71.227,,,alex,v100\n");
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].sort, SortId::kMpi);
  EXPECT_EQ(rows[0].subsort, SubsortId::kMp);
  EXPECT_EQ(rows[0].c, 24u);
  EXPECT_DOUBLE_EQ(rows[0].time, 71.227);
  EXPECT_FALSE(rows[0].speedup.has_value());
}

std::string random_text(std::mt19937_64& rng) {
  static const std::string alphabet = "abcXYZ019 ,\"\n\r-_.é";
  std::string s;
  const std::size_t n = rng() % 8;
  for (std::size_t i = 0; i < n; ++i) s += alphabet[rng() % alphabet.size()];
  return s;
}

TEST(Csv, RandomizedRoundTrip) {
  std::mt19937_64 rng(51);
  const std::vector<SortId> sorts{SortId::kSeq, SortId::kCutoff, SortId::kSorted, SortId::kMp,
                                  SortId::kMpi};
  const std::vector<SubsortId> subsorts{SubsortId::kNone, SubsortId::kSorted, SubsortId::kMp};
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<BenchRecord> records(rng() % 12);
    for (auto& r : records) {
      r.p = 1 + rng() % 64;
      r.c = 1 + rng() % 64;
      r.size = rng() % 100'000'000;
      r.sort = sorts[rng() % sorts.size()];
      r.subsort = subsorts[rng() % subsorts.size()];
      // Times carry three decimals in the CSV, so draw them on that grid.
      r.time = static_cast<double>(rng() % 10'000'000) / 1000.0;
      if (rng() % 2) r.speedup = std::ldexp(static_cast<double>(rng() % (1u << 30)), -20);
      if (rng() % 2) r.efficiency = 1.0 / static_cast<double>(1 + rng() % 1000);
      r.user = random_text(rng);
      r.node = random_text(rng);
    }
    const std::string csv = to_csv(records);
    ASSERT_EQ(from_csv(csv), records) << csv;
    ASSERT_EQ(to_csv(from_csv(csv)), csv);
  }
}

TEST(Csv, RejectsMalformedInput) {
  EXPECT_THROW(from_csv("p,c\n"), CsvError);
  EXPECT_THROW(from_csv(std::string(kCsvHeader) + "\n1,2,3\n"), CsvError);
  EXPECT_THROW(from_csv(std::string(kCsvHeader) + "\n1,1,10,bogus,none,1.000,,,u,n\n"), CsvError);
  EXPECT_THROW(from_csv(std::string(kCsvHeader) + "\n1,1,10,seq,none,abc,,,u,n\n"), CsvError);
  EXPECT_THROW(from_csv(std::string(kCsvHeader) + "\n1,1,10,seq,none,1.0,,,\"u,n\n"), CsvError);
}

TEST(Csv, FileEmissionIsAtomic) {
  const auto dir = std::filesystem::temp_directory_path() / "sortbench_csv_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const auto path = dir / "out.csv";
  emit_csv_file(reference_records(), path);
  EXPECT_EQ(parse_csv_file(path), reference_records());
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    EXPECT_EQ(entry.path().filename(), "out.csv");
  }
  EXPECT_THROW(emit_csv_file(reference_records(), dir / "missing" / "x.csv"), std::exception);
  std::filesystem::remove_all(dir);
}

// ---- Plans ----

RunPlan plan_from(const std::string& text) {
  std::istringstream in(text);
  return parse_plan(in);
}

TEST(Plan, ParsesGrid) {
  const auto plan = plan_from(
      "# shared-memory grid\n"
      "algos = seq, mp, mpi\n"
      "sizes = 1e4, 10^5, 300\n"
      "workers = 1,2\n"
      "ranks = 1, 2, 4\n"
      "subsorts = sorted, mp\n"
      "seeds = 1, 2\n"
      "reps = 5\n"
      "backend = socket\n"
      "user = alex   # trailing comment\n"
      "node = v100\n");
  EXPECT_EQ(plan.algos, (std::vector<SortId>{SortId::kSeq, SortId::kMp, SortId::kMpi}));
  EXPECT_EQ(plan.sizes, (std::vector<std::size_t>{10'000, 100'000, 300}));
  EXPECT_EQ(plan.workers, (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(plan.ranks, (std::vector<std::size_t>{1, 2, 4}));
  EXPECT_EQ(plan.seeds, (std::vector<std::uint64_t>{1, 2}));
  EXPECT_EQ(plan.repetitions, 5u);
  EXPECT_EQ(plan.exec.backend, transport::Backend::kSocket);
  EXPECT_EQ(plan.user, "alex");
  EXPECT_EQ(plan.node, "v100");
}

TEST(Plan, RejectsMalformedPlans) {
  EXPECT_THROW(plan_from("sizes = 10\n"), PlanError);
  EXPECT_THROW(plan_from("algos = seq\n"), PlanError);
  EXPECT_THROW(plan_from("algos = seq\nsizes = ten\n"), PlanError);
  EXPECT_THROW(plan_from("algos = quick\nsizes = 10\n"), PlanError);
  EXPECT_THROW(plan_from("algos = seq\nsizes = 10\ncolour = blue\n"), PlanError);
  EXPECT_THROW(plan_from("algos = mpi\nsizes = 10\nranks = 3\n"), PlanError);
  EXPECT_THROW(plan_from("algos = mp\nsizes = 10\nworkers = 0\n"), PlanError);
  EXPECT_THROW(plan_from("algos = seq\nsizes = 10\nreps = 0\n"), PlanError);
  EXPECT_THROW(plan_from("algos seq\n"), PlanError);
  try {
    plan_from("algos = seq\n\nsizes = 10\nbogus = 1\n");
  } catch (const PlanError& e) {
    EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos) << e.what();
  }
}

TEST(Plan, ExpandsMpiCellsWithRoundedSizes) {
  auto plan = plan_from("algos = mpi\nsizes = 10\nranks = 1,4\nsubsorts = sorted, mp\nworkers = 2\n");
  const auto cells = expand_cells(plan);
  ASSERT_EQ(cells.size(), 4u);
  EXPECT_EQ(cells[0].size, 10u);
  EXPECT_EQ(cells[2].p, 4u);
  EXPECT_EQ(cells[2].size, 12u);
  EXPECT_EQ(cells[2].c, 1u);
  EXPECT_EQ(cells[3].subsort, SubsortId::kMp);
  EXPECT_EQ(cells[3].c, 2u);
}

TEST(RunPlan, MpWorkersOneAndTwo) {
  auto plan = plan_from("algos = mp\nsizes = 10000\nworkers = 1, 2\nreps = 1\n");
  const auto records = run_plan(plan);
  ASSERT_EQ(records.size(), 2u);
  EXPECT_EQ(records[0].c, 1u);
  EXPECT_EQ(records[1].c, 2u);
  ASSERT_TRUE(records[0].speedup && records[1].speedup);
  EXPECT_DOUBLE_EQ(*records[0].speedup, 1.0);
  EXPECT_DOUBLE_EQ(*records[1].speedup, records[0].time / records[1].time);
  EXPECT_DOUBLE_EQ(*records[1].efficiency, *records[1].speedup / 2.0);
}

TEST(RunPlan, SequentialRowsCarryNoRatios) {
  auto plan = plan_from("algos = seq, cutoff, sorted\nsizes = 500\nreps = 1\n");
  const auto records = run_plan(plan);
  ASSERT_EQ(records.size(), 3u);
  for (const auto& r : records) {
    EXPECT_FALSE(r.speedup.has_value());
    EXPECT_FALSE(r.efficiency.has_value());
    EXPECT_GT(r.time, 0.0);
  }
}

TEST(RunPlan, RecordedTimeIsMinOfRepsAveragedOverSeeds) {
  auto plan = plan_from("algos = seq\nsizes = 2000\nreps = 3\nseeds = 1, 2\n");
  std::map<std::uint64_t, std::vector<double>> samples;
  RunOptions options;
  options.on_sample = [&](const BenchCell&, std::uint64_t seed, double t) {
    samples[seed].push_back(t);
  };
  const auto records = run_plan(plan, options);
  ASSERT_EQ(records.size(), 1u);
  ASSERT_EQ(samples.size(), 2u);
  double sum = 0.0;
  for (const auto& [seed, times] : samples) {
    ASSERT_EQ(times.size(), 3u);
    sum += *std::min_element(times.begin(), times.end());
  }
  EXPECT_DOUBLE_EQ(records[0].time, sum / 2.0);
}

TEST(RunPlan, SingleSeedTimeEqualsMinimum) {
  auto plan = plan_from("algos = sorted\nsizes = 3000\nreps = 3\n");
  std::vector<double> times;
  RunOptions options;
  options.on_sample = [&](const BenchCell&, std::uint64_t, double t) { times.push_back(t); };
  const auto records = run_plan(plan, options);
  ASSERT_EQ(times.size(), 3u);
  EXPECT_EQ(records[0].time, *std::min_element(times.begin(), times.end()));
}

TEST(RunPlan, AbortsOnUnverifiedOutput) {
  auto plan = plan_from("algos = seq, mp\nsizes = 100\nworkers = 2\nreps = 1\n");
  RunOptions options;
  options.executor = [](const BenchCell& cell, std::span<const Element> in) {
    auto out = baseline_sort(in);
    if (cell.sort == SortId::kMp) out.back() = out.front();
    return out;
  };
  try {
    run_plan(plan, options);
    FAIL() << "expected PlanError";
  } catch (const PlanError& e) {
    EXPECT_NE(std::string(e.what()).find("mp p=1 c=2 size=100"), std::string::npos) << e.what();
  }
}

TEST(RunPlan, AbortsOnThrowingCell) {
  auto plan = plan_from("algos = seq\nsizes = 10\nreps = 1\n");
  RunOptions options;
  options.executor = [](const BenchCell&, std::span<const Element>) -> ElementArray {
    throw std::runtime_error("kaboom");
  };
  EXPECT_THROW(run_plan(plan, options), PlanError);
}

TEST(RunPlan, MpiGridPopulatesColumns) {
  auto plan = plan_from(
      "algos = mpi\nsizes = 1000\nranks = 1, 2, 4\nsubsorts = sorted, mp\nworkers = 2\nreps = 1\n");
  const auto records = run_plan(plan);
  ASSERT_EQ(records.size(), 6u);
  for (const auto& r : records) {
    EXPECT_EQ(r.sort, SortId::kMpi);
    EXPECT_NE(r.subsort, SubsortId::kNone);
    EXPECT_FALSE(r.efficiency.has_value());
  }
  EXPECT_EQ(records[4].p, 4u);
  EXPECT_EQ(records[5].c, 2u);
}

// ---- Report series ----

TEST(Report, ReferenceTableGivesSevenPointTimeSeries) {
  const auto series = time_vs_cores(reference_records());
  ASSERT_EQ(series.size(), 1u);
  EXPECT_EQ(series[0].name, "time_vs_cores_mp_n10000000");
  ASSERT_EQ(series[0].points.size(), 7u);
  EXPECT_EQ(series[0].points[3], (std::pair<double, double>{12.0, 2.487}));
  const std::string text = format_series(series[0]);
  EXPECT_NE(text.find("\n12 2.487\n"), std::string::npos) << text;
}

TEST(Report, SpeedupBySize) {
  auto records = reference_records();
  auto more = reference_records();
  for (auto& r : more) r.size = 1'000'000;
  records.insert(records.end(), more.begin(), more.end());
  const auto series = speedup_vs_size(records);
  ASSERT_EQ(series.size(), 7u);
  for (const auto& s : series) {
    ASSERT_EQ(s.points.size(), 2u);
    EXPECT_LT(s.points[0].first, s.points[1].first);
  }
}

TEST(Report, WarnsOnInconsistentSpeedup) {
  auto records = reference_records();
  records[5].speedup = 3.2;
  const auto warnings = consistency_warnings(records);
  ASSERT_EQ(warnings.size(), 2u);  // speedup, then efficiency no longer equals speedup / c
  EXPECT_NE(warnings[0].find("3.200000"), std::string::npos) << warnings[0];
}

}  // namespace
}  // namespace sortbench::bench
