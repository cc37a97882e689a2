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

// Acceptance checks. Prints one PASS, FAIL or N/A line per criterion and
// exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <future>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "sortbench/bench/record.hpp"
#include "sortbench/bench/stopwatch.hpp"
#include "sortbench/cli/commands.hpp"
#include "sortbench/core_sort.hpp"
#include "sortbench/mp_tree.hpp"
#include "sortbench/shared_pool.hpp"
#include "sortbench/transport/collectives.hpp"
#include "sortbench/transport/envelope.hpp"

namespace {

using namespace sortbench;
using namespace std::chrono_literals;
using transport::Backend;
using transport::RankContext;

enum class Verdict { kPass, kFail, kNotApplicable };

struct Outcome {
  Verdict verdict;
  std::string detail;
};

Outcome pass(std::string d) { return {Verdict::kPass, std::move(d)}; }
Outcome fail(std::string d) { return {Verdict::kFail, std::move(d)}; }

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const std::vector<Backend> kBackends{Backend::kInProcess, Backend::kSocket};

// 1. Every algorithm equals the native sort over sizes x 10 seeds.
Outcome oracle_equivalence() {
  const auto t0 = std::chrono::steady_clock::now();
  cli::CliConfig config;
  std::ostringstream out, err;
  const int code = cli::cmd_verify_with(config, cli::default_verify_cases(config), out, err);
  const double took = seconds_since(t0);
  if (code != cli::kExitOk) return fail(err.str());
  if (took >= 60.0) return fail("correct but took " + fixed(took, 1) + " s, limit 60 s");
  std::string summary = out.str();
  if (!summary.empty() && summary.back() == '\n') summary.pop_back();
  return pass(summary + " in " + fixed(took, 1) + " s");
}

// 2. Derived columns of the reference table recomputed from its times.
Outcome derived_columns() {
  struct Row {
    std::size_t c;
    double time, speedup, efficiency;
  };
  const std::vector<Row> rows{{1, 7.724, 1.000, 1.000},  {4, 3.474, 2.223, 0.556},
                              {8, 3.164, 2.441, 0.305},  {12, 2.487, 3.106, 0.259},
                              {16, 2.820, 2.739, 0.171}, {20, 2.858, 2.703, 0.135},
                              {24, 2.830, 2.730, 0.114}};
  double worst = 0.0;
  for (const auto& r : rows) {
    const double s = bench::speedup(rows[0].time, r.time);
    const double e = bench::efficiency(s, r.c);
    worst = std::max({worst, std::fabs(s - r.speedup), std::fabs(e - r.efficiency)});
    if (std::fabs(s - r.speedup) > 0.001 || std::fabs(e - r.efficiency) > 0.001) {
      return fail("c=" + std::to_string(r.c) + ": speedup " + fixed(s, 4) + " vs " +
                  fixed(r.speedup, 3) + ", efficiency " + fixed(e, 4) + " vs " +
                  fixed(r.efficiency, 3));
    }
  }
  const double headline = bench::speedup(85.611, 2.487);
  if (std::fabs(headline - 34.0) > 0.5 || std::fabs(headline - 34.42) > 0.01) {
    return fail("seq/mp(12) = " + fixed(headline, 2));
  }
  return pass("7 rows within " + fixed(worst, 4) + "; 85.611/2.487 = " + fixed(headline, 2));
}

// 3. Tree merge sends p-1 messages over log2(p) rounds, perfectly matched.
Outcome tree_structure() {
  std::string detail;
  for (Backend backend : kBackends) {
    for (int p : {2, 4, 8}) {
      MpSortOptions o;
      o.world.size = p;
      o.world.backend = backend;
      TreeTrace trace;
      transport::WorldStats stats;
      transport::world_spawn(
          o.world,
          [&](RankContext& c) {
            return tree_merge(c, generate_array(16, static_cast<std::uint64_t>(c.rank())), &trace);
          },
          &stats);
      const auto events = trace.events();
      const std::string where =
          "p=" + std::to_string(p) + " " + std::string(transport::backend_name(backend));
      if (stats.total_messages() != static_cast<std::uint64_t>(p - 1) ||
          events.size() != static_cast<std::size_t>(p - 1)) {
        return fail(where + ": " + std::to_string(stats.total_messages()) + " messages");
      }
      int rounds = 0;
      for (int split = p / 2; split >= 1; split /= 2, ++rounds) {
        std::set<int> senders, receivers;
        for (const auto& e : events) {
          if (e.round != rounds) continue;
          if (e.receiver != e.sender - split) return fail(where + ": bad pairing");
          senders.insert(e.sender);
          receivers.insert(e.receiver);
        }
        if (senders.size() != static_cast<std::size_t>(split) ||
            receivers.size() != static_cast<std::size_t>(split) || *senders.begin() != split ||
            *senders.rbegin() != 2 * split - 1 || *receivers.rbegin() != split - 1) {
          return fail(where + ": round " + std::to_string(rounds) + " is not a perfect matching");
        }
      }
      for (const auto& e : events) {
        if (e.round >= rounds) return fail(where + ": event in round " + std::to_string(e.round));
      }
      if (p == 8 && backend == Backend::kInProcess) detail = "p=8: 7 messages, 3 rounds";
    }
  }
  return pass(detail + "; p in {2,4,8} on both backends");
}

// 4. gather(scatter(x)) == x, and the 4-rank, 8-element scatter layout.
Outcome scatter_gather() {
  std::mt19937_64 rng(4);
  std::size_t worlds = 0;
  for (int p : {1, 2, 4, 8}) {
    for (std::size_t n : {std::size_t{0}, std::size_t(p), std::size_t(1000) / p * p,
                          std::size_t(100'000) / p * p}) {
      ElementArray x(n);
      for (auto& v : x) v = static_cast<Element>(rng());
      transport::WorldOptions o;
      o.size = p;
      auto out = transport::world_spawn(o, [&](RankContext& c) {
        auto chunk = transport::scatter(
            c, c.is_root() ? std::optional<std::span<const Element>>(x) : std::nullopt);
        return transport::gather(c, chunk);
      });
      if (!out[0] || *out[0] != x) {
        return fail("p=" + std::to_string(p) + " n=" + std::to_string(n) + " not identity");
      }
      ++worlds;
    }
  }
  const ElementArray eight{1, 2, 3, 4, 5, 6, 7, 8};
  transport::WorldOptions o;
  o.size = 4;
  auto chunks = transport::world_spawn(o, [&](RankContext& c) {
    return transport::scatter(
        c, c.is_root() ? std::optional<std::span<const Element>>(eight) : std::nullopt);
  });
  for (std::size_t i = 0; i < 4; ++i) {
    if (chunks[i] != ElementArray{eight[2 * i], eight[2 * i + 1]}) {
      return fail("rank " + std::to_string(i) + " got the wrong chunk");
    }
  }
  return pass(std::to_string(worlds) + " round trips; rank i holds elements [2i, 2i+2)");
}

// 5. Wire format round trip and golden bytes.
Outcome wire_format() {
  using transport::Envelope;
  std::mt19937_64 rng(5);
  for (int i = 0; i < 1000; ++i) {
    Envelope e;
    e.payload.resize(i % 10 == 0 ? rng() % 10'001 : rng() % 100);
    for (auto& v : e.payload) v = static_cast<Element>(rng());
    e.tag = static_cast<std::uint32_t>(rng());
    e.source = static_cast<std::uint32_t>(rng() % 1024);
    e.dest = (e.source + 1 + static_cast<std::uint32_t>(rng() % 1023)) % 1024;
    const auto bytes = transport::encode(e);
    if (transport::decode(bytes) != e || transport::encode(transport::decode(bytes)) != bytes) {
      return fail("envelope " + std::to_string(i) + " did not round-trip");
    }
  }
  const std::vector<std::uint8_t> golden{
      0x52, 0x4F, 0x53, 0x4D, 0x01, 0x01, 0x00, 0x00, 0x07, 0x00, 0x00, 0x00, 0x01, 0x00,
      0x00, 0x00, 0x03, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x02, 0x00, 0x00, 0x00,
      0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x01, 0x00,
      0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0xFE, 0xFF, 0xFF, 0xFF, 0xFF, 0xFF, 0xFF, 0xFF};
  const Envelope fixed_env{{1, -2}, transport::ElementType::kInt64, 7, 1, 3};
  if (transport::encode(fixed_env) != golden) return fail("golden bytes changed");
  if (transport::decode(golden) != fixed_env) return fail("golden bytes decode differently");
  return pass("1000 random envelopes round-trip; golden frame of 56 bytes unchanged");
}

// 6. Pool speedup at 10^7 with 4 workers, on machines with at least 4 cores.
Outcome speedup_trend() {
  auto time_pool = [](const ElementArray& a, std::size_t workers, int reps) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
      bench::StopWatch w;
      w.start("t");
      auto out = pool_mergesort(a, workers);
      best = std::min(best, w.stop("t"));
      if (!is_sorted(out)) throw std::runtime_error("unsorted output");
    }
    return best;
  };
  const auto big = generate_array(10'000'000, 42);
  const auto small = generate_array(10'000, 42);
  const double big_s = time_pool(big, 1, 2) / time_pool(big, 4, 2);
  const double small_s = time_pool(small, 1, 5) / time_pool(small, 4, 5);
  const unsigned cores = std::thread::hardware_concurrency();
  const std::string measured = "measured speedup(4 vs 1) " + fixed(big_s, 3) + " at 10^7, " +
                               fixed(small_s, 3) + " at 10^4 (recorded only) on " +
                               std::to_string(cores) + " hardware thread(s)";
  if (cores < 4) {
    return {Verdict::kNotApplicable, "needs >= 4 cores; " + measured};
  }
  if (big_s < 1.5) return fail(measured + "; need >= 1.5");
  return pass(measured);
}

// 7. An unmatched recv is aborted within twice the deadline.
Outcome deadlock_containment() {
  const auto deadline = 1000ms;
  std::string detail;
  for (Backend backend : kBackends) {
    auto fut = std::async(std::launch::async, [&]() -> std::pair<bool, double> {
      const auto t0 = std::chrono::steady_clock::now();
      try {
        transport::WorldOptions o;
        o.size = 4;
        o.backend = backend;
        o.timeout = deadline;
        transport::run_world(o, [](RankContext& c) {
          if (c.rank() == 3) (void)c.recv(0, 12345);
        });
      } catch (const transport::WorldError& e) {
        return {e.timed_out() && e.rank() == 3, seconds_since(t0)};
      }
      return {false, seconds_since(t0)};
    });
    if (fut.wait_for(20s) != std::future_status::ready) {
      return fail(std::string(transport::backend_name(backend)) + ": world still hung after 20 s");
    }
    const auto [timed_out, took] = fut.get();
    const double limit = 2.0 * std::chrono::duration<double>(deadline).count();
    if (!timed_out) return fail(std::string(transport::backend_name(backend)) + ": no timeout error");
    if (took >= limit) {
      return fail(std::string(transport::backend_name(backend)) + ": aborted after " +
                  fixed(took, 3) + " s, limit " + fixed(limit, 1) + " s");
    }
    detail += std::string(detail.empty() ? "" : ", ") +
              std::string(transport::backend_name(backend)) + " aborted in " + fixed(took, 3) + " s";
  }
  return pass(detail + " (deadline 1 s)");
}

// 8. The mpi matrix gives identical results on both backends.
Outcome backend_equivalence() {
  std::size_t runs = 0;
  for (int p : {1, 2, 4, 8}) {
    for (std::size_t base : {0, 1, 2, 10, 1000, 10'000}) {
      const std::size_t n = (base + p - 1) / p * p;
      for (auto subsort : {SubsortKind::baseline(), SubsortKind::pool(2)}) {
        for (std::uint64_t seed = 42; seed < 45; ++seed) {
          std::vector<ElementArray> results;
          for (Backend backend : kBackends) {
            MpSortOptions o;
            o.world.size = p;
            o.world.backend = backend;
            results.push_back(mp_mergesort(n, seed, o));
          }
          if (results[0] != results[1] || results[0] != baseline_sort(generate_array(n, seed))) {
            return fail("p=" + std::to_string(p) + " n=" + std::to_string(n) + " subsort=" +
                        subsort.name() + " seed=" + std::to_string(seed));
          }
          ++runs;
        }
      }
    }
  }
  return pass(std::to_string(runs) + " matrix cells identical on in-process and socket");
}

// 9. CSV round trip and header.
Outcome csv_round_trip() {
  using bench::BenchRecord;
  std::ostringstream header;
  bench::emit_csv({}, header);
  if (header.str() != "p,c,size,sort,subsort,time,speedup,efficiency,user,node\n") {
    return fail("header is '" + header.str() + "'");
  }
  std::mt19937_64 rng(9);
  const std::string alphabet = "ab,\"\n x9";
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<BenchRecord> records(rng() % 10);
    for (auto& r : records) {
      r.p = 1 + rng() % 32;
      r.c = 1 + rng() % 32;
      r.size = rng() % 10'000'000;
      r.sort = static_cast<bench::SortId>(rng() % 5);
      r.subsort = static_cast<bench::SubsortId>(rng() % 3);
      r.time = static_cast<double>(rng() % 1'000'000) / 1000.0;
      if (rng() % 2) r.speedup = static_cast<double>(rng() % 100'000) / 997.0;
      if (rng() % 2) r.efficiency = static_cast<double>(rng() % 100'000) / 1013.0;
      for (std::string* s : {&r.user, &r.node}) {
        for (std::size_t k = rng() % 6; k > 0; --k) *s += alphabet[rng() % alphabet.size()];
      }
    }
    std::ostringstream out;
    bench::emit_csv(records, out);
    std::istringstream in(out.str());
    if (bench::parse_csv(in) != records) return fail("record set " + std::to_string(trial));
  }
  return pass("500 random record sets round-trip; header exact");
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"oracle equivalence", oracle_equivalence},
      {"derived-column reproduction", derived_columns},
      {"tree-merge structure", tree_structure},
      {"scatter/gather identity", scatter_gather},
      {"wire format", wire_format},
      {"parallel speedup trend", speedup_trend},
      {"deadlock containment", deadlock_containment},
      {"backend equivalence", backend_equivalence},
      {"csv round-trip", csv_round_trip},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = fail(std::string("threw: ") + e.what());
    }
    const char* tag = o.verdict == Verdict::kPass   ? "PASS"
                      : o.verdict == Verdict::kFail ? "FAIL"
                                                    : "N/A ";
    if (o.verdict == Verdict::kFail) ++failures;
    std::printf("[%s] %zu %s: %s\n", tag, i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
