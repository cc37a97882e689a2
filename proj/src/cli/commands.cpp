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

#include "sortbench/cli/commands.hpp"

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "CLI11.hpp"
#include "sortbench/bench/plan.hpp"
#include "sortbench/bench/report.hpp"
#include "sortbench/bench/stopwatch.hpp"
#include "sortbench/core_sort.hpp"
#include "sortbench/mp_tree.hpp"
#include "sortbench/shared_pool.hpp"
#include "sortbench/simd/kernels.hpp"

namespace sortbench::cli {

namespace {

using bench::SortId;
using bench::SubsortId;

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, v);
  return buf;
}

bench::ExecSettings exec_settings(const CliConfig& config) {
  bench::ExecSettings exec;
  exec.cutoff = CutoffThreshold(config.cutoff);
  exec.backend = config.backend;
  exec.timeout = config.timeout;
  exec.rendezvous_port = config.port;
  return exec;
}

std::string env_or(const char* name, std::string fallback) {
  const char* v = std::getenv(name);
  return v && *v ? std::string(v) : std::move(fallback);
}

std::string hostname() {
  char buf[256] = {};
  if (::gethostname(buf, sizeof(buf) - 1) != 0) return "unknown";
  return buf;
}

void print_summary(const std::vector<bench::BenchRecord>& records, std::ostream& out) {
  // Cross-algorithm ratios against seq and sorted rows of the same size.
  auto reference_time = [&](SortId id, std::size_t size) -> double {
    for (const auto& r : records) {
      if (r.sort == id && r.size == size && r.time > 0.0) return r.time;
    }
    return 0.0;
  };
  out << "    p    c        size    sort subsort      time  speedup efficiency  vs_seq vs_sorted\n";
  for (const auto& r : records) {
    char line[256];
    std::snprintf(line, sizeof(line), "%5zu %4zu %11zu %7s %7s %9.3f %8s %10s", r.p, r.c, r.size,
                  std::string(bench::to_string(r.sort)).c_str(),
                  std::string(bench::to_string(r.subsort)).c_str(), r.time,
                  r.speedup ? fmt("%.3f", *r.speedup).c_str() : "---",
                  r.efficiency ? fmt("%.3f", *r.efficiency).c_str() : "---");
    out << line;
    for (SortId ref : {SortId::kSeq, SortId::kSorted}) {
      const double t = reference_time(ref, r.size);
      const bool show = t > 0.0 && r.time > 0.0 && r.sort != ref;
      std::snprintf(line, sizeof(line), " %*s", ref == SortId::kSeq ? 7 : 9,
                    show ? fmt("%.3f", t / r.time).c_str() : "---");
      out << line;
    }
    out << '\n';
  }
}

}  // namespace

void validate(const CliConfig& config) {
  if (config.size > (std::size_t{1} << 34)) throw UsageError("--size is unreasonably large");
  if (config.repetitions == 0) throw UsageError("--reps must be >= 1");
  if (config.cutoff == 0) throw UsageError("--cutoff must be >= 1");
  if (config.timeout.count() <= 0) throw UsageError("--timeout must be positive");
  if (config.command == Command::kRun) {
    if (config.algo == SortId::kMp && config.workers == 0) {
      throw UsageError("--algo mp requires --workers >= 1");
    }
    if (config.algo == SortId::kMpi) {
      if (!is_power_of_two(static_cast<long long>(config.ranks))) {
        throw UsageError("--algo mpi requires --ranks to be a power of two, got " +
                         std::to_string(config.ranks));
      }
      if (config.subsort == SubsortId::kNone) {
        throw UsageError("--algo mpi needs --subsort sorted or mp");
      }
      if (config.subsort == SubsortId::kMp && config.workers == 0) {
        throw UsageError("--subsort mp requires --workers >= 1");
      }
    }
  }
  if (config.command == Command::kBench && config.plan_path.empty()) {
    throw UsageError("bench requires --plan");
  }
  if (config.command == Command::kReport && config.input_path.empty()) {
    throw UsageError("report requires a CSV path");
  }
}

int cmd_run(const CliConfig& config, std::ostream& out, std::ostream& err) {
  bench::BenchCell cell;
  cell.sort = config.algo;
  cell.size = config.size;
  switch (config.algo) {
    case SortId::kMp:
      cell.c = config.workers;
      break;
    case SortId::kMpi:
      cell.p = config.ranks;
      cell.subsort = config.subsort;
      cell.c = config.subsort == SubsortId::kMp ? config.workers : 1;
      cell.size = bench::round_up_to_multiple(config.size, config.ranks);
      if (cell.size != config.size) {
        out << "size " << config.size << " is not divisible by " << config.ranks
            << " ranks; using " << cell.size << "\n";
      }
      break;
    default:
      break;
  }

  const ElementArray input = generate_array(cell.size, config.seed);
  bench::StopWatch watch;
  ElementArray output;
  try {
    watch.start("run");
    output = bench::execute_cell(cell, input, exec_settings(config));
    watch.stop("run");
  } catch (const std::exception& e) {
    err << "run failed: " << e.what() << "\n";
    return kExitFailure;
  }
  const bool ok = is_sorted_permutation(input, output);
  out << cell.label() << " seed=" << config.seed << " time=" << fmt("%.6f", watch.elapsed("run"))
      << "s verified=" << (ok ? "yes" : "NO") << "\n";
  if (!ok) {
    err << "output is not the sorted input\n";
    return kExitFailure;
  }
  return kExitOk;
}

int cmd_bench(const CliConfig& config, std::ostream& out, std::ostream& err) {
  bench::RunPlan plan;
  try {
    plan = bench::parse_plan_file(config.plan_path);
  } catch (const std::exception& e) {
    err << "bad plan: " << e.what() << "\n";
    return kExitFailure;
  }
  if (plan.user.empty()) plan.user = env_or("USER", "unknown");
  if (plan.node.empty()) plan.node = hostname();
  if (config.port != 0) plan.exec.rendezvous_port = config.port;

  std::vector<bench::BenchRecord> records;
  try {
    records = bench::run_plan(plan);
  } catch (const std::exception& e) {
    err << "bench failed: " << e.what() << "\n";
    return kExitFailure;
  }
  const std::string path = config.output.empty() ? "bench.csv" : config.output;
  try {
    bench::emit_csv_file(records, path);
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return kExitFailure;
  }
  print_summary(records, out);
  out << "wrote " << records.size() << " rows to " << path << "\n";
  return kExitOk;
}

int cmd_report(const CliConfig& config, std::ostream& out, std::ostream& err) {
  std::vector<bench::BenchRecord> records;
  try {
    records = bench::parse_csv_file(config.input_path);
  } catch (const std::exception& e) {
    err << "cannot read report input: " << e.what() << "\n";
    return kExitFailure;
  }
  for (const auto& w : bench::consistency_warnings(records)) err << "warning: " << w << "\n";

  const std::filesystem::path dir = config.output.empty() ? "report" : config.output;
  auto series = bench::time_vs_cores(records);
  auto speedups = bench::speedup_vs_size(records);
  series.insert(series.end(), speedups.begin(), speedups.end());
  if (series.empty()) {
    out << "no plottable rows in " << config.input_path << "\n";
    return kExitOk;
  }
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  for (const auto& s : series) {
    const auto path = dir / (s.name + ".dat");
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    f << bench::format_series(s);
    if (!f) {
      err << "cannot write " << path.string() << "\n";
      return kExitFailure;
    }
    out << path.string() << " (" << s.points.size() << " points)\n";
  }
  return kExitOk;
}

std::vector<std::size_t> verify_sizes(bool quick) {
  if (quick) return {0, 1, 2, 10, 1'000};
  return {0, 1, 2, 10, 1'000, 10'000};
}

std::vector<VerifyCase> default_verify_cases(const CliConfig& config) {
  std::vector<VerifyCase> cases;
  const auto exec = exec_settings(config);
  cases.push_back({"seq", 1, [](std::span<const Element> a) { return mergesort_classic(a); }});
  cases.push_back({"cutoff", 1, [exec](std::span<const Element> a) {
                     return mergesort_cutoff(a, exec.cutoff);
                   }});
  cases.push_back({"sorted", 1, [](std::span<const Element> a) { return baseline_sort(a); }});
  for (std::size_t w : {1, 2, 4, 8}) {
    cases.push_back({"mp workers=" + std::to_string(w), 1,
                     [w](std::span<const Element> a) { return pool_mergesort(a, w); }});
  }
  for (std::size_t p : {1, 2, 4, 8}) {
    for (SubsortId ss : {SubsortId::kSorted, SubsortId::kMp}) {
      bench::BenchCell cell{SortId::kMpi, ss, p, ss == SubsortId::kMp ? std::size_t{2} : 1, 0};
      cases.push_back({"mpi ranks=" + std::to_string(p) + " subsort=" +
                           std::string(bench::to_string(ss)) + " backend=" +
                           std::string(transport::backend_name(exec.backend)),
                       p, [cell, exec](std::span<const Element> a) {
                         return bench::execute_cell(cell, a, exec);
                       }});
    }
  }
  return cases;
}

int cmd_verify(const CliConfig& config, std::ostream& out, std::ostream& err) {
  return cmd_verify_with(config, default_verify_cases(config), out, err);
}

int cmd_verify_with(const CliConfig& config, const std::vector<VerifyCase>& cases,
                    std::ostream& out, std::ostream& err) {
  std::size_t passed = 0;
  for (const auto& vc : cases) {
    for (std::size_t size : verify_sizes(config.quick)) {
      const std::size_t n = bench::round_up_to_multiple(size, vc.size_multiple);
      for (std::size_t k = 0; k < kVerifySeeds; ++k) {
        const std::uint64_t seed = config.seed + k;
        const ElementArray input = generate_array(n, seed);
        std::string problem;
        try {
          const ElementArray got = vc.sort(input);
          if (got != baseline_sort(input)) problem = "output differs from the native sort";
        } catch (const std::exception& e) {
          problem = e.what();
        }
        if (!problem.empty()) {
          err << "verify FAILED: algo=" << vc.name << " size=" << n << " seed=" << seed << ": "
              << problem << "\n";
          out << "verify: " << passed << " cases passed before the first failure\n";
          return kExitFailure;
        }
        ++passed;
      }
    }
  }
  out << "verify: all " << passed << " cases passed (kernels: "
      << simd::isa_name(simd::kernels().isa) << ")\n";
  return kExitOk;
}

namespace {

void add_port(CLI::App* app, CliConfig& c) {
  app->add_option("--port", c.port, "Rendezvous port for the socket backend (0 = ephemeral)")
      ->envname("SORTBENCH_PORT");
}

void add_common(CLI::App* app, CliConfig& c, std::string& backend, long long& timeout) {
  app->add_option("--seed", c.seed, "Generator seed");
  app->add_option("--backend", backend, "Message-passing backend: in-process or socket")
      ->check(CLI::IsMember({"in-process", "socket"}));
  app->add_option("--timeout", timeout, "Per-run deadline in seconds")->envname("SORTBENCH_TIMEOUT");
  app->add_option("--cutoff", c.cutoff, "Leaf size below which mergesort stops recursing");
  add_port(app, c);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CliConfig c;
  std::string algo = "seq";
  std::string subsort = "sorted";
  std::string backend = "in-process";
  long long timeout = c.timeout.count();

  CLI::App app{"sortbench: mergesort variants and their parallel benchmarks"};
  app.name("sortbench");
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Sort one generated array and verify it");
  run->add_option("--algo", algo, "seq, cutoff, sorted, mp or mpi")
      ->check(CLI::IsMember({"seq", "cutoff", "sorted", "mp", "mpi"}));
  run->add_option("--subsort", subsort, "Local sort inside each mpi rank: sorted or mp")
      ->check(CLI::IsMember({"sorted", "mp"}));
  run->add_option("--size", c.size, "Array length");
  run->add_option("--workers", c.workers, "Pool workers for mp");
  run->add_option("--ranks", c.ranks, "Ranks for mpi (power of two)");
  add_common(run, c, backend, timeout);

  auto* bench_cmd = app.add_subcommand("bench", "Run a benchmark plan and write CSV");
  bench_cmd->add_option("--plan", c.plan_path, "Plan file")->required();
  bench_cmd->add_option("--output,-o", c.output, "CSV path (default bench.csv)");
  add_port(bench_cmd, c);

  auto* verify = app.add_subcommand("verify", "Check every algorithm against the native sort");
  verify->add_flag("--quick", c.quick, "Cap sizes at 1000");
  add_common(verify, c, backend, timeout);

  auto* report = app.add_subcommand("report", "Turn a benchmark CSV into plot data files");
  report->add_option("csv", c.input_path, "Benchmark CSV")->required();
  report->add_option("--output,-o", c.output, "Output directory (default report)");

  std::vector<std::string> args;
  for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    c.algo = bench::parse_sort_id(algo);
    c.subsort = bench::parse_subsort_id(subsort);
    c.backend = transport::parse_backend(backend);
    c.timeout = std::chrono::seconds(timeout);
    if (run->parsed()) c.command = Command::kRun;
    if (bench_cmd->parsed()) c.command = Command::kBench;
    if (verify->parsed()) c.command = Command::kVerify;
    if (report->parsed()) c.command = Command::kReport;
    validate(c);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  switch (c.command) {
    case Command::kRun:
      return cmd_run(c, out, err);
    case Command::kBench:
      return cmd_bench(c, out, err);
    case Command::kVerify:
      return cmd_verify(c, out, err);
    case Command::kReport:
      return cmd_report(c, out, err);
  }
  return kExitFailure;
}

}  // namespace sortbench::cli
