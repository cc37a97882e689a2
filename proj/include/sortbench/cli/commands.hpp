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

// The sortbench command line: run, bench, verify, report.
//
// Exit codes: 0 success, 1 a run or verification failed, 2 usage error.

#ifndef SORTBENCH_CLI_COMMANDS_HPP
#define SORTBENCH_CLI_COMMANDS_HPP

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

namespace sortbench::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

class UsageError : public Error {
 public:
  using Error::Error;
};

enum class Command { kRun, kBench, kVerify, kReport };

struct CliConfig {
  Command command = Command::kRun;
  bench::SortId algo = bench::SortId::kSeq;
  bench::SubsortId subsort = bench::SubsortId::kSorted;
  std::size_t size = 10'000;
  std::size_t workers = 1;
  std::size_t ranks = 1;
  std::uint64_t seed = 42;
  std::size_t repetitions = 3;
  std::size_t cutoff = CutoffThreshold::kDefault;
  transport::Backend backend = transport::Backend::kInProcess;
  std::chrono::seconds timeout{30};
  std::uint16_t port = 0;
  std::string output;      // bench: CSV path; report: output directory
  std::string plan_path;   // bench
  std::string input_path;  // report: CSV to read
  bool quick = false;      // verify
};

/// Throws UsageError for flag combinations no command accepts.
void validate(const CliConfig& config);

int cmd_run(const CliConfig& config, std::ostream& out, std::ostream& err);
int cmd_bench(const CliConfig& config, std::ostream& out, std::ostream& err);
int cmd_report(const CliConfig& config, std::ostream& out, std::ostream& err);

/// One algorithm of the verify suite. Inputs are rounded up to a multiple of
/// `size_multiple` before sorting.
struct VerifyCase {
  std::string name;
  std::size_t size_multiple = 1;
  std::function<ElementArray(std::span<const Element>)> sort;
};

std::vector<VerifyCase> default_verify_cases(const CliConfig& config);
std::vector<std::size_t> verify_sizes(bool quick);
inline constexpr std::size_t kVerifySeeds = 10;

int cmd_verify(const CliConfig& config, std::ostream& out, std::ostream& err);

/// Runs `cases` over verify_sizes x kVerifySeeds seeds starting at
/// config.seed, comparing against the native sort. Stops at the first
/// mismatch and names it.
int cmd_verify_with(const CliConfig& config, const std::vector<VerifyCase>& cases,
                    std::ostream& out, std::ostream& err);

/// Parses argv and dispatches. SORTBENCH_PORT and SORTBENCH_TIMEOUT provide
/// defaults that flags override.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sortbench::cli

#endif  // SORTBENCH_CLI_COMMANDS_HPP
