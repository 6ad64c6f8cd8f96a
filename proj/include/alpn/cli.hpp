// Copyright 2026 The ALPN Authors
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

// Command-line front end: `alpn solve`, `alpn generate`, `alpn bench`.

#ifndef ALPN_CLI_HPP_
#define ALPN_CLI_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "alpn/model.hpp"

namespace alpn::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitUnbounded = 2;
inline constexpr int kExitIterationLimit = 3;
inline constexpr int kExitNumericalFailure = 4;

int exit_code(SolveStatus status);

/// "SIZExCOUNT[,SIZExCOUNT...]", e.g. "5x4,1x2" -> (5,5,5,5,1,1).
/// Throws std::invalid_argument on bad syntax or zero sizes/counts.
std::vector<std::size_t> parse_dims(std::string_view text);

struct BenchCell {
  std::size_t m = 0;
  std::string dims_spec;
  std::vector<std::size_t> dims;
};

/// "M:DIMS[;M:DIMS...]", e.g. "10:1x20;10:2x10".
std::vector<BenchCell> parse_grid(std::string_view text);

struct BenchRow {
  BenchCell cell;
  std::size_t n = 0;
  std::size_t reps = 0;
  std::size_t optimal = 0;
  double mean_time = 0.0;
  double mean_iterations = 0.0;
  double mean_initial_hyperplanes = 0.0;
  double mean_final_hyperplanes = 0.0;
  std::string failure;  // first non-optimal outcome, empty when none
};

inline constexpr std::string_view kBenchHeader =
    "m,n,dims,reps,optimal,mean_time_s,mean_iterations,"
    "mean_initial_hyperplanes,mean_final_hyperplanes,failure";

/// Runs `reps` solves per cell on instances generated with seeds
/// seed_base, seed_base + 1, ...; cells and repetitions are spread over up to
/// `threads` workers, rows come back in grid order.
std::vector<BenchRow> run_bench(const std::vector<BenchCell>& grid,
                                std::size_t reps, std::uint64_t seed_base,
                                const SolverParams& params, std::size_t threads);

/// CSV table with kBenchHeader.
std::string format_bench(const std::vector<BenchRow>& rows);

/// Worker count from ALPN_THREADS, else the hardware concurrency (at least 1).
std::size_t bench_threads();

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

}  // namespace alpn::cli

#endif  // ALPN_CLI_HPP_
