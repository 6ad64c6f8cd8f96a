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

#include "alpn/cli.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "CLI11.hpp"
#include "alpn/generator.hpp"
#include "alpn/io.hpp"
#include "alpn/solver.hpp"

namespace alpn::cli {
namespace {

std::size_t parse_count(std::string_view text, std::string_view what) {
  std::size_t value = 0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value == 0) {
    throw std::invalid_argument("bad " + std::string(what) + " '" +
                                std::string(text) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

// Flags shared by solve and bench.
struct ParamFlags {
  double tol = 1e-4;
  std::size_t max_iter = 0;
  double gamma0 = 0.0;
  CLI::Option* gamma0_opt = nullptr;

  void attach(CLI::App& app) {
    app.add_option("--tol", tol, "Primal stopping tolerance")
        ->check(CLI::PositiveNumber);
    app.add_option("--max-iter", max_iter,
                   "Outer iteration cap (default 10 n + 1000)");
    gamma0_opt = app.add_option("--gamma0", gamma0,
                                "Initial upper bound on the objective");
  }

  SolverParams params() const {
    SolverParams p;
    p.tol_feas = tol;
    p.max_outer_iterations = max_iter;
    if (gamma0_opt != nullptr && gamma0_opt->count() > 0) p.gamma0 = gamma0;
    return p;
  }
};

void write_or_print(const std::string& text, const std::string& path,
                    std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot write " + path);
  file << text;
}

int cmd_solve(const std::string& input, const ParamFlags& flags,
              const std::string& out_path, const std::string& log_path,
              const std::string& format, std::ostream& out, std::ostream& err) {
  const io::ReportFormat fmt = io::report_format_from_string(format);
  const SocpInstance instance = io::read_instance(input);
  const SolveReport report = solve(instance, flags.params());
  write_or_print(io::report_to_string(report, fmt), out_path, out);
  if (!log_path.empty()) {
    write_or_print(io::report_to_string(report, io::ReportFormat::kCsvLog),
                   log_path, out);
  }
  err << "status " << to_string(report.status) << ", objective "
      << io::format_double(report.objective) << ", " << report.iterations
      << " iterations";
  if (!report.message.empty()) err << " (" << report.message << ")";
  err << '\n';
  return exit_code(report.status);
}

int cmd_generate(std::size_t m, const std::string& dims_spec,
                 std::uint64_t seed, const std::string& out_path,
                 std::ostream& out) {
  const GeneratedInstance g = generate(m, parse_dims(dims_spec), seed);
  write_or_print(io::instance_to_string(
                     g.instance, io::Provenance{g.seed, g.x_tilde, g.s_tilde}),
                 out_path, out);
  return kExitOk;
}

std::string format_fixed(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, value);
  return buf;
}

}  // namespace

int exit_code(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal:
      return kExitOk;
    case SolveStatus::kRelaxationUnbounded:
    case SolveStatus::kDualUnbounded:
      return kExitUnbounded;
    case SolveStatus::kIterationLimit:
      return kExitIterationLimit;
    case SolveStatus::kNumericalFailure:
      return kExitNumericalFailure;
  }
  return kExitNumericalFailure;
}

std::vector<std::size_t> parse_dims(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty dims specification");
  std::vector<std::size_t> dims;
  for (std::string_view group : split(text, ',')) {
    const std::size_t x = group.find('x');
    if (x == std::string_view::npos) {
      throw std::invalid_argument("dims group '" + std::string(group) +
                                  "' is not SIZExCOUNT");
    }
    const std::size_t size = parse_count(group.substr(0, x), "block size");
    const std::size_t reps = parse_count(group.substr(x + 1), "block count");
    dims.insert(dims.end(), reps, size);
  }
  return dims;
}

std::vector<BenchCell> parse_grid(std::string_view text) {
  std::vector<BenchCell> grid;
  for (std::string_view cell : split(text, ';')) {
    if (cell.empty()) continue;
    const std::size_t colon = cell.find(':');
    if (colon == std::string_view::npos) {
      throw std::invalid_argument("grid cell '" + std::string(cell) +
                                  "' is not M:DIMS");
    }
    BenchCell c;
    c.m = parse_count(cell.substr(0, colon), "row count");
    c.dims_spec = std::string(cell.substr(colon + 1));
    c.dims = parse_dims(c.dims_spec);
    grid.push_back(std::move(c));
  }
  if (grid.empty()) throw std::invalid_argument("empty bench grid");
  return grid;
}

std::size_t bench_threads() {
  if (const char* env = std::getenv("ALPN_THREADS"); env != nullptr) {
    try {
      return parse_count(env, "ALPN_THREADS");
    } catch (const std::invalid_argument&) {
      // Fall through to the hardware default.
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<BenchRow> run_bench(const std::vector<BenchCell>& grid,
                                std::size_t reps, std::uint64_t seed_base,
                                const SolverParams& params,
                                std::size_t threads) {
  struct Outcome {
    SolveStatus status = SolveStatus::kNumericalFailure;
    std::string error;
    double time = 0.0;
    std::size_t iterations = 0;
    std::size_t initial = 0;
    std::size_t final = 0;
  };
  const std::size_t jobs = grid.size() * reps;
  std::vector<Outcome> outcomes(jobs);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t j = next++; j < jobs; j = next++) {
      const BenchCell& cell = grid[j / reps];
      Outcome& o = outcomes[j];
      try {
        const GeneratedInstance g =
            generate(cell.m, cell.dims, seed_base + j % reps);
        const SolveReport r = solve(g.instance, params);
        o = {r.status, {}, r.wall_time_seconds, r.iterations,
             r.initial_hyperplanes, r.final_hyperplanes};
      } catch (const std::exception& e) {
        o.error = e.what();
      }
    }
  };
  const std::size_t workers = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(jobs, 1));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  std::vector<BenchRow> rows;
  for (std::size_t c = 0; c < grid.size(); ++c) {
    BenchRow row;
    row.cell = grid[c];
    row.n = 0;
    for (std::size_t d : grid[c].dims) row.n += d;
    row.reps = reps;
    for (std::size_t r = 0; r < reps; ++r) {
      const Outcome& o = outcomes[c * reps + r];
      row.mean_time += o.time;
      row.mean_iterations += static_cast<double>(o.iterations);
      row.mean_initial_hyperplanes += static_cast<double>(o.initial);
      row.mean_final_hyperplanes += static_cast<double>(o.final);
      if (o.error.empty() && o.status == SolveStatus::kOptimal) {
        ++row.optimal;
      } else if (row.failure.empty()) {
        row.failure = "seed " + std::to_string(seed_base + r) + ": " +
                      (o.error.empty() ? std::string(to_string(o.status))
                                       : "error " + o.error);
      }
    }
    if (reps > 0) {
      const double inv = 1.0 / static_cast<double>(reps);
      row.mean_time *= inv;
      row.mean_iterations *= inv;
      row.mean_initial_hyperplanes *= inv;
      row.mean_final_hyperplanes *= inv;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string format_bench(const std::vector<BenchRow>& rows) {
  std::string out(kBenchHeader);
  out += '\n';
  for (const BenchRow& r : rows) {
    std::string failure = r.failure;
    std::replace(failure.begin(), failure.end(), ',', ';');
    out += std::to_string(r.cell.m) + ',' + std::to_string(r.n) + ',' +
           r.cell.dims_spec + ',' + std::to_string(r.reps) + ',' +
           std::to_string(r.optimal) + ',' + format_fixed(r.mean_time, 4) +
           ',' + format_fixed(r.mean_iterations, 2) + ',' +
           format_fixed(r.mean_initial_hyperplanes, 2) + ',' +
           format_fixed(r.mean_final_hyperplanes, 2) + ',' + failure + '\n';
  }
  return out;
}

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Adaptive LP-Newton solver for second-order cone programs",
               "alpn"};
  app.require_subcommand(1);

  CLI::App* solve_cmd = app.add_subcommand("solve", "Solve an instance file");
  std::string input;
  std::string solve_out;
  std::string log_path;
  std::string format = "structured";
  ParamFlags solve_flags;
  solve_cmd->add_option("input", input, "Instance file (alpn-socp/1)")
      ->required();
  solve_cmd->add_option("--out", solve_out, "Report path (default stdout)");
  solve_cmd->add_option("--log", log_path, "Also write the CSV iteration log");
  solve_cmd->add_option("--format", format, "structured or csv-log");
  solve_flags.attach(*solve_cmd);

  CLI::App* gen_cmd = app.add_subcommand("generate", "Generate a random instance");
  std::size_t gen_m = 0;
  std::string gen_dims;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  gen_cmd->add_option("--m", gen_m, "Number of equality rows")
      ->required()
      ->check(CLI::PositiveNumber);
  gen_cmd->add_option("--dims", gen_dims, "Block sizes, SIZExCOUNT[,...]")
      ->required();
  gen_cmd->add_option("--seed", gen_seed, "Generator seed")->required();
  gen_cmd->add_option("--out", gen_out, "Instance path (default stdout)");

  CLI::App* bench_cmd = app.add_subcommand("bench", "Run a benchmark grid");
  std::string grid_spec;
  std::size_t reps = 10;
  std::uint64_t seed_base = 1;
  std::string bench_out;
  ParamFlags bench_flags;
  bench_cmd->add_option("--grid", grid_spec, "Cells M:DIMS[;M:DIMS...]")
      ->required();
  bench_cmd->add_option("--reps", reps, "Solves per cell")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--seed", seed_base, "First seed of every cell");
  bench_cmd->add_option("--out", bench_out, "Summary path (default stdout)");
  bench_flags.attach(*bench_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (solve_cmd->parsed()) {
      return cmd_solve(input, solve_flags, solve_out, log_path, format, out,
                       err);
    }
    if (gen_cmd->parsed()) {
      return cmd_generate(gen_m, gen_dims, gen_seed, gen_out, out);
    }
    const std::vector<BenchCell> grid = parse_grid(grid_spec);
    const std::vector<BenchRow> rows =
        run_bench(grid, reps, seed_base, bench_flags.params(), bench_threads());
    write_or_print(format_bench(rows), bench_out, out);
    return kExitOk;
  } catch (const std::exception& e) {
    err << "alpn: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace alpn::cli
