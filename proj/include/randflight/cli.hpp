// Copyright 2026 The randflight Authors.
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

// Command execution layer of the CLI.  Flag parsing lives in the tool's
// main(); this header consumes a validated RunConfig and emits CSV, so the
// whole command surface is testable in-process against string streams.
//
// Exit status contract: 0 on success (including a passing `compare`),
// 1 when `compare` rejects the null hypothesis, 2 on any error (invalid
// configuration, unwritable output, domain errors from the math layers).

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "randflight/analysis.hpp"
#include "randflight/csv.hpp"
#include "randflight/densities.hpp"
#include "randflight/montecarlo.hpp"
#include "randflight/params.hpp"

namespace randflight {

enum class Command { eval, table, grid, simulate, compare, rate };
enum class ProcessKind { telegraph, planar };

// Fully resolved invocation.  Optional fields fall back to per-command
// defaults documented next to each runner; the built-in parameter defaults
// (lambda = 1, c = 2, x = 5) make the zero-argument `table` command
// reproduce the reference difference table.
struct RunConfig {
  Command command = Command::table;
  double c = 2.0;
  double lambda = 1.0;
  std::vector<double> ts;         // empty -> per-command default
  std::optional<double> x;        // default 5 where a point is optional
  std::optional<std::size_t> n;   // samples (simulate/compare), grid points
  std::uint64_t seed = 0;
  std::string output_path;        // empty -> the provided output stream
  int precision = 6;              // decimals of value columns, in [1, 17]
  ProcessKind process = ProcessKind::telegraph;
  int axis = 1;                   // marginal projection axis, 1 or 2
  double alpha = 1e-3;            // compare significance level
};

namespace detail {

inline const std::vector<double>& reference_table_times() {
  static const std::vector<double> times = {5,   10,  20,  50,  100, 150,
                                            200, 300, 400, 500, 1000};
  return times;
}

inline const std::vector<double>& reference_rate_times() {
  static const std::vector<double> times = {50, 100, 200, 400, 800, 1600};
  return times;
}

inline double single_time(const RunConfig& config, const char* command) {
  if (config.ts.size() != 1) {
    throw std::invalid_argument(std::string(command) +
                                ": requires exactly one --t value");
  }
  return config.ts.front();
}

inline std::size_t sample_count(const RunConfig& config,
                                std::size_t fallback) {
  const std::size_t n = config.n.value_or(fallback);
  if (n == 0) {
    throw std::invalid_argument("sample count must be positive");
  }
  return n;
}

inline void run_eval(const RunConfig& config, const FlightParams& p,
                     std::ostream& os) {
  if (!config.x.has_value()) {
    throw std::invalid_argument("eval: requires --x");
  }
  const double t = single_time(config, "eval");
  const double x = *config.x;
  const double f = telegraph_density(x, t, p).ac;
  const double g = marginal_density(x, t, p);
  const double planar = planar_density(PlanarPoint{x, 0.0}, t, p).ac;
  os << "f,g,planar_ac\n"
     << csv::cell_fixed(f, config.precision) << ','
     << csv::cell_fixed(g, config.precision) << ','
     << csv::cell_fixed(planar, config.precision) << '\n';
}

inline void run_table(const RunConfig& config, const FlightParams& p,
                      std::ostream& os) {
  const double x = config.x.value_or(5.0);
  const std::vector<double>& ts =
      config.ts.empty() ? reference_table_times() : config.ts;
  const auto rows = difference_table(x, p, ts);
  os << "t,f,g,abs_diff\n";
  for (const DiffRow& row : rows) {
    os << csv::cell_number(row.t) << ','
       << csv::cell_fixed(row.f, config.precision) << ','
       << csv::cell_fixed(row.g, config.precision) << ','
       << csv::cell_fixed(row.abs_diff, config.precision) << '\n';
  }
}

inline void run_grid(const RunConfig& config, const FlightParams& p,
                     std::ostream& os) {
  const double t = single_time(config, "grid");
  const std::size_t points = config.n.value_or(201);
  const auto rows = figure_grid(t, p, points);
  os << "x,f,g\n";
  for (const GridRow& row : rows) {
    os << csv::cell_number(row.x) << ','
       << csv::cell_fixed(row.f, config.precision) << ','
       << csv::cell_fixed(row.g, config.precision) << '\n';
  }
}

inline SampleBatch simulate(const RunConfig& config, const FlightParams& p,
                            double t, std::size_t n) {
  return config.process == ProcessKind::telegraph
             ? simulate_telegraph(p, t, n, config.seed)
             : simulate_planar(p, t, n, config.seed);
}

inline void run_simulate(const RunConfig& config, const FlightParams& p,
                         std::ostream& os) {
  const double t = single_time(config, "simulate");
  const std::size_t n = sample_count(config, 100000);
  write_samples_csv(simulate(config, p, t, n), os);
}

inline int run_compare(const RunConfig& config, const FlightParams& p,
                       std::ostream& os) {
  if (!(config.alpha > 0.0 && config.alpha < 1.0)) {
    throw std::invalid_argument("compare: --alpha must lie in (0, 1)");
  }
  const double t = single_time(config, "compare");
  const std::size_t n = sample_count(config, 100000);
  SampleBatch batch = simulate(config, p, t, n);
  LawKind law = LawKind::telegraph;
  if (config.process == ProcessKind::planar) {
    batch = project_marginal(batch, config.axis);
    law = LawKind::marginal;
  }
  const double ks = ks_distance(batch, law, t, p);
  // Asymptotic Kolmogorov critical value at level alpha.
  const double threshold = std::sqrt(-std::log(0.5 * config.alpha) / 2.0) /
                           std::sqrt(static_cast<double>(n));
  const bool pass = ks < threshold;
  os << "ks,threshold,pass\n"
     << csv::cell_number(ks) << ',' << csv::cell_number(threshold) << ','
     << (pass ? "pass" : "fail") << '\n';
  return pass ? 0 : 1;
}

inline void run_rate(const RunConfig& config, const FlightParams& p,
                     std::ostream& os) {
  const double x = config.x.value_or(5.0);
  const std::vector<double>& ts =
      config.ts.empty() ? reference_rate_times() : config.ts;
  const RateFit fit = fit_convergence_rate(x, p, ts);
  os << "slope,intercept,r_squared\n"
     << csv::cell_fixed(fit.slope, config.precision) << ','
     << csv::cell_fixed(fit.intercept, config.precision) << ','
     << csv::cell_fixed(fit.r_squared, config.precision) << '\n';
}

inline const char* command_name(Command command) {
  switch (command) {
    case Command::eval: return "eval";
    case Command::table: return "table";
    case Command::grid: return "grid";
    case Command::simulate: return "simulate";
    case Command::compare: return "compare";
    case Command::rate: return "rate";
  }
  return "unknown";
}

}  // namespace detail

// Executes one command.  CSV goes to `out` unless config.output_path is
// set, in which case it goes to that file.  Diagnostics go to `err`.
inline int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.precision < 1 || config.precision > 17) {
      throw std::invalid_argument("--precision must lie in [1, 17]");
    }
    if (config.axis != 1 && config.axis != 2) {
      throw std::invalid_argument("--axis must be 1 or 2");
    }
    const FlightParams p(config.c, config.lambda);

    std::ofstream file;
    if (!config.output_path.empty()) {
      file.open(config.output_path);
      if (!file) {
        throw std::runtime_error("cannot open output file: " +
                                 config.output_path);
      }
    }
    std::ostream& os = config.output_path.empty() ? out : file;

    switch (config.command) {
      case Command::eval:
        detail::run_eval(config, p, os);
        break;
      case Command::table:
        detail::run_table(config, p, os);
        break;
      case Command::grid:
        detail::run_grid(config, p, os);
        break;
      case Command::simulate:
        detail::run_simulate(config, p, os);
        break;
      case Command::compare:
        return detail::run_compare(config, p, os);
      case Command::rate:
        detail::run_rate(config, p, os);
        break;
    }
    return 0;
  } catch (const std::exception& e) {
    err << "error (" << detail::command_name(config.command) << "): "
        << e.what() << '\n';
    return 2;
  }
}

}  // namespace randflight
