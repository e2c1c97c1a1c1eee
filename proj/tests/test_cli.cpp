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

// CLI tests.  The in-process cases drive randflight::run directly against
// string streams; the end-to-end cases execute the installed binary (path
// injected as CLI_BINARY_PATH at compile time) to cover flag parsing and
// the config-file preprocessor.

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "randflight/cli.hpp"

namespace {

using randflight::Command;
using randflight::ProcessKind;
using randflight::RunConfig;

struct Invocation {
  int exit_code;
  std::string output;
  std::string diagnostics;
};

Invocation run_config(const RunConfig& config) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = randflight::run(config, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

struct BinaryResult {
  int exit_code;
  std::string output;
};

// Runs the real binary through the shell, capturing stdout; stderr is
// dropped (diagnostics are asserted through the in-process interface).
BinaryResult run_binary(const std::string& arguments) {
  const std::string command =
      std::string(CLI_BINARY_PATH) + " " + arguments + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string output;
  char buffer[4096];
  std::size_t got = 0;
  while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0) {
    output.append(buffer, got);
  }
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), output};
}

}  // namespace

TEST_CASE("table command reproduces the reference difference table", "[cli]") {
  RunConfig config;
  config.command = Command::table;
  const auto result = run_config(config);
  REQUIRE(result.exit_code == 0);
  CHECK(result.diagnostics.empty());

  const auto lines = lines_of(result.output);
  REQUIRE(lines.size() == 12);
  CHECK(lines[0] == "t,f,g,abs_diff");
  CHECK(lines[1] == "5,0.051002,0.050719,0.000283");
  CHECK(lines[11].substr(0, 5) == "1000,");

  // Identical configuration produces byte-identical output.
  CHECK(run_config(config).output == result.output);
}

TEST_CASE("eval command prints the three densities at a point", "[cli]") {
  RunConfig config;
  config.command = Command::eval;
  config.x = 0.0;
  config.ts = {1.0};
  const auto result = run_config(config);
  REQUIRE(result.exit_code == 0);
  const auto lines = lines_of(result.output);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "f,g,planar_ac");
  // Planar density at the origin is lambda/(2 pi c^2 t) = 1/(8 pi).
  CHECK(lines[1].substr(lines[1].rfind(',') + 1) == "0.039789");

  // The printed cells are the correctly rounded library values.
  const randflight::FlightParams p(2.0, 1.0);
  const std::string expected =
      randflight::csv::cell_fixed(randflight::telegraph_density(0.0, 1.0, p).ac, 6) +
      ',' +
      randflight::csv::cell_fixed(randflight::marginal_density(0.0, 1.0, p), 6) +
      ",0.039789";
  CHECK(lines[1] == expected);
}

TEST_CASE("precision flag widens value cells without touching coordinates",
          "[cli]") {
  RunConfig config;
  config.command = Command::table;
  config.ts = {5.0};
  config.precision = 9;
  const auto result = run_config(config);
  REQUIRE(result.exit_code == 0);
  const auto lines = lines_of(result.output);
  REQUIRE(lines.size() == 2);
  CHECK(lines[1] == "5,0.051001716,0.050719081,0.000282635");
}

TEST_CASE("rate command prints the frozen fit", "[cli]") {
  RunConfig config;
  config.command = Command::rate;
  const auto result = run_config(config);
  REQUIRE(result.exit_code == 0);
  const auto lines = lines_of(result.output);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "slope,intercept,r_squared");
  CHECK(lines[1] == "-1.452333,-3.327502,0.999757");
}

TEST_CASE("grid command emits a symmetric plotting grid", "[cli]") {
  RunConfig config;
  config.command = Command::grid;
  config.ts = {2.0};
  config.n = 5;
  const auto result = run_config(config);
  REQUIRE(result.exit_code == 0);
  const auto lines = lines_of(result.output);
  REQUIRE(lines.size() == 6);
  CHECK(lines[0] == "x,f,g");
  CHECK(lines[1].substr(0, 7) == "-3.996,");
  CHECK(lines[3].substr(0, 2) == "0,");
  // Mirror rows carry identical density cells.
  CHECK(lines[1].substr(7) == lines[5].substr(6));
}

TEST_CASE("simulate command is seed-deterministic", "[cli]") {
  RunConfig config;
  config.command = Command::simulate;
  config.ts = {2.0};
  config.n = 200;
  config.seed = 11;
  const auto first = run_config(config);
  REQUIRE(first.exit_code == 0);
  const auto lines = lines_of(first.output);
  REQUIRE(lines.size() == 201);
  CHECK(lines[0] == "x");
  CHECK(run_config(config).output == first.output);

  config.seed = 12;
  CHECK(run_config(config).output != first.output);

  config.process = ProcessKind::planar;
  const auto planar = run_config(config);
  REQUIRE(planar.exit_code == 0);
  CHECK(lines_of(planar.output)[0] == "x1,x2");
}

TEST_CASE("compare command reports pass and fail states", "[cli]") {
  RunConfig config;
  config.command = Command::compare;
  config.ts = {5.0};
  config.n = 50000;
  config.seed = 4;
  const auto pass = run_config(config);
  CHECK(pass.exit_code == 0);
  const auto pass_lines = lines_of(pass.output);
  REQUIRE(pass_lines.size() == 2);
  CHECK(pass_lines[0] == "ks,threshold,pass");
  CHECK(pass_lines[1].substr(pass_lines[1].rfind(',') + 1) == "pass");

  // An extreme significance level shrinks the threshold below typical
  // sampling noise, so the same correct sampler reports a failure.
  config.n = 10000;
  config.seed = 0;
  config.alpha = 0.999;
  const auto fail = run_config(config);
  CHECK(fail.exit_code == 1);
  const auto fail_lines = lines_of(fail.output);
  REQUIRE(fail_lines.size() == 2);
  CHECK(fail_lines[1].substr(fail_lines[1].rfind(',') + 1) == "fail");

  // The planar path projects, then compares against the marginal law.
  RunConfig planar;
  planar.command = Command::compare;
  planar.ts = {5.0};
  planar.n = 50000;
  planar.seed = 4;
  planar.process = ProcessKind::planar;
  planar.axis = 2;
  const auto projected = run_config(planar);
  CHECK(projected.exit_code == 0);
  CHECK(lines_of(projected.output)[1].substr(
            lines_of(projected.output)[1].rfind(',') + 1) == "pass");
}

TEST_CASE("output path redirects the CSV", "[cli]") {
  const std::string path = "cli_roundtrip_tmp.csv";
  RunConfig config;
  config.command = Command::table;
  config.output_path = path;
  const auto redirected = run_config(config);
  REQUIRE(redirected.exit_code == 0);
  CHECK(redirected.output.empty());

  std::ifstream in(path);
  REQUIRE(in.good());
  std::stringstream content;
  content << in.rdbuf();
  in.close();
  std::remove(path.c_str());

  config.output_path.clear();
  CHECK(content.str() == run_config(config).output);
}

TEST_CASE("invalid configurations exit with status 2 and a diagnostic",
          "[cli]") {
  // eval without a point.
  RunConfig no_x;
  no_x.command = Command::eval;
  no_x.ts = {1.0};
  auto result = run_config(no_x);
  CHECK(result.exit_code == 2);
  CHECK(result.diagnostics.find("eval") != std::string::npos);
  CHECK(result.output.empty());

  // eval needs exactly one time.
  RunConfig two_ts;
  two_ts.command = Command::eval;
  two_ts.x = 0.0;
  two_ts.ts = {1.0, 2.0};
  CHECK(run_config(two_ts).exit_code == 2);

  // Point on the boundary surfaces the math layer's domain error.
  RunConfig boundary;
  boundary.command = Command::eval;
  boundary.x = 12.0;
  boundary.ts = {1.0};
  result = run_config(boundary);
  CHECK(result.exit_code == 2);
  CHECK(result.diagnostics.find("support") != std::string::npos);

  // Out-of-range precision, axis, alpha, and parameters.
  RunConfig bad_precision;
  bad_precision.command = Command::table;
  bad_precision.precision = 0;
  CHECK(run_config(bad_precision).exit_code == 2);
  bad_precision.precision = 18;
  CHECK(run_config(bad_precision).exit_code == 2);

  RunConfig bad_axis;
  bad_axis.command = Command::compare;
  bad_axis.ts = {2.0};
  bad_axis.axis = 3;
  CHECK(run_config(bad_axis).exit_code == 2);

  RunConfig bad_alpha;
  bad_alpha.command = Command::compare;
  bad_alpha.ts = {2.0};
  bad_alpha.alpha = 0.0;
  CHECK(run_config(bad_alpha).exit_code == 2);

  RunConfig bad_params;
  bad_params.command = Command::table;
  bad_params.lambda = -1.0;
  CHECK(run_config(bad_params).exit_code == 2);

  RunConfig bad_path;
  bad_path.command = Command::table;
  bad_path.output_path = "/nonexistent-directory/output.csv";
  CHECK(run_config(bad_path).exit_code == 2);

  RunConfig zero_n;
  zero_n.command = Command::simulate;
  zero_n.ts = {1.0};
  zero_n.n = 0;
  CHECK(run_config(zero_n).exit_code == 2);
}

TEST_CASE("binary end to end: table, determinism, and exit codes",
          "[cli_binary]") {
  const auto table = run_binary("table");
  CHECK(table.exit_code == 0);
  const auto lines = lines_of(table.output);
  REQUIRE(lines.size() == 12);
  CHECK(lines[0] == "t,f,g,abs_diff");
  CHECK(lines[1] == "5,0.051002,0.050719,0.000283");

  const auto once = run_binary("simulate --t 2 --n 50 --seed 11");
  const auto twice = run_binary("simulate --t 2 --n 50 --seed 11");
  CHECK(once.exit_code == 0);
  CHECK(once.output == twice.output);
  CHECK_FALSE(once.output.empty());

  CHECK(run_binary("eval --x 12 --t 1").exit_code == 2);
  CHECK(run_binary("eval --x 0 --t 1").output.find("0.039789") !=
        std::string::npos);
  CHECK(run_binary("nonsense-subcommand").exit_code == 2);
  CHECK(run_binary("table --no-such-flag").exit_code == 2);
  CHECK(run_binary("--help").exit_code == 0);
}

TEST_CASE("binary end to end: config files set defaults, flags override",
          "[cli_binary]") {
  const std::string path = "cli_config_tmp.cfg";
  {
    std::ofstream config(path);
    REQUIRE(config.good());
    config << "# reproduction defaults\n"
           << "x = 5\n"
           << "ts = 5,10\n"
           << "precision = 9\n";
  }

  const auto defaults = run_binary("table --config " + path);
  CHECK(defaults.exit_code == 0);
  auto lines = lines_of(defaults.output);
  REQUIRE(lines.size() == 3);
  CHECK(lines[1] == "5,0.051001716,0.050719081,0.000282635");

  // Explicit flags beat config entries, including across the --t/--ts
  // alias pair.
  const auto overridden =
      run_binary("table --config " + path + " --t 20 --precision 6");
  CHECK(overridden.exit_code == 0);
  lines = lines_of(overridden.output);
  REQUIRE(lines.size() == 2);
  CHECK(lines[1] == "20,0.038183,0.038526,0.000343");

  std::remove(path.c_str());
  CHECK(run_binary("table --config no-such-file.cfg").exit_code == 2);
}
