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

// Command-line front end.  Subcommands: eval, table, grid, simulate,
// compare, rate.  Parsing happens here; execution lives in
// randflight/cli.hpp so tests can drive the same code paths in-process.
//
// `--config <path>` reads key=value lines (one option per line, # starts a
// comment) and treats them as defaults: a key is ignored whenever the same
// option was passed explicitly, so flags always win.

#include <cstddef>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "randflight/cli.hpp"

namespace {

std::string trim(const std::string& text) {
  const auto begin = text.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = text.find_last_not_of(" \t\r");
  return text.substr(begin, end - begin + 1);
}

// `--t` and `--ts` name the same option; config keys and explicit flags
// must collide across the alias pair.
std::string canonical_key(const std::string& key) {
  return key == "t" ? "ts" : key;
}

// Parses one config file into injected flags, skipping keys the user
// already passed explicitly.
std::vector<std::string> load_config_flags(
    const std::string& path, const std::set<std::string>& explicit_keys) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot read config file: " + path);
  }
  std::vector<std::string> flags;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const std::string entry = trim(line);
    if (entry.empty() || entry[0] == '#') continue;
    const auto equals = entry.find('=');
    if (equals == std::string::npos) {
      throw std::runtime_error(path + ":" + std::to_string(line_number) +
                               ": expected key=value");
    }
    const std::string key = trim(entry.substr(0, equals));
    const std::string value = trim(entry.substr(equals + 1));
    if (key.empty()) {
      throw std::runtime_error(path + ":" + std::to_string(line_number) +
                               ": empty key");
    }
    if (explicit_keys.count(canonical_key(key)) != 0) continue;
    flags.push_back("--" + key + "=" + value);
  }
  return flags;
}

// Resolves `--config` before CLI11 sees the arguments: config-derived
// flags are inserted right after the subcommand token, and only for
// options absent from the explicit flag list.
std::vector<std::string> expand_arguments(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);

  std::set<std::string> explicit_keys;
  for (const std::string& arg : args) {
    if (arg.rfind("--", 0) != 0 || arg == "--config" ||
        arg.rfind("--config=", 0) == 0) {
      continue;
    }
    const auto equals = arg.find('=');
    const std::string name =
        equals == std::string::npos ? arg.substr(2) : arg.substr(2, equals - 2);
    explicit_keys.insert(canonical_key(name));
  }

  std::vector<std::string> config_flags;
  std::vector<std::string> kept;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& arg = args[i];
    if (arg == "--config") {
      if (i + 1 >= args.size()) {
        throw std::runtime_error("--config requires a path");
      }
      const auto flags = load_config_flags(args[++i], explicit_keys);
      config_flags.insert(config_flags.end(), flags.begin(), flags.end());
    } else if (arg.rfind("--config=", 0) == 0) {
      const auto flags =
          load_config_flags(arg.substr(9), explicit_keys);
      config_flags.insert(config_flags.end(), flags.begin(), flags.end());
    } else {
      kept.push_back(arg);
    }
  }
  if (config_flags.empty()) return kept;

  std::vector<std::string> result;
  std::size_t i = 0;
  for (; i < kept.size(); ++i) {
    result.push_back(kept[i]);
    if (!kept[i].empty() && kept[i][0] != '-') {
      ++i;
      break;
    }
  }
  result.insert(result.end(), config_flags.begin(), config_flags.end());
  result.insert(result.end(), kept.begin() + static_cast<std::ptrdiff_t>(i),
                kept.end());
  return result;
}

// Shared option builders.  Scalar options take the last occurrence so a
// repeated flag is a harmless override rather than an error.

void add_shared(CLI::App* sub, randflight::RunConfig* config) {
  sub->add_option("--lambda", config->lambda,
                  "Poisson switching rate (default 1)")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  sub->add_option("--c", config->c, "motion speed (default 2)")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  sub->add_option("--out", config->output_path,
                  "write CSV to this file instead of standard output")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  static std::string config_path_doc;
  sub->add_option("--config", config_path_doc,
                  "key=value defaults, one per line; explicit flags win");
}

void add_times(CLI::App* sub, randflight::RunConfig* config,
               const std::string& doc) {
  sub->add_option("--t,--ts", config->ts, doc)->delimiter(',');
}

void add_precision(CLI::App* sub, randflight::RunConfig* config) {
  sub->add_option("--precision", config->precision,
                  "decimals in value columns, 1 to 17 (default 6)")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
}

void add_sampling(CLI::App* sub, randflight::RunConfig* config,
                  const std::map<std::string, randflight::ProcessKind>&
                      process_map) {
  sub->add_option("--n", config->n, "sample count (default 100000)")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  sub->add_option("--seed", config->seed, "random seed (default 0)")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  sub->add_option("--process", config->process,
                  "telegraph or planar (default telegraph)")
      ->transform(CLI::CheckedTransformer(process_map, CLI::ignore_case))
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args;
  try {
    args = expand_arguments(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  CLI::App app{
      "Exact densities, simulation, and statistical checks for the "
      "one-dimensional telegraph process and the planar random flight"};
  app.require_subcommand(1);

  randflight::RunConfig config;
  const std::map<std::string, randflight::ProcessKind> process_map{
      {"telegraph", randflight::ProcessKind::telegraph},
      {"planar", randflight::ProcessKind::planar}};

  CLI::App* eval = app.add_subcommand(
      "eval", "evaluate f, g, and the planar AC density at one point");
  eval->callback([&config] { config.command = randflight::Command::eval; });
  add_shared(eval, &config);
  add_times(eval, &config, "evaluation time (exactly one)");
  add_precision(eval, &config);
  eval->add_option("--x", config.x, "evaluation point (required)")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  CLI::App* table = app.add_subcommand(
      "table", "difference table of f and g across times (CSV: t,f,g,abs_diff)");
  table->callback([&config] { config.command = randflight::Command::table; });
  add_shared(table, &config);
  add_times(table, &config,
            "comma-separated times (default: the reference table's list)");
  add_precision(table, &config);
  table->add_option("--x", config.x, "evaluation point (default 5)")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  CLI::App* grid = app.add_subcommand(
      "grid", "density grid at one time for plotting (CSV: x,f,g)");
  grid->callback([&config] { config.command = randflight::Command::grid; });
  add_shared(grid, &config);
  add_times(grid, &config, "grid time (exactly one)");
  add_precision(grid, &config);
  grid->add_option("--n", config.n, "grid point count (default 201)")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  CLI::App* simulate = app.add_subcommand(
      "simulate", "draw terminal positions (CSV: x, or x1,x2 for planar)");
  simulate->callback(
      [&config] { config.command = randflight::Command::simulate; });
  add_shared(simulate, &config);
  add_times(simulate, &config, "time horizon (exactly one)");
  add_sampling(simulate, &config, process_map);

  CLI::App* compare = app.add_subcommand(
      "compare",
      "simulate, then KS-test the samples against the closed-form CDF");
  compare->callback(
      [&config] { config.command = randflight::Command::compare; });
  add_shared(compare, &config);
  add_times(compare, &config, "time horizon (exactly one)");
  add_sampling(compare, &config, process_map);
  compare->add_option("--axis", config.axis,
                      "projection axis for planar samples, 1 or 2")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  compare->add_option("--alpha", config.alpha,
                      "significance level (default 1e-3)")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  CLI::App* rate = app.add_subcommand(
      "rate", "log-log convergence fit of |f-g| (CSV: slope,intercept,r_squared)");
  rate->callback([&config] { config.command = randflight::Command::rate; });
  add_shared(rate, &config);
  add_times(rate, &config,
            "comma-separated times (default 50,100,200,400,800,1600)");
  add_precision(rate, &config);
  rate->add_option("--x", config.x, "evaluation point (default 5)")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  std::vector<const char*> pointers;
  pointers.reserve(args.size() + 1);
  pointers.push_back(argv[0]);
  for (const std::string& arg : args) pointers.push_back(arg.c_str());
  try {
    app.parse(static_cast<int>(pointers.size()), pointers.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  return randflight::run(config, std::cout, std::cerr);
}
