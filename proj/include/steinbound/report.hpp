// Copyright 2026 The steinbound Authors.
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

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

// Scenario configuration, execution and serialization behind the CLI.
namespace steinbound::report {

enum class Scenario { SteinCheck, ChaosCompare, ExpFunCompare, BoundOnly };
enum class Format { Csv, Json };
enum class TailChoice { Exact, Markov, Major, ExpFun, Unit, Empirical };
enum class SlackChoice { Se, Dkw };

struct Grid {
  double min = -6.0;
  double max = 6.0;
  std::size_t count = 49;
};

struct RunConfig {
  Scenario scenario = Scenario::SteinCheck;
  std::uint64_t seed = 42;
  std::size_t samples = 100'000;
  Grid z_grid;
  Grid x_grid{-12.0, 12.0, 241};  // stein-check evaluation points
  unsigned workers = 0;           // 0: one per hardware thread

  // chaos
  int q = 2;
  std::vector<double> alphas{1.0};
  std::optional<double> c_q;

  // exponential functional
  double a = 0.0;
  double t = 0.1;
  std::optional<std::size_t> n_steps;
  std::string scheme = "trapezoid";

  std::optional<TailChoice> tail;
  double markov_p = 6.0;
  std::optional<double> markov_moment;
  std::optional<double> mean_abs;       // bound-only override
  std::optional<double> discrepancy;    // bound-only override

  double slack_k = 3.0;
  SlackChoice slack_mode = SlackChoice::Se;
  double dkw_delta = 0.01;

  std::string output_path = "-";  // "-" writes to stdout
  Format format = Format::Csv;
};

/// Invalid flag, key or value. The message names the offender.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// --help / --version; what() carries the text to print.
class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses `prog <subcommand> [flags]`. A `--config file.json` document
/// supplies defaults whose keys mirror the flag names; flags win.
RunConfig parse_config(int argc, const char* const* argv);
RunConfig parse_config(const std::vector<std::string>& args);

/// Throws ConfigError if the configuration is inconsistent.
void validate(const RunConfig& config);

std::string scenario_name(Scenario s);
std::string tail_name(TailChoice t);

using Cell = std::variant<double, std::int64_t, bool, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct ScenarioOutput {
  Table table;
  std::vector<std::pair<std::string, Cell>> summary;  // emitted in this order
  std::vector<std::string> notes;
  std::size_t violations = 0;
  int exit_status = 0;  // 0 ok, 2 certification violation
};

/// Runs the scenario in memory. Results are a pure function of the config;
/// the worker count only affects speed.
ScenarioOutput execute(const RunConfig& config);

/// Shortest round-trip decimal form, locale independent ("inf", "-inf",
/// "nan" for non-finite values).
std::string format_number(double v);

std::string to_csv(const Table& table);
std::string to_json(const RunConfig& config, const ScenarioOutput& out);
std::string render(const RunConfig& config, const ScenarioOutput& out);

struct RunResult {
  int exit_status = 0;
  std::size_t rows = 0;
  std::size_t violations = 0;
  std::vector<std::string> notes;
};

/// execute + render + write to config.output_path. Throws std::runtime_error
/// naming the path on I/O failure.
RunResult run(const RunConfig& config);

}  // namespace steinbound::report
