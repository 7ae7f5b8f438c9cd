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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "steinbound/chaos.hpp"
#include "steinbound/report.hpp"

namespace steinbound::report {
namespace {

const std::map<std::string, TailChoice> kTailNames = {
    {"exact", TailChoice::Exact}, {"markov", TailChoice::Markov},
    {"major", TailChoice::Major}, {"expfun", TailChoice::ExpFun},
    {"unit", TailChoice::Unit},   {"empirical", TailChoice::Empirical},
};

const std::map<std::string, Format> kFormatNames = {{"csv", Format::Csv}, {"json", Format::Json}};
const std::map<std::string, SlackChoice> kSlackNames = {{"se", SlackChoice::Se},
                                                        {"dkw", SlackChoice::Dkw}};

struct Subcommands {
  CLI::App* stein = nullptr;
  CLI::App* chaos = nullptr;
  CLI::App* expfun = nullptr;
  CLI::App* bound = nullptr;
};

void add_common(CLI::App* sub, RunConfig& cfg, std::string& config_path) {
  sub->add_option("--seed", cfg.seed, "Run seed")->capture_default_str();
  sub->add_option("--samples", cfg.samples, "Monte Carlo sample count")->capture_default_str();
  sub->add_option("--z-min", cfg.z_grid.min, "Lower end of the z grid")->capture_default_str();
  sub->add_option("--z-max", cfg.z_grid.max, "Upper end of the z grid")->capture_default_str();
  sub->add_option("--z-count", cfg.z_grid.count, "Number of z grid points")->capture_default_str();
  sub->add_option("--output", cfg.output_path, "Output file, - for stdout")->capture_default_str();
  sub->add_option("--format", cfg.format, "Output format")
      ->transform(CLI::CheckedTransformer(kFormatNames, CLI::ignore_case))
      ->option_text("csv|json [csv]");
  sub->add_option("--config", config_path, "JSON file with defaults for any flag");
  sub->add_option("--slack-k", cfg.slack_k, "Statistical slack in binomial SEs")
      ->capture_default_str();
  sub->add_option("--slack-mode", cfg.slack_mode, "se (k SEs per point) or dkw (uniform band)")
      ->transform(CLI::CheckedTransformer(kSlackNames, CLI::ignore_case))
      ->option_text("se|dkw [se]");
  sub->add_option("--dkw-delta", cfg.dkw_delta, "DKW band confidence parameter")
      ->capture_default_str();
  sub->add_option("--workers", cfg.workers, "Sampling threads, 0 = hardware concurrency")
      ->capture_default_str();
}

void add_tail(CLI::App* sub, RunConfig& cfg) {
  sub->add_option_function<TailChoice>(
         "--tail", [&cfg](const TailChoice& t) { cfg.tail = t; },
         "Tail model: exact, markov, major, expfun, unit, empirical")
      ->transform(CLI::CheckedTransformer(kTailNames, CLI::ignore_case))
      ->option_text("NAME");
  sub->add_option("--markov-p", cfg.markov_p, "Markov tail moment order")->capture_default_str();
  sub->add_option_function<double>(
      "--markov-moment", [&cfg](const double& v) { cfg.markov_moment = v; },
      "E|F|^p for the Markov tail");
}

void add_chaos(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--q", cfg.q, "Chaos order")->capture_default_str();
  sub->add_option("--alphas", cfg.alphas, "Comma-separated kernel coefficients")->delimiter(',');
  sub->add_option_function<double>(
      "--c-q", [&cfg](const double& v) { cfg.c_q = v; },
      "Constant of the chaos concentration bound (no default exists)");
}

void add_expfun(CLI::App* sub, RunConfig& cfg, bool with_path) {
  sub->add_option("--a", cfg.a, "Drift a")->capture_default_str();
  sub->add_option("--t", cfg.t, "Horizon t")->capture_default_str();
  if (!with_path) return;
  sub->add_option_function<std::size_t>(
      "--n-steps", [&cfg](const std::size_t& n) { cfg.n_steps = n; },
      "Path grid cells (default 2000 t / 0.1)");
  sub->add_option("--scheme", cfg.scheme, "trapezoid or leftpoint")
      ->check(CLI::IsMember({"trapezoid", "leftpoint"}))
      ->capture_default_str();
}

Subcommands build_app(CLI::App& app, RunConfig& cfg, std::string& config_path) {
  app.require_subcommand(1);
  Subcommands s;
  s.stein = app.add_subcommand("stein-check", "Evaluate the Stein solution and its estimates");
  add_common(s.stein, cfg, config_path);
  s.stein->add_option("--x-min", cfg.x_grid.min, "Lower end of the x grid")->capture_default_str();
  s.stein->add_option("--x-max", cfg.x_grid.max, "Upper end of the x grid")->capture_default_str();
  s.stein->add_option("--x-count", cfg.x_grid.count, "Number of x grid points")
      ->capture_default_str();

  s.chaos = app.add_subcommand("chaos-compare", "Certify the bound for a Wiener chaos sample");
  add_common(s.chaos, cfg, config_path);
  add_chaos(s.chaos, cfg);
  add_tail(s.chaos, cfg);

  s.expfun = app.add_subcommand("expfun-compare",
                                "Certify the bound for the exponential functional of BM");
  add_common(s.expfun, cfg, config_path);
  add_expfun(s.expfun, cfg, true);
  add_tail(s.expfun, cfg);

  s.bound = app.add_subcommand("bound-only", "Evaluate bound curves without sampling");
  add_common(s.bound, cfg, config_path);
  add_chaos(s.bound, cfg);
  add_expfun(s.bound, cfg, false);
  add_tail(s.bound, cfg);
  s.bound->add_option_function<double>(
      "--mean-abs", [&cfg](const double& v) { cfg.mean_abs = v; }, "|E F| override");
  s.bound->add_option_function<double>(
      "--discrepancy", [&cfg](const double& v) { cfg.discrepancy = v; },
      "Stein discrepancy override");
  return s;
}

// Parses into cfg; returns the active subcommand and the --config path.
std::pair<CLI::App*, std::string> parse_into(RunConfig& cfg, int argc, const char* const* argv,
                                             std::unique_ptr<CLI::App>& holder) {
  holder = std::make_unique<CLI::App>("Non-uniform Berry-Esseen bounds: evaluation and "
                                      "Monte Carlo certification",
                                      "steinbound");
  std::string config_path;
  Subcommands s = build_app(*holder, cfg, config_path);
  try {
    holder->parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    std::ostringstream out, err;
    holder->exit(e, out, err);
    throw HelpRequested(out.str());
  } catch (const CLI::CallForAllHelp& e) {
    std::ostringstream out, err;
    holder->exit(e, out, err);
    throw HelpRequested(out.str());
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }
  CLI::App* active = nullptr;
  for (CLI::App* sub : {s.stein, s.chaos, s.expfun, s.bound})
    if (sub->parsed()) active = sub;
  if (active == s.stein) cfg.scenario = Scenario::SteinCheck;
  if (active == s.chaos) cfg.scenario = Scenario::ChaosCompare;
  if (active == s.expfun) cfg.scenario = Scenario::ExpFunCompare;
  if (active == s.bound) cfg.scenario = Scenario::BoundOnly;
  return {active, config_path};
}

std::string json_scalar_arg(const std::string& key, const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number() || v.is_boolean()) return v.dump();
  throw ConfigError("config key '" + key + "' must be a string, number or boolean");
}

std::vector<std::string> config_file_args(const std::string& path, CLI::App& sub) {
  std::ifstream in(path);
  if (!in) throw ConfigError("--config: cannot open '" + path + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("--config: '" + path + "' is not valid JSON: " + e.what());
  }
  if (!doc.is_object()) throw ConfigError("--config: top level of '" + path + "' must be an object");

  // Keys are flag names without the leading dashes; "z_count" and "z-count"
  // are the same key.
  std::vector<std::string> args;
  std::set<std::string> seen;
  for (const auto& [raw_key, value] : doc.items()) {
    std::string key = raw_key;
    std::replace(key.begin(), key.end(), '_', '-');
    if (key == "config") throw ConfigError("config key 'config' is not allowed inside a config file");
    if (sub.get_option_no_throw("--" + key) == nullptr)
      throw ConfigError("unknown config key '" + raw_key + "' for subcommand " + sub.get_name());
    if (!seen.insert(key).second) throw ConfigError("config key '" + raw_key + "' given twice");
    args.push_back("--" + key);
    if (value.is_array()) {
      std::string joined;
      for (const auto& item : value) {
        if (!joined.empty()) joined += ',';
        joined += json_scalar_arg(key, item);
      }
      args.push_back(joined);
    } else {
      args.push_back(json_scalar_arg(key, value));
    }
  }
  return args;
}

}  // namespace

std::string scenario_name(Scenario s) {
  switch (s) {
    case Scenario::SteinCheck: return "stein-check";
    case Scenario::ChaosCompare: return "chaos-compare";
    case Scenario::ExpFunCompare: return "expfun-compare";
    case Scenario::BoundOnly: return "bound-only";
  }
  return "unknown";
}

std::string tail_name(TailChoice t) {
  for (const auto& [name, value] : kTailNames)
    if (value == t) return name;
  return "unknown";
}

RunConfig parse_config(int argc, const char* const* argv) {
  RunConfig probe;
  std::unique_ptr<CLI::App> app;
  auto [active, config_path] = parse_into(probe, argc, argv, app);
  if (config_path.empty()) {
    validate(probe);
    return probe;
  }

  // Config file values first, then the command line on top.
  RunConfig cfg;
  std::vector<std::string> file_args = {argc > 0 ? argv[0] : "steinbound", active->get_name()};
  for (auto& a : config_file_args(config_path, *active)) file_args.push_back(std::move(a));
  std::vector<const char*> file_argv;
  for (const auto& a : file_args) file_argv.push_back(a.c_str());
  std::unique_ptr<CLI::App> file_app;
  try {
    parse_into(cfg, static_cast<int>(file_argv.size()), file_argv.data(), file_app);
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("in config file '") + config_path + "': " + e.what());
  }
  std::unique_ptr<CLI::App> cli_app;
  parse_into(cfg, argc, argv, cli_app);
  validate(cfg);
  return cfg;
}

RunConfig parse_config(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  return parse_config(static_cast<int>(argv.size()), argv.data());
}

void validate(const RunConfig& c) {
  auto check_grid = [](const Grid& g, const char* name) {
    if (g.count < 1) throw ConfigError(std::string("--") + name + "-count must be >= 1");
    if (!std::isfinite(g.min) || !std::isfinite(g.max))
      throw ConfigError(std::string("--") + name + "-min/--" + name + "-max must be finite");
    if (g.min > g.max)
      throw ConfigError(std::string("--") + name + "-min must not exceed --" + name + "-max");
  };
  check_grid(c.z_grid, "z");
  if (c.scenario == Scenario::SteinCheck) check_grid(c.x_grid, "x");
  if (c.samples < 1) throw ConfigError("--samples must be >= 1");
  if (!(c.slack_k >= 0.0) || !std::isfinite(c.slack_k)) throw ConfigError("--slack-k must be >= 0");
  if (!(c.dkw_delta > 0.0 && c.dkw_delta < 1.0))
    throw ConfigError("--dkw-delta must lie in (0, 1)");
  if (c.output_path.empty()) throw ConfigError("--output must not be empty");

  const bool chaos_context =
      c.scenario == Scenario::ChaosCompare ||
      (c.scenario == Scenario::BoundOnly && c.tail != TailChoice::ExpFun);
  const bool expfun_context =
      c.scenario == Scenario::ExpFunCompare ||
      (c.scenario == Scenario::BoundOnly && c.tail == TailChoice::ExpFun);

  if (chaos_context) {
    try {
      chaos::validate({c.q, c.alphas});
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("--q/--alphas: ") + e.what());
    }
    if (c.c_q && (!(*c.c_q > 0.0) || !std::isfinite(*c.c_q)))
      throw ConfigError("--c-q must be finite and > 0");
  }
  if (expfun_context) {
    if (!std::isfinite(c.a)) throw ConfigError("--a must be finite");
    if (!(c.t > 0.0) || !std::isfinite(c.t)) throw ConfigError("--t must be finite and > 0");
    if (c.n_steps && *c.n_steps < 2) throw ConfigError("--n-steps must be >= 2");
  }
  if (c.tail) {
    const TailChoice t = *c.tail;
    if (t == TailChoice::ExpFun && !expfun_context)
      throw ConfigError("--tail expfun only applies to the exponential functional");
    if (t == TailChoice::Major && !chaos_context)
      throw ConfigError("--tail major only applies to Wiener chaos scenarios");
    if (t == TailChoice::Major && !c.c_q)
      throw ConfigError("--tail major needs --c-q: the constant is not known in closed form");
    if (t == TailChoice::Exact && !chaos_context)
      throw ConfigError("--tail exact is only available for the rank-one second chaos");
    if (t == TailChoice::Empirical && c.scenario == Scenario::BoundOnly)
      throw ConfigError("--tail empirical needs samples; use a *-compare scenario");
  }
  if (!(c.markov_p > 0.0) || !std::isfinite(c.markov_p))
    throw ConfigError("--markov-p must be finite and > 0");
  if (c.markov_moment && (!(*c.markov_moment >= 0.0) || !std::isfinite(*c.markov_moment)))
    throw ConfigError("--markov-moment must be finite and >= 0");
  if (c.mean_abs && (!(*c.mean_abs >= 0.0) || !std::isfinite(*c.mean_abs)))
    throw ConfigError("--mean-abs must be finite and >= 0");
  if (c.discrepancy && (!(*c.discrepancy >= 0.0) || !std::isfinite(*c.discrepancy)))
    throw ConfigError("--discrepancy must be finite and >= 0");
}

}  // namespace steinbound::report
