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

#include <charconv>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "steinbound/report.hpp"

namespace steinbound::report {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string csv_cell(const Cell& c) {
  return std::visit(overloaded{
                        [](double v) { return format_number(v); },
                        [](std::int64_t v) { return std::to_string(v); },
                        [](bool v) { return std::string(v ? "true" : "false"); },
                        [](const std::string& v) { return v; },
                    },
                    c);
}

std::string json_string(const std::string& s) { return nlohmann::json(s).dump(); }

std::string json_cell(const Cell& c) {
  return std::visit(overloaded{
                        [](double v) { return std::isfinite(v) ? format_number(v) : "null"; },
                        [](std::int64_t v) { return std::to_string(v); },
                        [](bool v) { return std::string(v ? "true" : "false"); },
                        [](const std::string& v) { return json_string(v); },
                    },
                    c);
}

void json_object(std::ostringstream& out, const std::vector<std::pair<std::string, Cell>>& kv,
                 const std::string& indent) {
  out << "{";
  for (std::size_t i = 0; i < kv.size(); ++i) {
    out << (i == 0 ? "\n" : ",\n") << indent << "  " << json_string(kv[i].first) << ": "
        << json_cell(kv[i].second);
  }
  out << (kv.empty() ? "}" : "\n" + indent + "}");
}

std::vector<std::pair<std::string, Cell>> config_entries(const RunConfig& c) {
  using I = std::int64_t;
  std::vector<std::pair<std::string, Cell>> kv = {
      {"seed", std::to_string(c.seed)},  // string: a uint64 may exceed 2^53
      {"samples", static_cast<I>(c.samples)},
      {"z_min", c.z_grid.min},
      {"z_max", c.z_grid.max},
      {"z_count", static_cast<I>(c.z_grid.count)},
  };
  switch (c.scenario) {
    case Scenario::SteinCheck:
      kv.emplace_back("x_min", c.x_grid.min);
      kv.emplace_back("x_max", c.x_grid.max);
      kv.emplace_back("x_count", static_cast<I>(c.x_grid.count));
      break;
    case Scenario::ChaosCompare:
    case Scenario::BoundOnly: {
      kv.emplace_back("q", static_cast<I>(c.q));
      std::string alphas;
      for (double a : c.alphas) alphas += (alphas.empty() ? "" : ",") + format_number(a);
      kv.emplace_back("alphas", alphas);
      if (c.c_q) kv.emplace_back("c_q", *c.c_q);
      if (c.scenario == Scenario::BoundOnly) {
        kv.emplace_back("a", c.a);
        kv.emplace_back("t", c.t);
        if (c.mean_abs) kv.emplace_back("mean_abs", *c.mean_abs);
        if (c.discrepancy) kv.emplace_back("discrepancy", *c.discrepancy);
      }
      break;
    }
    case Scenario::ExpFunCompare:
      kv.emplace_back("a", c.a);
      kv.emplace_back("t", c.t);
      if (c.n_steps) kv.emplace_back("n_steps", static_cast<I>(*c.n_steps));
      kv.emplace_back("scheme", c.scheme);
      break;
  }
  if (c.tail) kv.emplace_back("tail", tail_name(*c.tail));
  kv.emplace_back("markov_p", c.markov_p);
  if (c.markov_moment) kv.emplace_back("markov_moment", *c.markov_moment);
  kv.emplace_back("slack_k", c.slack_k);
  kv.emplace_back("slack_mode", std::string(c.slack_mode == SlackChoice::Dkw ? "dkw" : "se"));
  kv.emplace_back("dkw_delta", c.dkw_delta);
  return kv;
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";  // also folds -0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string to_csv(const Table& table) {
  std::string out;
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out += ',';
    out += table.columns[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += csv_cell(row[i]);
    }
    out += '\n';
  }
  return out;
}

// Key order: scenario, config, summary, notes, exit_status, columns, rows.
std::string to_json(const RunConfig& config, const ScenarioOutput& out) {
  std::ostringstream s;
  s << "{\n  \"scenario\": " << json_string(scenario_name(config.scenario)) << ",\n";
  s << "  \"config\": ";
  json_object(s, config_entries(config), "  ");
  s << ",\n  \"summary\": ";
  json_object(s, out.summary, "  ");
  s << ",\n  \"notes\": [";
  for (std::size_t i = 0; i < out.notes.size(); ++i)
    s << (i ? ", " : "") << json_string(out.notes[i]);
  s << "],\n  \"exit_status\": " << out.exit_status << ",\n  \"columns\": [";
  for (std::size_t i = 0; i < out.table.columns.size(); ++i)
    s << (i ? ", " : "") << json_string(out.table.columns[i]);
  s << "],\n  \"rows\": [";
  for (std::size_t r = 0; r < out.table.rows.size(); ++r) {
    s << (r ? ",\n    [" : "\n    [");
    const auto& row = out.table.rows[r];
    for (std::size_t i = 0; i < row.size(); ++i) s << (i ? ", " : "") << json_cell(row[i]);
    s << "]";
  }
  s << (out.table.rows.empty() ? "]\n}\n" : "\n  ]\n}\n");
  return s.str();
}

std::string render(const RunConfig& config, const ScenarioOutput& out) {
  return config.format == Format::Json ? to_json(config, out) : to_csv(out.table);
}

}  // namespace steinbound::report
