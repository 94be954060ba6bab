// Copyright 2026 The coexsim Authors
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

#include "coexsim/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "coexsim/env.hpp"
#include "coexsim/errors.hpp"
#include "coexsim/mid.hpp"
#include "coexsim/rng.hpp"

namespace coexsim {
namespace {

constexpr char kCsvHeader[] =
    "sweep_variable,sweep_value,agent,seed,mean_throughput,std_throughput,"
    "wall_time_s";

struct Cell {
  std::uint32_t sweep_value = 0;
  AgentKind kind = AgentKind::kMid;
  std::uint64_t seed = 0;
};

SweepRow run_cell(const ExperimentSpec& spec, const Cell& cell) {
  ScenarioConfig config = spec.scenario_at(cell.sweep_value);
  EncodingSpec enc{config.num_channels, config.mbs_radius};

  auto start = std::chrono::steady_clock::now();

  std::optional<Agent> agent;
  if (is_learning_agent(cell.kind)) {
    std::uint64_t train_seed = derive_seed(
        cell.seed, {tag_hash("train"), cell.sweep_value,
                    static_cast<std::uint64_t>(cell.kind)});
    agent = train_agent(cell.kind, make_config_sampler(config), spec.radio,
                        enc, spec.hyper, train_seed)
                .agent;
  }

  std::vector<double> totals;
  totals.reserve(spec.num_eval_scenarios);
  for (std::uint32_t i = 0; i < spec.num_eval_scenarios; ++i) {
    Scenario scenario = generate_scenario(
        eval_scenario_config(spec, cell.sweep_value, cell.seed, i));
    ChannelAssignment assignment =
        agent.has_value() ? assign_all_learned(*agent, scenario, spec.radio)
                          : assign_all_mid(scenario, spec.radio);
    totals.push_back(total_throughput(scenario, assignment, spec.radio).total);
  }

  double mean = 0.0;
  for (double t : totals) mean += t;
  mean /= static_cast<double>(totals.size());
  double var = 0.0;
  for (double t : totals) var += (t - mean) * (t - mean);
  double stddev = totals.size() > 1
                      ? std::sqrt(var / static_cast<double>(totals.size() - 1))
                      : 0.0;

  SweepRow row;
  row.sweep_value = cell.sweep_value;
  row.agent = cell.kind;
  row.seed = cell.seed;
  row.mean_throughput = mean;
  row.std_throughput = stddev;
  if (spec.measure_wall_time) {
    row.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
  }
  return row;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

double parse_double_field(const std::string& field) {
  std::size_t used = 0;
  double v = std::stod(field, &used);
  if (used != field.size()) throw ParseError("malformed number '" + field + "'");
  return v;
}

}  // namespace

std::string_view sweep_variable_name(SweepVariable v) {
  return v == SweepVariable::kLaaUe ? "laa_ue" : "wifi_ap";
}

SweepVariable sweep_variable_from(std::string_view name) {
  if (name == "laa_ue") return SweepVariable::kLaaUe;
  if (name == "wifi_ap") return SweepVariable::kWifiAp;
  throw ParseError("unknown sweep variable '" + std::string(name) + "'");
}

void ExperimentSpec::validate() const {
  if (sweep_values.empty()) throw ConfigError("sweep_values must be nonempty");
  for (std::size_t i = 1; i < sweep_values.size(); ++i) {
    if (sweep_values[i] <= sweep_values[i - 1]) {
      throw ConfigError("sweep_values must be strictly ascending");
    }
  }
  if (agents.empty()) throw ConfigError("at least one agent kind is required");
  if (seeds.empty()) throw ConfigError("at least one seed is required");
  if (num_eval_scenarios == 0) {
    throw ConfigError("num_eval_scenarios must be >= 1");
  }
  radio.validate();
  hyper.validate();
  for (std::uint32_t value : sweep_values) {
    ScenarioConfig config = scenario_at(value);
    config.validate();
    if (config.num_laa_ue == 0) {
      throw ConfigError("every sweep point needs at least one LAA UE");
    }
  }
}

ScenarioConfig ExperimentSpec::scenario_at(std::uint32_t sweep_value) const {
  ScenarioConfig config = base_scenario;
  if (sweep_variable == SweepVariable::kLaaUe) {
    config.num_laa_ue = sweep_value;
  } else {
    config.num_wifi_ap = sweep_value;
  }
  return config;
}

void apply_quick_profile(ExperimentSpec& spec) {
  spec.hyper.train_iterations = 2000;
  if (spec.seeds.size() > 3) spec.seeds.resize(3);
}

ScenarioConfig eval_scenario_config(const ExperimentSpec& spec,
                                    std::uint32_t sweep_value,
                                    std::uint64_t run_seed,
                                    std::uint32_t index) {
  ScenarioConfig config = spec.scenario_at(sweep_value);
  config.seed = derive_seed(
      spec.base_scenario.seed,
      {tag_hash("eval"), sweep_value, run_seed, static_cast<std::uint64_t>(index)});
  return config;
}

SweepResult run_experiment(const ExperimentSpec& spec) {
  spec.validate();

  // Canonical row order: sweep value, then kind, then seed.
  std::vector<AgentKind> kinds = spec.agents;
  std::sort(kinds.begin(), kinds.end());
  kinds.erase(std::unique(kinds.begin(), kinds.end()), kinds.end());
  std::vector<std::uint64_t> seeds = spec.seeds;
  std::sort(seeds.begin(), seeds.end());
  seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());

  std::vector<Cell> cells;
  cells.reserve(spec.sweep_values.size() * kinds.size() * seeds.size());
  for (std::uint32_t value : spec.sweep_values) {
    for (AgentKind kind : kinds) {
      for (std::uint64_t seed : seeds) {
        cells.push_back({value, kind, seed});
      }
    }
  }

  SweepResult result;
  result.variable = spec.sweep_variable;
  result.rows.resize(cells.size());

  unsigned num_threads =
      spec.threads != 0 ? spec.threads : std::thread::hardware_concurrency();
  if (num_threads == 0) num_threads = 1;
  if (num_threads > cells.size()) {
    num_threads = static_cast<unsigned>(cells.size());
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    std::size_t i;
    while ((i = next.fetch_add(1)) < cells.size()) {
      try {
        result.rows[i] = run_cell(spec, cells[i]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };

  if (num_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(num_threads);
    for (unsigned t = 0; t < num_threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return result;
}

std::string csv_string(const SweepResult& result) {
  if (result.rows.empty()) {
    throw PreconditionError("cannot emit an empty sweep result");
  }
  std::string out = kCsvHeader;
  out += '\n';
  for (const SweepRow& row : result.rows) {
    out += sweep_variable_name(result.variable);
    out += ',';
    out += std::to_string(row.sweep_value);
    out += ',';
    out += agent_kind_name(row.agent);
    out += ',';
    out += std::to_string(row.seed);
    out += ',';
    out += format_double(row.mean_throughput);
    out += ',';
    out += format_double(row.std_throughput);
    out += ',';
    out += format_double(row.wall_time_s);
    out += '\n';
  }
  return out;
}

void emit_csv(const SweepResult& result, const std::filesystem::path& path) {
  std::string text = csv_string(result);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

SweepResult parse_csv_string(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw ParseError("missing or unexpected CSV header");
  }
  SweepResult result;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields = split_csv_line(line);
    if (fields.size() != 7) {
      throw ParseError("expected 7 CSV fields, got " +
                       std::to_string(fields.size()));
    }
    SweepVariable variable = sweep_variable_from(fields[0]);
    if (first) {
      result.variable = variable;
      first = false;
    } else if (variable != result.variable) {
      throw ParseError("mixed sweep variables in one CSV");
    }
    SweepRow row;
    row.sweep_value = static_cast<std::uint32_t>(std::stoul(fields[1]));
    row.agent = agent_kind_from(fields[2]);
    row.seed = std::stoull(fields[3]);
    row.mean_throughput = parse_double_field(fields[4]);
    row.std_throughput = parse_double_field(fields[5]);
    row.wall_time_s = parse_double_field(fields[6]);
    result.rows.push_back(row);
  }
  if (result.rows.empty()) throw ParseError("CSV has no data rows");
  return result;
}

SweepResult parse_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv_string(buf.str());
}

std::string plot_script_string(const SweepResult& result,
                               const std::string& csv_filename) {
  if (result.rows.empty()) {
    throw PreconditionError("cannot plot an empty sweep result");
  }
  const char* xlabel = result.variable == SweepVariable::kLaaUe
                           ? "number of LAA UEs"
                           : "number of Wi-Fi APs";
  std::string png = csv_filename;
  if (png.size() > 4 && png.substr(png.size() - 4) == ".csv") {
    png = png.substr(0, png.size() - 4);
  }
  png += ".png";

  std::ostringstream out;
  out << "#!/usr/bin/env python3\n"
      << "\"\"\"Plots mean total throughput per channel-selection strategy.\n"
      << "\n"
      << "Reads " << csv_filename << " (expected next to this script) and\n"
      << "writes " << png << ".\n"
      << "\"\"\"\n"
      << "import csv\n"
      << "import os\n"
      << "from collections import defaultdict\n"
      << "\n"
      << "import matplotlib\n"
      << "matplotlib.use(\"Agg\")\n"
      << "import matplotlib.pyplot as plt\n"
      << "\n"
      << "here = os.path.dirname(os.path.abspath(__file__))\n"
      << "csv_path = os.path.join(here, \"" << csv_filename << "\")\n"
      << "png_path = os.path.join(here, \"" << png << "\")\n"
      << "\n"
      << "series = defaultdict(lambda: defaultdict(list))\n"
      << "with open(csv_path, newline=\"\") as fh:\n"
      << "    for row in csv.DictReader(fh):\n"
      << "        series[row[\"agent\"]][int(row[\"sweep_value\"])].append(\n"
      << "            float(row[\"mean_throughput\"]))\n"
      << "\n"
      << "order = [\"mid\", \"tabular\", \"dqn\", \"double_dqn\", \"dueling_dqn\"]\n"
      << "agents = [a for a in order if a in series]\n"
      << "agents += sorted(set(series) - set(agents))\n"
      << "\n"
      << "plt.figure(figsize=(7.0, 4.5))\n"
      << "for agent in agents:\n"
      << "    xs = sorted(series[agent])\n"
      << "    ys = [sum(series[agent][x]) / len(series[agent][x]) for x in xs]\n"
      << "    plt.plot(xs, ys, marker=\"o\", label=agent)\n"
      << "plt.xlabel(\"" << xlabel << "\")\n"
      << "plt.ylabel(\"mean total throughput (normalized)\")\n"
      << "plt.title(\"Throughput vs " << xlabel << "\")\n"
      << "plt.grid(True, alpha=0.3)\n"
      << "plt.legend()\n"
      << "plt.tight_layout()\n"
      << "plt.savefig(png_path, dpi=150)\n"
      << "print(\"wrote\", png_path)\n";
  return out.str();
}

void emit_plot_script(const SweepResult& result,
                      const std::filesystem::path& script_path,
                      const std::string& csv_filename) {
  std::string text = plot_script_string(result, csv_filename);
  std::ofstream out(script_path, std::ios::binary);
  if (!out) throw IoError("cannot open " + script_path.string() + " for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("failed writing " + script_path.string());
}

}  // namespace coexsim
