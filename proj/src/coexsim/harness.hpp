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

#ifndef COEXSIM_HARNESS_HPP_
#define COEXSIM_HARNESS_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "coexsim/agents.hpp"
#include "coexsim/radio.hpp"
#include "coexsim/topology.hpp"

namespace coexsim {

enum class SweepVariable { kLaaUe, kWifiAp };

std::string_view sweep_variable_name(SweepVariable v);
SweepVariable sweep_variable_from(std::string_view name);  // throws ParseError

// One full experiment: train/evaluate every requested strategy at every
// sweep value for every seed. Evaluation scenarios are derived from
// (base seed, sweep value, run seed, index) only, so every strategy faces
// the same deployments at a given cell.
struct ExperimentSpec {
  SweepVariable sweep_variable = SweepVariable::kLaaUe;
  std::vector<std::uint32_t> sweep_values = {5, 10, 15, 20, 25, 30};
  ScenarioConfig base_scenario;
  RadioParams radio;
  Hyperparams hyper;
  std::vector<AgentKind> agents = {AgentKind::kMid, AgentKind::kTabular,
                                   AgentKind::kDqn, AgentKind::kDoubleDqn,
                                   AgentKind::kDuelingDqn};
  std::uint32_t num_eval_scenarios = 20;
  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
  // Wall-clock measurement is inherently unrepeatable, so it is opt-in;
  // with it off the wall_time_s column is 0 and runs are byte-identical.
  bool measure_wall_time = false;
  std::uint32_t threads = 0;  // 0 = hardware concurrency

  void validate() const;  // throws ConfigError before any work

  // The scenario config at one sweep point.
  ScenarioConfig scenario_at(std::uint32_t sweep_value) const;
};

// Reduces training to 2,000 iterations and at most 3 seeds so the full
// matrix finishes in minutes.
void apply_quick_profile(ExperimentSpec& spec);

// The deployment used for evaluation scenario `index` of one (value, seed)
// cell; shared by every agent kind in that cell.
ScenarioConfig eval_scenario_config(const ExperimentSpec& spec,
                                    std::uint32_t sweep_value,
                                    std::uint64_t run_seed,
                                    std::uint32_t index);

struct SweepRow {
  std::uint32_t sweep_value = 0;
  AgentKind agent = AgentKind::kMid;
  std::uint64_t seed = 0;
  double mean_throughput = 0.0;
  double std_throughput = 0.0;
  double wall_time_s = 0.0;

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

struct SweepResult {
  SweepVariable variable = SweepVariable::kLaaUe;
  std::vector<SweepRow> rows;  // canonical order: value, then kind, then seed

  friend bool operator==(const SweepResult&, const SweepResult&) = default;
};

// Runs the full matrix; independent cells execute in parallel, and the
// result is deterministic given the spec regardless of thread count.
SweepResult run_experiment(const ExperimentSpec& spec);

std::string csv_string(const SweepResult& result);  // header + one line per row
void emit_csv(const SweepResult& result, const std::filesystem::path& path);
SweepResult parse_csv_string(const std::string& text);
SweepResult parse_csv(const std::filesystem::path& path);

// Self-contained matplotlib script plotting throughput-vs-sweep-value
// lines per agent from the named CSV file (expected next to the script).
std::string plot_script_string(const SweepResult& result,
                               const std::string& csv_filename);
void emit_plot_script(const SweepResult& result,
                      const std::filesystem::path& script_path,
                      const std::string& csv_filename);

}  // namespace coexsim

#endif  // COEXSIM_HARNESS_HPP_
