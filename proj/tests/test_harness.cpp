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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "coexsim/config.hpp"
#include "coexsim/errors.hpp"
#include "coexsim/harness.hpp"
#include "coexsim/mid.hpp"
#include "doctest.h"
#include "testutil.hpp"

using namespace coexsim;
namespace fs = std::filesystem;

namespace {

// Small enough that DQN cells train in well under a second.
ExperimentSpec micro_spec() {
  ExperimentSpec spec;
  spec.sweep_variable = SweepVariable::kLaaUe;
  spec.sweep_values = {2, 3};
  spec.base_scenario.num_channels = 4;
  spec.base_scenario.num_sbs = 2;
  spec.base_scenario.num_wifi_ap = 2;
  spec.base_scenario.num_wifi_ue_per_ap = 1;
  spec.agents = {AgentKind::kMid, AgentKind::kTabular, AgentKind::kDqn};
  spec.seeds = {1, 2};
  spec.num_eval_scenarios = 4;
  spec.hyper.train_iterations = 120;
  spec.hyper.train.batch_size = 16;
  spec.hyper.train.buffer_capacity = 64;
  spec.hyper.train.target_update_period = 40;
  return spec;
}

fs::path temp_dir() {
  fs::path dir = fs::temp_directory_path() / "coexsim_harness_test";
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("a single-cell spec yields exactly one row") {
  ExperimentSpec spec = micro_spec();
  spec.sweep_values = {3};
  spec.agents = {AgentKind::kMid};
  spec.seeds = {7};
  SweepResult result = run_experiment(spec);
  REQUIRE(result.rows.size() == 1);
  CHECK(result.rows[0].sweep_value == 3);
  CHECK(result.rows[0].agent == AgentKind::kMid);
  CHECK(result.rows[0].seed == 7);
  CHECK(result.rows[0].mean_throughput > 0.0);
  CHECK(result.rows[0].wall_time_s == 0.0);
  std::string csv = csv_string(result);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
}

TEST_CASE("identical specs produce byte-identical CSV") {
  ExperimentSpec spec = micro_spec();
  std::string a = csv_string(run_experiment(spec));
  std::string b = csv_string(run_experiment(spec));
  CHECK(a == b);

  // Thread count must not change the bytes either.
  ExperimentSpec serial = micro_spec();
  serial.threads = 1;
  CHECK(csv_string(run_experiment(serial)) == a);
}

TEST_CASE("MID rows match an independent evaluation loop") {
  ExperimentSpec spec = micro_spec();
  spec.agents = {AgentKind::kMid};
  SweepResult result = run_experiment(spec);
  for (const SweepRow& row : result.rows) {
    double sum = 0.0;
    for (std::uint32_t i = 0; i < spec.num_eval_scenarios; ++i) {
      Scenario s = generate_scenario(
          eval_scenario_config(spec, row.sweep_value, row.seed, i));
      sum += total_throughput(s, assign_all_mid(s, spec.radio), spec.radio).total;
    }
    CHECK(testutil::relative_error(row.mean_throughput,
                                   sum / spec.num_eval_scenarios) < 1e-12);
  }
}

TEST_CASE("rows come out in canonical order regardless of spec order") {
  ExperimentSpec spec = micro_spec();
  spec.agents = {AgentKind::kDqn, AgentKind::kMid, AgentKind::kTabular};
  spec.seeds = {2, 1, 2};
  SweepResult result = run_experiment(spec);
  REQUIRE(result.rows.size() == 2 * 3 * 2);  // duplicates collapse
  for (std::size_t i = 1; i < result.rows.size(); ++i) {
    const SweepRow& prev = result.rows[i - 1];
    const SweepRow& cur = result.rows[i];
    bool ordered =
        std::tuple(prev.sweep_value, prev.agent, prev.seed) <
        std::tuple(cur.sweep_value, cur.agent, cur.seed);
    CHECK(ordered);
  }
}

TEST_CASE("every agent kind faces the same evaluation scenarios") {
  ExperimentSpec spec = micro_spec();
  ScenarioConfig a = eval_scenario_config(spec, 3, 1, 0);
  ScenarioConfig b = eval_scenario_config(spec, 3, 1, 0);
  CHECK(a.seed == b.seed);
  CHECK(eval_scenario_config(spec, 3, 1, 1).seed != a.seed);
  CHECK(eval_scenario_config(spec, 2, 1, 0).seed != a.seed);
  CHECK(eval_scenario_config(spec, 3, 2, 0).seed != a.seed);
}

TEST_CASE("timing is opt-in and fills the wall-time column") {
  ExperimentSpec spec = micro_spec();
  spec.sweep_values = {3};
  spec.agents = {AgentKind::kDqn};
  spec.seeds = {1};
  spec.measure_wall_time = true;
  SweepResult result = run_experiment(spec);
  REQUIRE(result.rows.size() == 1);
  CHECK(result.rows[0].wall_time_s > 0.0);
}

TEST_CASE("invalid specs are rejected before any work") {
  ExperimentSpec spec = micro_spec();
  spec.sweep_values = {};
  CHECK_THROWS_AS(run_experiment(spec), ConfigError);

  spec = micro_spec();
  spec.sweep_values = {5, 5};
  CHECK_THROWS_AS(run_experiment(spec), ConfigError);

  spec = micro_spec();
  spec.sweep_values = {5, 3};
  CHECK_THROWS_AS(run_experiment(spec), ConfigError);

  spec = micro_spec();
  spec.agents = {};
  CHECK_THROWS_AS(run_experiment(spec), ConfigError);

  spec = micro_spec();
  spec.seeds = {};
  CHECK_THROWS_AS(run_experiment(spec), ConfigError);

  spec = micro_spec();
  spec.num_eval_scenarios = 0;
  CHECK_THROWS_AS(run_experiment(spec), ConfigError);

  spec = micro_spec();
  spec.sweep_variable = SweepVariable::kWifiAp;
  spec.base_scenario.num_laa_ue = 0;  // fixed UE count must stay >= 1
  CHECK_THROWS_AS(run_experiment(spec), ConfigError);
}

TEST_CASE("CSV emission and parse-back round-trip exactly") {
  ExperimentSpec spec = micro_spec();
  spec.agents = {AgentKind::kMid, AgentKind::kTabular};
  SweepResult result = run_experiment(spec);

  fs::path path = temp_dir() / "roundtrip.csv";
  emit_csv(result, path);
  SweepResult parsed = parse_csv(path);
  CHECK(parsed == result);

  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header ==
        "sweep_variable,sweep_value,agent,seed,mean_throughput,std_throughput,"
        "wall_time_s");

  CHECK_THROWS_AS(emit_csv(SweepResult{}, path), PreconditionError);
  CHECK_THROWS_AS(emit_csv(result, fs::path("/nonexistent-dir/x.csv")), IoError);
  CHECK_THROWS_AS(parse_csv_string("bogus"), ParseError);
  CHECK_THROWS_AS(parse_csv(fs::path("/nonexistent-dir/x.csv")), IoError);
}

TEST_CASE("plot script names the CSV and compiles as python") {
  ExperimentSpec spec = micro_spec();
  spec.agents = {AgentKind::kMid};
  SweepResult result = run_experiment(spec);
  fs::path dir = temp_dir();
  fs::path script = dir / "plot_results.py";
  emit_plot_script(result, script, "results.csv");

  std::ifstream in(script);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  CHECK(text.find("results.csv") != std::string::npos);
  CHECK(text.find("matplotlib") != std::string::npos);
  CHECK(text.find("number of LAA UEs") != std::string::npos);

  if (std::system("python3 --version > /dev/null 2>&1") == 0) {
    std::string cmd = "python3 -m py_compile " + script.string();
    CHECK(std::system(cmd.c_str()) == 0);
  }
}

TEST_CASE("config files populate every section and reject typos") {
  const char* text = R"(
# sample experiment
[scenario]
num_channels = 4
num_sbs = 2
num_laa_ue = 3
num_wifi_ap = 2
num_wifi_ue_per_ap = 1
mbs_radius = 400.0
sbs_radius = 80
ap_radius = 25
seed = 11

[radio]
p_laa = 0.25
p_wifi_ap = 0.2
t_max_ms = 10
i_cca_ms = 0.0034
noise = 2e-13
pl0_db = 30
d0 = 1
path_loss_exponent = 3.5
serving_transmitter = mbs
rayleigh_fading = true
fading_seed = 5
log_base = 2

[hyperparams]
alpha = 0.1
gamma = 0.8
train_iterations = 64
learning_rate = 0.02
batch_size = 16
target_update_period = 32
buffer_capacity = 128
epsilon_start = 0.9
epsilon_end = 0.1
epsilon_decay_steps = 32

[experiment]
sweep_variable = wifi_ap
sweep_values = 1, 2, 4
agents = mid, dqn
seeds = 3, 4
num_eval_scenarios = 2
timing = false
threads = 2
)";
  ExperimentSpec spec =
      experiment_spec_from_config(KeyValueConfig::parse_string(text), false);
  CHECK(spec.base_scenario.num_channels == 4);
  CHECK(spec.base_scenario.mbs_radius == 400.0);
  CHECK(spec.base_scenario.seed == 11);
  CHECK(spec.radio.serve_from_mbs);
  CHECK(spec.radio.rayleigh_fading);
  CHECK(spec.radio.use_log2);
  CHECK(spec.radio.p_laa == 0.25);
  CHECK(spec.hyper.alpha == 0.1);
  CHECK(spec.hyper.train_iterations == 64);
  CHECK(spec.hyper.train.batch_size == 16);
  CHECK(spec.sweep_variable == SweepVariable::kWifiAp);
  CHECK(spec.sweep_values == std::vector<std::uint32_t>{1, 2, 4});
  CHECK(spec.agents ==
        std::vector<AgentKind>{AgentKind::kMid, AgentKind::kDqn});
  CHECK(spec.seeds == std::vector<std::uint64_t>{3, 4});
  CHECK(spec.num_eval_scenarios == 2);
  CHECK(spec.threads == 2);

  CHECK_THROWS_AS(experiment_spec_from_config(
                      KeyValueConfig::parse_string("[scenario]\nnum_chanels = 5\n"),
                      false),
                  ConfigError);
  CHECK_THROWS_AS(experiment_spec_from_config(
                      KeyValueConfig::parse_string("[bogus]\nx = 1\n"), false),
                  ConfigError);
  CHECK_THROWS_AS(experiment_spec_from_config(
                      KeyValueConfig::parse_string("[radio]\nnoise = soft\n"),
                      false),
                  ParseError);
  CHECK_THROWS_AS(KeyValueConfig::parse_string("[scenario\nx = 1\n"), ParseError);
  CHECK_THROWS_AS(KeyValueConfig::parse_string("justakey\n"), ParseError);
}

TEST_CASE("the quick profile trims training and seeds") {
  ExperimentSpec spec =
      experiment_spec_from_config(KeyValueConfig::parse_string(""), true);
  CHECK(spec.hyper.train_iterations == 2000);
  CHECK(spec.seeds.size() == 3);

  ExperimentSpec full =
      experiment_spec_from_config(KeyValueConfig::parse_string(""), false);
  CHECK(full.hyper.train_iterations == 20000);
  CHECK(full.sweep_values == std::vector<std::uint32_t>{5, 10, 15, 20, 25, 30});
  CHECK(full.agents.size() == 5);
}

TEST_CASE("COEX_SEED overrides the seed list") {
  setenv("COEX_SEED", "11,22", 1);
  ExperimentSpec spec =
      experiment_spec_from_config(KeyValueConfig::parse_string(""), false);
  CHECK(spec.seeds == std::vector<std::uint64_t>{11, 22});

  setenv("COEX_SEED", "oops", 1);
  CHECK_THROWS_AS(
      experiment_spec_from_config(KeyValueConfig::parse_string(""), false),
      ParseError);
  unsetenv("COEX_SEED");
}
