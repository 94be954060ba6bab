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

// coex-sim: command-line front end for the coexsim shared library. Talks to
// the simulator exclusively through the C API in coexsim/coexsim.h.

#include <cstdint>
#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "coexsim/coexsim.h"

namespace {

int fail(coex_status status, const char* what) {
  std::fprintf(stderr, "error: %s: %s (%s)\n", what, coex_last_error(),
               coex_status_name(status));
  return 1;
}

int cmd_run(const std::string& config, bool quick, bool timing,
            std::uint32_t threads, const std::string& out_dir) {
  char* csv_path = nullptr;
  coex_status status = coex_run_experiment(
      config.empty() ? nullptr : config.c_str(), quick ? 1 : 0, timing ? 1 : 0,
      threads, out_dir.c_str(), &csv_path);
  if (status != COEX_OK) return fail(status, "run");
  std::printf("wrote %s\n", csv_path);
  std::printf("wrote %s/plot_results.py (run with python3 to render)\n",
              out_dir.c_str());
  coex_string_free(csv_path);
  return 0;
}

int cmd_oracle(std::uint32_t max_ue, std::uint32_t max_channels,
               std::uint32_t num_seeds, std::uint64_t seed) {
  char* report = nullptr;
  coex_status status =
      coex_oracle_report(max_ue, max_channels, num_seeds, seed, &report);
  if (status != COEX_OK) return fail(status, "oracle");
  std::fputs(report, stdout);
  coex_string_free(report);
  return 0;
}

int cmd_selfcheck() {
  char* report = nullptr;
  std::uint32_t failures = 0;
  coex_status status = coex_selfcheck(&report, &failures);
  if (status != COEX_OK) return fail(status, "selfcheck");
  std::fputs(report, stdout);
  coex_string_free(report);
  return failures == 0 ? 0 : 1;
}

int cmd_dump(const coex_scenario_config& config) {
  coex_scenario* scenario = nullptr;
  coex_status status = coex_scenario_generate(&config, &scenario);
  if (status != COEX_OK) return fail(status, "dump");
  char* text = nullptr;
  status = coex_scenario_dump(scenario, &text);
  if (status != COEX_OK) {
    coex_scenario_free(scenario);
    return fail(status, "dump");
  }
  std::fputs(text, stdout);
  coex_string_free(text);
  coex_scenario_free(scenario);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LAA/Wi-Fi coexistence channel-selection simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(coex_version()));

  // run
  std::string config_path;
  std::string out_dir = "out";
  bool quick = false;
  bool timing = false;
  std::uint32_t threads = 0;
  CLI::App* run = app.add_subcommand(
      "run", "Run a throughput sweep and write CSV plus a plot script");
  run->add_option("--config", config_path,
                  "Experiment config file (defaults apply when omitted)");
  run->add_flag("--quick", quick,
                "Desk-scale profile: 2,000 training iterations, 3 seeds");
  run->add_flag("--timing", timing,
                "Measure per-cell wall time (makes the CSV unrepeatable)");
  run->add_option("--threads", threads, "Worker threads (0 = hardware)");
  run->add_option("--out-dir", out_dir, "Output directory")
      ->capture_default_str();

  // oracle
  std::uint32_t max_ue = 4;
  std::uint32_t max_channels = 4;
  std::uint32_t num_seeds = 50;
  std::uint64_t oracle_seed = 1;
  CLI::App* oracle = app.add_subcommand(
      "oracle", "Compare MID against exhaustive search on small instances");
  oracle->add_option("--max-ue", max_ue, "LAA UEs per instance")
      ->capture_default_str();
  oracle->add_option("--max-channels", max_channels, "Channels per instance")
      ->capture_default_str();
  oracle->add_option("--seeds", num_seeds, "Number of random instances")
      ->capture_default_str();
  oracle->add_option("--seed", oracle_seed, "Base seed")->capture_default_str();

  // selfcheck
  app.add_subcommand("selfcheck", "Run the built-in invariant suite");

  // dump
  coex_scenario_config scenario_config;
  coex_scenario_config_default(&scenario_config);
  CLI::App* dump =
      app.add_subcommand("dump", "Generate one deployment and print it");
  dump->add_option("--seed", scenario_config.seed, "Scenario seed");
  dump->add_option("--channels", scenario_config.num_channels, "Channel count");
  dump->add_option("--sbs", scenario_config.num_sbs, "Small base stations");
  dump->add_option("--laa-ue", scenario_config.num_laa_ue, "LAA UEs");
  dump->add_option("--wifi-ap", scenario_config.num_wifi_ap, "Wi-Fi APs");
  dump->add_option("--wifi-ue-per-ap", scenario_config.num_wifi_ue_per_ap,
                   "Wi-Fi UEs per AP");
  dump->add_option("--mbs-radius", scenario_config.mbs_radius, "MBS radius, m");
  dump->add_option("--sbs-radius", scenario_config.sbs_radius, "SBS radius, m");
  dump->add_option("--ap-radius", scenario_config.ap_radius, "AP radius, m");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return cmd_run(config_path, quick, timing, threads, out_dir);
  if (oracle->parsed()) {
    return cmd_oracle(max_ue, max_channels, num_seeds, oracle_seed);
  }
  if (dump->parsed()) return cmd_dump(scenario_config);
  return cmd_selfcheck();
}
