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

#include "coexsim/oracle.hpp"

#include <cmath>
#include <cstdio>
#include <vector>

#include "coexsim/errors.hpp"
#include "coexsim/mid.hpp"

namespace coexsim {

OracleResult exhaustive_best_assignment(const Scenario& scenario,
                                        const RadioParams& params,
                                        std::uint64_t max_assignments) {
  const std::size_t n = scenario.laa_ues.size();
  const std::uint32_t channels = scenario.config.num_channels;

  double combos = std::pow(static_cast<double>(channels), static_cast<double>(n));
  if (combos > static_cast<double>(max_assignments)) {
    throw ConfigError("instance too large for exhaustive search: " +
                      std::to_string(channels) + "^" + std::to_string(n) +
                      " assignments");
  }

  OracleResult result;
  result.best = ChannelAssignment(n);
  if (n == 0) {
    result.best_total = 0.0;
    result.evaluated = 1;
    return result;
  }

  std::vector<ChannelId> digits(n, 0);
  ChannelAssignment candidate(n);
  double best = -1.0;
  while (true) {
    for (std::uint32_t i = 0; i < n; ++i) candidate.assign(i, digits[i]);
    double total = total_throughput(scenario, candidate, params).total;
    ++result.evaluated;
    if (total > best) {
      best = total;
      result.best = candidate;
    }
    // odometer increment
    std::size_t pos = 0;
    while (pos < n && ++digits[pos] == channels) {
      digits[pos] = 0;
      ++pos;
    }
    if (pos == n) break;
  }
  result.best_total = best;
  return result;
}

std::string oracle_report(std::uint32_t max_ue, std::uint32_t max_channels,
                          std::uint32_t num_seeds, std::uint64_t base_seed,
                          const RadioParams& params) {
  if (max_ue == 0 || max_channels == 0 || num_seeds == 0) {
    throw ConfigError("oracle needs max_ue, max_channels, num_seeds >= 1");
  }

  std::string out;
  char line[256];
  std::snprintf(line, sizeof(line),
                "exhaustive oracle: %u LAA UEs, %u channels, %u seeds\n"
                "%-6s %-12s %-12s %-8s %s\n",
                max_ue, max_channels, num_seeds, "seed", "optimal", "mid",
                "ratio", "mid_idle_feasible");
  out += line;

  double ratio_sum = 0.0;
  double worst = 1.0;
  for (std::uint32_t i = 0; i < num_seeds; ++i) {
    ScenarioConfig config;
    config.num_channels = max_channels;
    config.num_laa_ue = max_ue;
    config.num_sbs = 2;
    config.num_wifi_ap = 3;
    config.num_wifi_ue_per_ap = 1;
    config.seed = base_seed + i;
    Scenario scenario = generate_scenario(config);

    OracleResult opt = exhaustive_best_assignment(scenario, params);
    ChannelAssignment mid = assign_all_mid(scenario, params);
    double mid_total = total_throughput(scenario, mid, params).total;
    double ratio = opt.best_total > 0.0 ? mid_total / opt.best_total : 1.0;
    ratio_sum += ratio;
    if (ratio < worst) worst = ratio;

    bool any_idle = max_channels > scenario.wifi_aps.size();
    std::snprintf(line, sizeof(line), "%-6u %-12.6f %-12.6f %-8.4f %s\n",
                  i, opt.best_total, mid_total, ratio, any_idle ? "yes" : "no");
    out += line;
  }
  std::snprintf(line, sizeof(line),
                "mean mid/optimal ratio: %.4f   worst: %.4f\n",
                ratio_sum / num_seeds, worst);
  out += line;
  return out;
}

}  // namespace coexsim
