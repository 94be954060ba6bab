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

#ifndef COEXSIM_RADIO_HPP_
#define COEXSIM_RADIO_HPP_

#include <cmath>
#include <cstdint>
#include <vector>

#include "coexsim/topology.hpp"

namespace coexsim {

// Physical constants of the normalized-throughput formula plus the
// log-distance path-loss model parameters. Powers in watts, times in ms.
struct RadioParams {
  double p_laa = 1.0e-3 * std::pow(10.0, 24.0 / 10.0);      // 24 dBm
  double p_wifi_ap = 1.0e-3 * std::pow(10.0, 23.0 / 10.0);  // 23 dBm
  double t_max_ms = 10.0;
  double i_cca_ms = 0.0034;
  double noise = 2.0e-13;
  double pl0_db = 30.0;           // path loss at the reference distance
  double d0 = 1.0;                // reference distance, meters
  double path_loss_exponent = 3.5;
  bool serve_from_mbs = false;    // serving transmitter: SBS (default) or MBS
  bool rayleigh_fading = false;   // optional seeded per-link fast fading
  std::uint64_t fading_seed = 0;
  bool use_log2 = false;          // rate law: log10 as printed, log2 optional

  void validate() const;  // throws ConfigError
};

// Received-power sums over co-channel interferers, in watts.
struct InterferenceBreakdown {
  double ap_to_ue = 0.0;
  double ue_to_ue = 0.0;

  double total() const { return ap_to_ue + ue_to_ue; }
};

struct ThroughputReport {
  std::vector<double> per_ue;                    // normalized, dimensionless
  std::vector<InterferenceBreakdown> breakdown;  // indexed by UE id
  double total = 0.0;                            // sum over LAA UEs
};

// Linear channel gain between two points under the log-distance model:
//   PL(d) = pl0_db + 10 * exponent * log10(max(d, d0) / d0)
//   gain  = 10^(-PL(d)/10)
// Distances below d0 (including coincident points) are clamped to d0.
// With rayleigh_fading set, the gain is additionally multiplied by a
// unit-mean exponential fade derived deterministically from the fading
// seed and the two endpoints, so the function stays pure.
double fading_gain(const Position& tx, const Position& rx,
                   const RadioParams& params);

// Co-channel interference the given UE would see on `channel`: Wi-Fi APs
// occupying it plus OTHER LAA UEs assigned to it. Unassigned UEs contribute
// nothing. The UE's own (hypothetical) assignment is never counted.
InterferenceBreakdown interference_at_ue(const Scenario& scenario,
                                         const ChannelAssignment& assignment,
                                         std::uint32_t ue_id, ChannelId channel,
                                         const RadioParams& params);

// The normalized-rate law applied to one link:
//   t_max * log10(1 + num/deno) / (i_cca + t_max)
double throughput_from_link(double num, double deno, const RadioParams& params);

// Normalized throughput of one assigned UE. The numerator is the serving
// transmitter's received power (its SBS by default), the denominator the
// co-channel interference on its assigned channel plus noise.
double throughput_ue(const Scenario& scenario,
                     const ChannelAssignment& assignment, std::uint32_t ue_id,
                     const RadioParams& params);

// Sum of throughput_ue over the UEs that currently have a channel; the
// partial-assignment form used while decisions are still being made.
double assigned_throughput(const Scenario& scenario,
                           const ChannelAssignment& assignment,
                           const RadioParams& params);

// Full per-UE report; requires a complete assignment.
ThroughputReport total_throughput(const Scenario& scenario,
                                  const ChannelAssignment& assignment,
                                  const RadioParams& params);

}  // namespace coexsim

#endif  // COEXSIM_RADIO_HPP_
