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

#include "coexsim/radio.hpp"

#include <bit>
#include <string>

#include "coexsim/errors.hpp"
#include "coexsim/rng.hpp"

namespace coexsim {
namespace {

// Block fade for one link: unit-mean exponential, keyed on the endpoints so
// repeated evaluations of the same link agree.
double link_fade(const Position& tx, const Position& rx,
                 const RadioParams& params) {
  std::uint64_t key = derive_seed(
      params.fading_seed,
      {std::bit_cast<std::uint64_t>(tx.x), std::bit_cast<std::uint64_t>(tx.y),
       std::bit_cast<std::uint64_t>(rx.x), std::bit_cast<std::uint64_t>(rx.y)});
  RngStream rng(key);
  return rng.exponential();
}

const LaaUe& find_ue(const Scenario& scenario, std::uint32_t ue_id) {
  if (ue_id >= scenario.laa_ues.size()) {
    throw LookupError("unknown LAA UE id " + std::to_string(ue_id));
  }
  return scenario.laa_ues[ue_id];
}

}  // namespace

void RadioParams::validate() const {
  if (!(p_laa > 0.0) || !(p_wifi_ap > 0.0) || !(noise > 0.0)) {
    throw ConfigError("all powers must be > 0");
  }
  if (!(t_max_ms > 0.0)) {
    throw ConfigError("t_max_ms must be > 0");
  }
  if (!(i_cca_ms >= 0.0)) {
    throw ConfigError("i_cca_ms must be >= 0");
  }
  if (!(d0 > 0.0)) {
    throw ConfigError("d0 must be > 0");
  }
  if (!(path_loss_exponent > 0.0)) {
    throw ConfigError("path_loss_exponent must be > 0");
  }
}

double fading_gain(const Position& tx, const Position& rx,
                   const RadioParams& params) {
  double d = distance(tx, rx);
  if (d < params.d0) d = params.d0;
  double pl_db =
      params.pl0_db + 10.0 * params.path_loss_exponent * std::log10(d / params.d0);
  double gain = std::pow(10.0, -pl_db / 10.0);
  if (params.rayleigh_fading) {
    gain *= link_fade(tx, rx, params);
  }
  return gain;
}

InterferenceBreakdown interference_at_ue(const Scenario& scenario,
                                         const ChannelAssignment& assignment,
                                         std::uint32_t ue_id, ChannelId channel,
                                         const RadioParams& params) {
  const LaaUe& ue = find_ue(scenario, ue_id);
  if (channel >= scenario.config.num_channels) {
    throw RangeError("channel " + std::to_string(channel) + " out of range");
  }

  InterferenceBreakdown out;
  for (const WifiAp& ap : scenario.wifi_aps) {
    if (ap.occupied != channel) continue;
    out.ap_to_ue += params.p_wifi_ap * fading_gain(ap.pos, ue.pos, params);
  }
  for (const LaaUe& other : scenario.laa_ues) {
    if (other.id == ue_id) continue;
    auto ch = assignment.channel_of(other.id);
    if (!ch.has_value() || *ch != channel) continue;
    out.ue_to_ue += params.p_laa * fading_gain(other.pos, ue.pos, params);
  }
  return out;
}

double throughput_from_link(double num, double deno,
                            const RadioParams& params) {
  double ratio = num / deno;
  double rate = params.use_log2 ? std::log2(1.0 + ratio) : std::log10(1.0 + ratio);
  return params.t_max_ms * rate / (params.i_cca_ms + params.t_max_ms);
}

double throughput_ue(const Scenario& scenario,
                     const ChannelAssignment& assignment, std::uint32_t ue_id,
                     const RadioParams& params) {
  const LaaUe& ue = find_ue(scenario, ue_id);
  auto channel = assignment.channel_of(ue_id);
  if (!channel.has_value()) {
    throw PreconditionError("LAA UE " + std::to_string(ue_id) +
                            " has no assigned channel");
  }
  const Position& serving =
      params.serve_from_mbs ? scenario.mbs : scenario.sbs[ue.serving_sbs];
  double num = params.p_laa * fading_gain(serving, ue.pos, params);
  InterferenceBreakdown interference =
      interference_at_ue(scenario, assignment, ue_id, *channel, params);
  double deno = interference.total() + params.noise;
  return throughput_from_link(num, deno, params);
}

double assigned_throughput(const Scenario& scenario,
                           const ChannelAssignment& assignment,
                           const RadioParams& params) {
  double total = 0.0;
  for (const LaaUe& ue : scenario.laa_ues) {
    if (!assignment.has(ue.id)) continue;
    total += throughput_ue(scenario, assignment, ue.id, params);
  }
  return total;
}

ThroughputReport total_throughput(const Scenario& scenario,
                                  const ChannelAssignment& assignment,
                                  const RadioParams& params) {
  if (assignment.size() != scenario.laa_ues.size() || !assignment.complete()) {
    throw PreconditionError("assignment must cover every LAA UE");
  }
  ThroughputReport report;
  report.per_ue.reserve(scenario.laa_ues.size());
  report.breakdown.reserve(scenario.laa_ues.size());
  for (const LaaUe& ue : scenario.laa_ues) {
    ChannelId channel = *assignment.channel_of(ue.id);
    report.breakdown.push_back(
        interference_at_ue(scenario, assignment, ue.id, channel, params));
    double thr = throughput_ue(scenario, assignment, ue.id, params);
    report.per_ue.push_back(thr);
    report.total += thr;
  }
  return report;
}

}  // namespace coexsim
