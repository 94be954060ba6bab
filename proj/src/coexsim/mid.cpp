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

#include "coexsim/mid.hpp"

#include <limits>
#include <string>
#include <vector>

#include "coexsim/errors.hpp"

namespace coexsim {

MidDecision select_channel_mid(const Scenario& scenario,
                               const ChannelAssignment& partial,
                               std::uint32_t ue_id,
                               [[maybe_unused]] const RadioParams& params) {
  if (ue_id >= scenario.laa_ues.size()) {
    throw LookupError("unknown LAA UE id " + std::to_string(ue_id));
  }
  if (partial.has(ue_id)) {
    throw PreconditionError("LAA UE " + std::to_string(ue_id) +
                            " is already assigned");
  }
  const Position& ue_pos = scenario.laa_ues[ue_id].pos;
  const std::uint32_t num_channels = scenario.config.num_channels;

  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> nearest(num_channels, kInf);

  // One pass over both interferer classes fills per-channel occupancy and
  // nearest-interferer distance; cost is independent of the channel count.
  for (const WifiAp& ap : scenario.wifi_aps) {
    double d = distance(ap.pos, ue_pos);
    if (d < nearest[ap.occupied]) nearest[ap.occupied] = d;
  }
  for (const LaaUe& other : scenario.laa_ues) {
    if (other.id == ue_id) continue;
    auto ch = partial.channel_of(other.id);
    if (!ch.has_value()) continue;
    double d = distance(other.pos, ue_pos);
    if (d < nearest[*ch]) nearest[*ch] = d;
  }

  for (ChannelId c = 0; c < num_channels; ++c) {
    if (nearest[c] == kInf) {
      return {c, true, kInf};
    }
  }

  ChannelId best = 0;
  for (ChannelId c = 1; c < num_channels; ++c) {
    if (nearest[c] > nearest[best]) best = c;
  }
  return {best, false, nearest[best]};
}

ChannelAssignment assign_all_mid(const Scenario& scenario,
                                 const RadioParams& params) {
  ChannelAssignment assignment(scenario.laa_ues.size());
  for (const LaaUe& ue : scenario.laa_ues) {
    MidDecision decision = select_channel_mid(scenario, assignment, ue.id, params);
    assignment.assign(ue.id, decision.chosen);
  }
  return assignment;
}

}  // namespace coexsim
