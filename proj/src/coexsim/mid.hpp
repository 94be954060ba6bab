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

#ifndef COEXSIM_MID_HPP_
#define COEXSIM_MID_HPP_

#include <cstdint>

#include "coexsim/radio.hpp"
#include "coexsim/topology.hpp"

namespace coexsim {

struct MidDecision {
  ChannelId chosen = 0;
  bool idle = false;
  // Distance to the nearest co-channel interferer on the chosen channel;
  // +infinity when the channel is idle.
  double min_interferer_distance = 0.0;
};

// Minimum-interference-distance channel selection for one unassigned UE.
// A channel is idle when it has no co-channel Wi-Fi AP and no co-channel
// already-assigned LAA UE; the lowest-indexed idle channel wins. With no
// idle channel, the channel whose nearest interferer is farthest wins
// (maximin), ties to the lowest index.
MidDecision select_channel_mid(const Scenario& scenario,
                               const ChannelAssignment& partial,
                               std::uint32_t ue_id, const RadioParams& params);

// Assigns every LAA UE by repeated select_channel_mid in UE-id order;
// earlier assignments are visible to later decisions. Deterministic.
ChannelAssignment assign_all_mid(const Scenario& scenario,
                                 const RadioParams& params);

}  // namespace coexsim

#endif  // COEXSIM_MID_HPP_
