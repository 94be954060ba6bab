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

#ifndef COEXSIM_ENV_HPP_
#define COEXSIM_ENV_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "coexsim/radio.hpp"
#include "coexsim/rng.hpp"
#include "coexsim/topology.hpp"

namespace coexsim {

using StateVec = std::vector<double>;

// Produces the next episode's deployment; may consume rng draws.
using ScenarioSampler = std::function<Scenario(RngStream&)>;

// Fresh random deployment per episode: the base config with a new seed
// drawn from the stream.
ScenarioSampler make_config_sampler(ScenarioConfig base);

// The same deployment every episode.
ScenarioSampler make_fixed_sampler(Scenario scenario);

// Observation for one UE about to choose a channel:
//   [ x/mbs_radius, y/mbs_radius,
//     log10(1 + I_c/noise) for each channel c ]
// where I_c is the total co-channel interference the UE would see on c
// under the current partial assignment. Length 2 + num_channels.
StateVec encode_state(const Scenario& scenario,
                      const ChannelAssignment& partial, std::uint32_t ue_id,
                      const RadioParams& params);

struct StepOutcome {
  std::optional<StateVec> next_state;  // nullopt once the episode ends
  double reward = 0.0;
  bool done = false;
};

// Episodic decision process: each episode assigns every LAA UE of a freshly
// sampled scenario, one UE per step, in a seeded random order. The reward
// is the change in total throughput over assigned UEs, so per-episode
// rewards telescope to the final assignment's total throughput.
class CoexEnv {
 public:
  CoexEnv(ScenarioSampler sampler, RadioParams params, std::uint64_t seed);

  // Starts a new episode; returns the first UE's encoding, or nullopt for
  // an immediately terminal (zero-UE) episode.
  std::optional<StateVec> reset();

  // Assigns the current UE to `action`. Throws StateError once done,
  // RangeError for an invalid channel.
  StepOutcome step(ChannelId action);

  bool done() const { return !started_ || cursor_ >= order_.size(); }
  const Scenario& scenario() const { return scenario_; }
  const ChannelAssignment& partial() const { return partial_; }
  const std::vector<std::uint32_t>& decision_order() const { return order_; }
  std::uint32_t current_ue() const;

 private:
  ScenarioSampler sampler_;
  RadioParams params_;
  RngStream rng_;
  Scenario scenario_;
  ChannelAssignment partial_;
  std::vector<std::uint32_t> order_;
  std::size_t cursor_ = 0;
  bool started_ = false;
};

}  // namespace coexsim

#endif  // COEXSIM_ENV_HPP_
