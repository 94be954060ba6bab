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

#include "coexsim/env.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "coexsim/errors.hpp"

namespace coexsim {

ScenarioSampler make_config_sampler(ScenarioConfig base) {
  base.validate();
  return [base](RngStream& rng) {
    ScenarioConfig config = base;
    config.seed = rng.next_u64();
    return generate_scenario(config);
  };
}

ScenarioSampler make_fixed_sampler(Scenario scenario) {
  return [scenario](RngStream&) { return scenario; };
}

StateVec encode_state(const Scenario& scenario,
                      const ChannelAssignment& partial, std::uint32_t ue_id,
                      const RadioParams& params) {
  if (ue_id >= scenario.laa_ues.size()) {
    throw LookupError("unknown LAA UE id " + std::to_string(ue_id));
  }
  const LaaUe& ue = scenario.laa_ues[ue_id];
  const double radius = scenario.config.mbs_radius;

  StateVec state;
  state.reserve(2 + scenario.config.num_channels);
  state.push_back(ue.pos.x / radius);
  state.push_back(ue.pos.y / radius);
  for (ChannelId c = 0; c < scenario.config.num_channels; ++c) {
    InterferenceBreakdown interference =
        interference_at_ue(scenario, partial, ue_id, c, params);
    state.push_back(std::log10(1.0 + interference.total() / params.noise));
  }
  return state;
}

CoexEnv::CoexEnv(ScenarioSampler sampler, RadioParams params,
                 std::uint64_t seed)
    : sampler_(std::move(sampler)),
      params_(std::move(params)),
      rng_(seed) {
  if (!sampler_) throw ConfigError("env needs a scenario sampler");
  params_.validate();
}

std::optional<StateVec> CoexEnv::reset() {
  scenario_ = sampler_(rng_);
  const std::size_t n = scenario_.laa_ues.size();
  partial_ = ChannelAssignment(n);
  order_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    order_[i] = static_cast<std::uint32_t>(i);
  }
  // Fisher-Yates with the episode stream.
  for (std::size_t i = n; i > 1; --i) {
    std::size_t j = rng_.uniform_int(static_cast<std::uint32_t>(i));
    std::swap(order_[i - 1], order_[j]);
  }
  cursor_ = 0;
  started_ = true;
  if (n == 0) return std::nullopt;
  return encode_state(scenario_, partial_, order_[0], params_);
}

std::uint32_t CoexEnv::current_ue() const {
  if (done()) throw StateError("episode is finished");
  return order_[cursor_];
}

StepOutcome CoexEnv::step(ChannelId action) {
  if (done()) throw StateError("step called on a finished episode");
  if (action >= scenario_.config.num_channels) {
    throw RangeError("channel " + std::to_string(action) + " out of range");
  }

  double before = assigned_throughput(scenario_, partial_, params_);
  partial_.assign(order_[cursor_], action);
  double after = assigned_throughput(scenario_, partial_, params_);
  ++cursor_;

  StepOutcome outcome;
  outcome.reward = after - before;
  outcome.done = cursor_ >= order_.size();
  if (!outcome.done) {
    outcome.next_state =
        encode_state(scenario_, partial_, order_[cursor_], params_);
  }
  return outcome;
}

}  // namespace coexsim
