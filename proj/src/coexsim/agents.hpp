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

#ifndef COEXSIM_AGENTS_HPP_
#define COEXSIM_AGENTS_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "coexsim/env.hpp"
#include "coexsim/nn.hpp"

namespace coexsim {

enum class AgentKind { kMid, kTabular, kDqn, kDoubleDqn, kDuelingDqn };

std::string_view agent_kind_name(AgentKind kind);
AgentKind agent_kind_from(std::string_view name);  // throws ParseError
inline bool is_learning_agent(AgentKind kind) { return kind != AgentKind::kMid; }
inline bool uses_network(AgentKind kind) {
  return kind == AgentKind::kDqn || kind == AgentKind::kDoubleDqn ||
         kind == AgentKind::kDuelingDqn;
}

struct Hyperparams {
  double alpha = 0.05;  // tabular learning rate
  double gamma = 0.9;
  std::uint32_t train_iterations = 20000;
  TrainConfig train;

  void validate() const;  // throws ConfigError
};

// Action-value table with implicit zeros for unseen states.
class TabularQ {
 public:
  explicit TabularQ(std::size_t num_actions);

  std::size_t num_actions() const { return num_actions_; }
  std::size_t num_states() const { return table_.size(); }

  double get(std::uint64_t state, std::uint32_t action) const;
  void set(std::uint64_t state, std::uint32_t action, double value);
  std::vector<double> row(std::uint64_t state) const;

  void save(std::ostream& out) const;  // entries sorted by state key
  static TabularQ load(std::istream& in);

  friend bool operator==(const TabularQ&, const TabularQ&) = default;

 private:
  std::size_t num_actions_;
  std::unordered_map<std::uint64_t, std::vector<double>> table_;
};

//   Q(s,a) <- (1-alpha) Q(s,a) + alpha (r + gamma max_a' Q(s',a'))
// with the max term dropped for terminal transitions (s_next empty).
void q_update_tabular(TabularQ& q, std::uint64_t state, std::uint32_t action,
                      double reward, std::optional<std::uint64_t> state_next,
                      const Hyperparams& hp);

// Bootstrap target with the delayed copy:  r + gamma max_a Q_target(s', a).
// Terminal transitions return the reward alone.
double dqn_target(double reward, const StateVec& next_state, const Mlp& online,
                  const Mlp& target_net, double gamma, bool terminal);

// Decoupled selection/evaluation:
//   r + gamma Q_target(s', argmax_a Q_online(s', a)).
double double_dqn_target(double reward, const StateVec& next_state,
                         const Mlp& online, const Mlp& target_net, double gamma,
                         bool terminal);

// Quantizes a state encoding for the table: positions onto an 8x8 grid over
// the deployment disc, each per-channel interference term into 4 log-scale
// buckets. Supports up to 29 channels in the 64-bit key.
std::uint64_t discretize_state(const StateVec& state, std::size_t num_channels);

// What the agent's estimator needs to know about the observation layout.
struct EncodingSpec {
  std::uint32_t num_channels = 15;
  double mbs_radius = 500.0;
};

// One learning agent: a Q-table or an online/target network pair, plus the
// action-selection policy. MID has no agent state; constructing one here is
// an error.
class Agent {
 public:
  static Agent make(AgentKind kind, const EncodingSpec& enc,
                    const Hyperparams& hp, std::uint64_t seed);

  AgentKind kind() const { return kind_; }
  const EncodingSpec& encoding() const { return enc_; }
  const Hyperparams& hyperparams() const { return hp_; }

  std::vector<double> q_values(const StateVec& state) const;

  // Epsilon-greedy: uniform random channel with probability epsilon, else
  // the greedy argmax with ties to the lowest index.
  ChannelId select_action(const StateVec& state, double epsilon,
                          RngStream& rng) const;

  TabularQ& table() { return table_; }
  const TabularQ& table() const { return table_; }
  Mlp& online() { return online_; }
  const Mlp& online() const { return online_; }
  Mlp& target() { return target_; }
  const Mlp& target() const { return target_; }

  void save(std::ostream& out) const;
  static Agent load(std::istream& in);

 private:
  Agent(AgentKind kind, EncodingSpec enc, Hyperparams hp);

  AgentKind kind_;
  EncodingSpec enc_;
  Hyperparams hp_;
  TabularQ table_;
  Mlp online_;
  Mlp target_;
};

struct TrainLogEntry {
  std::uint32_t episode = 0;
  std::uint32_t steps = 0;
  double episode_return = 0.0;  // equals the episode's final total throughput

  friend bool operator==(const TrainLogEntry&, const TrainLogEntry&) = default;
};

struct TrainResult {
  Agent agent;
  std::vector<TrainLogEntry> log;
};

// Runs hp.train_iterations environment steps: epsilon-greedy action, replay
// push, minibatch target computation per kind, one SGD step, periodic
// target refresh. Tabular agents update their table directly. Deterministic
// in (kind, sampler, hp, seed).
TrainResult train_agent(AgentKind kind, const ScenarioSampler& sampler,
                        const RadioParams& params, const EncodingSpec& enc,
                        const Hyperparams& hp, std::uint64_t seed);

// Greedy (epsilon = 0) sequential assignment in UE-id order; a pure
// function of the agent parameters and the scenario.
ChannelAssignment assign_all_learned(const Agent& agent,
                                     const Scenario& scenario,
                                     const RadioParams& params);

}  // namespace coexsim

#endif  // COEXSIM_AGENTS_HPP_
