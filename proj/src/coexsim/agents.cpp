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

#include "coexsim/agents.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <utility>

#include "coexsim/errors.hpp"

namespace coexsim {
namespace {

constexpr std::size_t kPositionBits = 3;   // 8x8 grid
constexpr std::size_t kBucketBits = 2;     // 4 interference buckets
constexpr std::size_t kMaxTabularChannels =
    (64 - 2 * kPositionBits) / kBucketBits;

std::uint64_t position_bin(double normalized) {
  double shifted = (normalized + 1.0) * 0.5 * 8.0;
  auto bin = static_cast<std::int64_t>(std::floor(shifted));
  if (bin < 0) bin = 0;
  if (bin > 7) bin = 7;
  return static_cast<std::uint64_t>(bin);
}

// Buckets on e = log10(1 + I/noise): idle, <= 20 dB, <= 40 dB, above.
std::uint64_t interference_bucket(double e) {
  if (e <= 0.0) return 0;
  if (e <= 2.0) return 1;
  if (e <= 4.0) return 2;
  return 3;
}

std::uint32_t argmax_lowest(const std::vector<double>& values) {
  std::uint32_t best = 0;
  for (std::uint32_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) best = i;
  }
  return best;
}

double epsilon_at(std::uint32_t step, double start, double end,
                  std::uint32_t decay_steps) {
  if (decay_steps == 0 || step >= decay_steps) return end;
  return start + (end - start) * (static_cast<double>(step) /
                                  static_cast<double>(decay_steps));
}

}  // namespace

std::string_view agent_kind_name(AgentKind kind) {
  switch (kind) {
    case AgentKind::kMid: return "mid";
    case AgentKind::kTabular: return "tabular";
    case AgentKind::kDqn: return "dqn";
    case AgentKind::kDoubleDqn: return "double_dqn";
    case AgentKind::kDuelingDqn: return "dueling_dqn";
  }
  throw RangeError("invalid agent kind");
}

AgentKind agent_kind_from(std::string_view name) {
  if (name == "mid") return AgentKind::kMid;
  if (name == "tabular") return AgentKind::kTabular;
  if (name == "dqn") return AgentKind::kDqn;
  if (name == "double_dqn") return AgentKind::kDoubleDqn;
  if (name == "dueling_dqn") return AgentKind::kDuelingDqn;
  throw ParseError("unknown agent kind '" + std::string(name) + "'");
}

void Hyperparams::validate() const {
  if (!(alpha > 0.0) || !(alpha <= 1.0)) {
    throw ConfigError("alpha must be in (0, 1]");
  }
  if (!(gamma >= 0.0) || !(gamma <= 1.0)) {
    throw ConfigError("gamma must be in [0, 1]");
  }
  train.validate();
}

TabularQ::TabularQ(std::size_t num_actions) : num_actions_(num_actions) {
  if (num_actions == 0) throw ConfigError("table needs num_actions >= 1");
}

double TabularQ::get(std::uint64_t state, std::uint32_t action) const {
  if (action >= num_actions_) throw RangeError("action out of range");
  auto it = table_.find(state);
  if (it == table_.end()) return 0.0;
  return it->second[action];
}

void TabularQ::set(std::uint64_t state, std::uint32_t action, double value) {
  if (action >= num_actions_) throw RangeError("action out of range");
  if (!std::isfinite(value)) throw RangeError("Q values must be finite");
  auto it = table_.find(state);
  if (it == table_.end()) {
    it = table_.emplace(state, std::vector<double>(num_actions_, 0.0)).first;
  }
  it->second[action] = value;
}

std::vector<double> TabularQ::row(std::uint64_t state) const {
  auto it = table_.find(state);
  if (it == table_.end()) return std::vector<double>(num_actions_, 0.0);
  return it->second;
}

void TabularQ::save(std::ostream& out) const {
  std::map<std::uint64_t, const std::vector<double>*> sorted;
  for (const auto& [key, row] : table_) sorted.emplace(key, &row);
  out << "table " << num_actions_ << ' ' << sorted.size() << '\n';
  char buf[32];
  for (const auto& [key, row] : sorted) {
    out << key;
    for (double v : *row) {
      std::snprintf(buf, sizeof(buf), " %.17g", v);
      out << buf;
    }
    out << '\n';
  }
}

TabularQ TabularQ::load(std::istream& in) {
  std::string token;
  std::size_t actions = 0;
  std::size_t entries = 0;
  if (!(in >> token) || token != "table" || !(in >> actions >> entries)) {
    throw ParseError("expected 'table <actions> <entries>'");
  }
  TabularQ q(actions);
  for (std::size_t e = 0; e < entries; ++e) {
    std::uint64_t key = 0;
    if (!(in >> key)) throw ParseError("truncated table entry");
    std::vector<double> row(actions);
    for (double& v : row) {
      if (!(in >> v)) throw ParseError("truncated table row");
    }
    q.table_.emplace(key, std::move(row));
  }
  return q;
}

void q_update_tabular(TabularQ& q, std::uint64_t state, std::uint32_t action,
                      double reward, std::optional<std::uint64_t> state_next,
                      const Hyperparams& hp) {
  hp.validate();
  double max_next = 0.0;
  if (state_next.has_value()) {
    std::vector<double> row = q.row(*state_next);
    max_next = *std::max_element(row.begin(), row.end());
  }
  double old = q.get(state, action);
  double updated =
      (1.0 - hp.alpha) * old + hp.alpha * (reward + hp.gamma * max_next);
  q.set(state, action, updated);
}

double dqn_target(double reward, const StateVec& next_state,
                  [[maybe_unused]] const Mlp& online, const Mlp& target_net,
                  double gamma, bool terminal) {
  if (terminal) return reward;
  std::vector<double> q = target_net.forward(next_state);
  return reward + gamma * *std::max_element(q.begin(), q.end());
}

double double_dqn_target(double reward, const StateVec& next_state,
                         const Mlp& online, const Mlp& target_net, double gamma,
                         bool terminal) {
  if (terminal) return reward;
  std::vector<double> q_online = online.forward(next_state);
  std::uint32_t best = argmax_lowest(q_online);
  std::vector<double> q_target = target_net.forward(next_state);
  return reward + gamma * q_target[best];
}

std::uint64_t discretize_state(const StateVec& state,
                               std::size_t num_channels) {
  if (state.size() != 2 + num_channels) {
    throw ShapeError("state length does not match 2 + num_channels");
  }
  if (num_channels > kMaxTabularChannels) {
    throw ConfigError("tabular discretization supports at most " +
                      std::to_string(kMaxTabularChannels) + " channels");
  }
  std::uint64_t key = position_bin(state[0]);
  key = (key << kPositionBits) | position_bin(state[1]);
  for (std::size_t c = 0; c < num_channels; ++c) {
    key = (key << kBucketBits) | interference_bucket(state[2 + c]);
  }
  return key;
}

Agent::Agent(AgentKind kind, EncodingSpec enc, Hyperparams hp)
    : kind_(kind), enc_(enc), hp_(std::move(hp)), table_(enc.num_channels) {}

Agent Agent::make(AgentKind kind, const EncodingSpec& enc,
                  const Hyperparams& hp, std::uint64_t seed) {
  if (!is_learning_agent(kind)) {
    throw ConfigError("MID is not a learning agent");
  }
  hp.validate();
  if (enc.num_channels == 0) throw ConfigError("need num_channels >= 1");
  if (!(enc.mbs_radius > 0.0)) throw ConfigError("need mbs_radius > 0");
  if (kind == AgentKind::kTabular && enc.num_channels > kMaxTabularChannels) {
    throw ConfigError("tabular agent supports at most " +
                      std::to_string(kMaxTabularChannels) + " channels");
  }

  Agent agent(kind, enc, hp);
  if (uses_network(kind)) {
    agent.online_ = Mlp::q_network(2 + enc.num_channels, enc.num_channels,
                                   kind == AgentKind::kDuelingDqn, seed);
    agent.target_ = clone_to_target(agent.online_);
  }
  return agent;
}

std::vector<double> Agent::q_values(const StateVec& state) const {
  if (uses_network(kind_)) {
    return online_.forward(state);
  }
  return table_.row(discretize_state(state, enc_.num_channels));
}

ChannelId Agent::select_action(const StateVec& state, double epsilon,
                               RngStream& rng) const {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw RangeError("epsilon must be in [0, 1]");
  }
  if (epsilon > 0.0 && rng.uniform() < epsilon) {
    return rng.uniform_int(enc_.num_channels);
  }
  return argmax_lowest(q_values(state));
}

void Agent::save(std::ostream& out) const {
  char buf[64];
  out << "coexsim-agent 1\n";
  out << "kind " << agent_kind_name(kind_) << '\n';
  out << "num_channels " << enc_.num_channels << '\n';
  std::snprintf(buf, sizeof(buf), "%.17g", enc_.mbs_radius);
  out << "mbs_radius " << buf << '\n';
  std::snprintf(buf, sizeof(buf), "%.17g %.17g", hp_.alpha, hp_.gamma);
  out << "alpha_gamma " << buf << '\n';
  out << "train_iterations " << hp_.train_iterations << '\n';
  std::snprintf(buf, sizeof(buf), "%.17g", hp_.train.learning_rate);
  out << "learning_rate " << buf << '\n';
  out << "batch_size " << hp_.train.batch_size << '\n';
  out << "target_update_period " << hp_.train.target_update_period << '\n';
  out << "buffer_capacity " << hp_.train.buffer_capacity << '\n';
  std::snprintf(buf, sizeof(buf), "%.17g %.17g", hp_.train.epsilon_start,
                hp_.train.epsilon_end);
  out << "epsilon " << buf << '\n';
  out << "epsilon_decay_steps " << hp_.train.epsilon_decay_steps << '\n';
  if (uses_network(kind_)) {
    online_.save(out);
  } else {
    table_.save(out);
  }
}

Agent Agent::load(std::istream& in) {
  auto expect = [&in](const char* name) {
    std::string token;
    if (!(in >> token) || token != name) {
      throw ParseError(std::string("expected '") + name + "' field");
    }
  };

  std::string magic;
  int version = 0;
  if (!(in >> magic >> version) || magic != "coexsim-agent" || version != 1) {
    throw ParseError("not a coexsim-agent v1 checkpoint");
  }

  expect("kind");
  std::string kind_name;
  in >> kind_name;
  AgentKind kind = agent_kind_from(kind_name);

  EncodingSpec enc;
  Hyperparams hp;
  expect("num_channels");
  in >> enc.num_channels;
  expect("mbs_radius");
  in >> enc.mbs_radius;
  expect("alpha_gamma");
  in >> hp.alpha >> hp.gamma;
  expect("train_iterations");
  in >> hp.train_iterations;
  expect("learning_rate");
  in >> hp.train.learning_rate;
  expect("batch_size");
  in >> hp.train.batch_size;
  expect("target_update_period");
  in >> hp.train.target_update_period;
  expect("buffer_capacity");
  in >> hp.train.buffer_capacity;
  expect("epsilon");
  in >> hp.train.epsilon_start >> hp.train.epsilon_end;
  expect("epsilon_decay_steps");
  in >> hp.train.epsilon_decay_steps;
  if (!in) throw ParseError("truncated agent header");

  Agent agent(kind, enc, hp);
  agent.hp_.validate();
  if (uses_network(kind)) {
    agent.online_ = Mlp::load(in);
    agent.target_ = agent.online_;
  } else {
    agent.table_ = TabularQ::load(in);
  }
  return agent;
}

TrainResult train_agent(AgentKind kind, const ScenarioSampler& sampler,
                        const RadioParams& params, const EncodingSpec& enc,
                        const Hyperparams& hp, std::uint64_t seed) {
  if (!is_learning_agent(kind)) {
    throw ConfigError("MID is not trainable");
  }
  hp.validate();

  TrainResult result{Agent::make(kind, enc, hp, derive_seed(seed, {tag_hash("init")})),
                     {}};
  if (hp.train_iterations == 0) return result;

  Agent& agent = result.agent;
  CoexEnv env(sampler, params, derive_seed(seed, {tag_hash("env")}));
  RngStream action_rng(derive_seed(seed, {tag_hash("action")}));
  RngStream replay_rng(derive_seed(seed, {tag_hash("replay")}));
  ReplayBuffer buffer(hp.train.buffer_capacity);

  const std::uint32_t decay = hp.train.epsilon_decay_steps != 0
                                  ? hp.train.epsilon_decay_steps
                                  : std::max(1u, hp.train_iterations / 2);

  std::optional<StateVec> state = env.reset();
  if (!state.has_value()) {
    throw PreconditionError("training needs scenarios with at least one LAA UE");
  }

  std::uint32_t episode = 0;
  std::uint32_t episode_steps = 0;
  double episode_return = 0.0;
  std::vector<TrainSample> batch_samples;

  for (std::uint32_t step = 0; step < hp.train_iterations; ++step) {
    double epsilon =
        epsilon_at(step, hp.train.epsilon_start, hp.train.epsilon_end, decay);
    ChannelId action = agent.select_action(*state, epsilon, action_rng);
    StepOutcome outcome = env.step(action);
    episode_return += outcome.reward;
    ++episode_steps;

    if (kind == AgentKind::kTabular) {
      std::uint64_t s_key = discretize_state(*state, enc.num_channels);
      std::optional<std::uint64_t> next_key;
      if (!outcome.done) {
        next_key = discretize_state(*outcome.next_state, enc.num_channels);
      }
      q_update_tabular(agent.table(), s_key, action, outcome.reward, next_key, hp);
    } else {
      Transition t;
      t.state = *state;
      t.action = action;
      t.reward = outcome.reward;
      t.terminal = outcome.done;
      if (!outcome.done) t.next_state = *outcome.next_state;
      buffer.push(std::move(t));

      if (buffer.size() >= hp.train.batch_size) {
        std::vector<Transition> minibatch =
            buffer.sample(hp.train.batch_size, replay_rng);
        batch_samples.clear();
        batch_samples.reserve(minibatch.size());
        for (const Transition& tr : minibatch) {
          double target =
              kind == AgentKind::kDoubleDqn
                  ? double_dqn_target(tr.reward, tr.next_state, agent.online(),
                                      agent.target(), hp.gamma, tr.terminal)
                  : dqn_target(tr.reward, tr.next_state, agent.online(),
                               agent.target(), hp.gamma, tr.terminal);
          batch_samples.push_back({tr.state, tr.action, target});
        }
        Gradients grads = agent.online().backward(batch_samples);
        sgd_step(agent.online(), grads, hp.train.learning_rate);
      }
      if ((step + 1) % hp.train.target_update_period == 0) {
        agent.target() = clone_to_target(agent.online());
      }
    }

    if (outcome.done) {
      result.log.push_back({episode, episode_steps, episode_return});
      ++episode;
      episode_steps = 0;
      episode_return = 0.0;
      state = env.reset();
      if (!state.has_value()) {
        throw PreconditionError(
            "training needs scenarios with at least one LAA UE");
      }
    } else {
      state = std::move(outcome.next_state);
    }
  }
  return result;
}

ChannelAssignment assign_all_learned(const Agent& agent,
                                     const Scenario& scenario,
                                     const RadioParams& params) {
  if (scenario.config.num_channels != agent.encoding().num_channels) {
    throw ShapeError("scenario channel count does not match the agent");
  }
  ChannelAssignment assignment(scenario.laa_ues.size());
  for (const LaaUe& ue : scenario.laa_ues) {
    StateVec state = encode_state(scenario, assignment, ue.id, params);
    assignment.assign(ue.id, argmax_lowest(agent.q_values(state)));
  }
  return assignment;
}

}  // namespace coexsim
