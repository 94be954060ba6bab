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

#include "coexsim/selfcheck.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>

#include "coexsim/agents.hpp"
#include "coexsim/env.hpp"
#include "coexsim/errors.hpp"
#include "coexsim/harness.hpp"
#include "coexsim/mid.hpp"
#include "coexsim/nn.hpp"
#include "coexsim/radio.hpp"
#include "coexsim/rng.hpp"
#include "coexsim/topology.hpp"

namespace coexsim {
namespace {

ScenarioConfig small_config(std::uint64_t seed) {
  ScenarioConfig config;
  config.num_channels = 5;
  config.num_sbs = 3;
  config.num_laa_ue = 8;
  config.num_wifi_ap = 4;
  config.num_wifi_ue_per_ap = 1;
  config.seed = seed;
  return config;
}

bool check_scenario_determinism(std::string& detail) {
  ScenarioConfig config = small_config(42);
  if (dump_scenario(generate_scenario(config)) !=
      dump_scenario(generate_scenario(config))) {
    detail = "same config produced different deployments";
    return false;
  }
  return true;
}

bool check_containment(std::string& detail) {
  RngStream rng(1001);
  for (int trial = 0; trial < 200; ++trial) {
    ScenarioConfig config;
    config.num_channels = 1 + rng.uniform_int(15);
    config.num_sbs = 1 + rng.uniform_int(5);
    config.num_laa_ue = rng.uniform_int(12);
    config.num_wifi_ap = rng.uniform_int(6);
    config.num_wifi_ue_per_ap = rng.uniform_int(3);
    config.mbs_radius = rng.uniform(50.0, 800.0);
    config.sbs_radius = rng.uniform(10.0, 200.0);
    config.ap_radius = rng.uniform(5.0, 50.0);
    config.seed = rng.next_u64();
    Scenario s = generate_scenario(config);
    const double slack = 1e-9;
    for (const Position& p : s.sbs) {
      if (distance(p, s.mbs) > config.mbs_radius + slack) {
        detail = "SBS outside MBS radius";
        return false;
      }
    }
    for (const LaaUe& ue : s.laa_ues) {
      if (distance(ue.pos, s.sbs[ue.serving_sbs]) > config.sbs_radius + slack) {
        detail = "LAA UE outside its SBS radius";
        return false;
      }
    }
    for (const WifiAp& ap : s.wifi_aps) {
      if (distance(ap.pos, s.sbs[ap.serving_sbs]) > config.sbs_radius + slack) {
        detail = "AP outside its SBS radius";
        return false;
      }
      if (ap.occupied >= config.num_channels) {
        detail = "AP channel out of range";
        return false;
      }
    }
    for (const WifiUe& ue : s.wifi_ues) {
      if (distance(ue.pos, s.wifi_aps[ue.serving_ap].pos) >
          config.ap_radius + slack) {
        detail = "Wi-Fi UE outside its AP radius";
        return false;
      }
    }
  }
  return true;
}

bool check_fading_closed_form(std::string& detail) {
  RadioParams params;
  RngStream rng(2002);
  for (int i = 0; i < 100; ++i) {
    Position tx{rng.uniform(-500.0, 500.0), rng.uniform(-500.0, 500.0)};
    Position rx{rng.uniform(-500.0, 500.0), rng.uniform(-500.0, 500.0)};
    double got = fading_gain(tx, rx, params);
    // Alternate algebraic route: gain = g0 * (d0/d)^n.
    double d = std::max(distance(tx, rx), params.d0);
    double expected = std::pow(10.0, -params.pl0_db / 10.0) *
                      std::pow(params.d0 / d, params.path_loss_exponent);
    if (std::abs(got - expected) > 1e-12 * std::abs(expected)) {
      detail = "gain disagrees with the closed form";
      return false;
    }
  }
  return true;
}

bool check_throughput_hand_value(std::string& detail) {
  RadioParams params;
  double got = throughput_from_link(9.0, 1.0, params);
  double expected = 10.0 * std::log10(10.0) / (0.0034 + 10.0);
  if (std::abs(got - expected) > 1e-12) {
    detail = "normalized-rate law hand value mismatch";
    return false;
  }
  return true;
}

bool check_interference_brute_force(std::string& detail) {
  RadioParams params;
  Scenario s = generate_scenario(small_config(7));
  ChannelAssignment assignment(s.laa_ues.size());
  RngStream rng(3003);
  for (const LaaUe& ue : s.laa_ues) {
    assignment.assign(ue.id, rng.uniform_int(s.config.num_channels));
  }
  for (const LaaUe& ue : s.laa_ues) {
    ChannelId channel = *assignment.channel_of(ue.id);
    InterferenceBreakdown got =
        interference_at_ue(s, assignment, ue.id, channel, params);
    double ap_sum = 0.0;
    double ue_sum = 0.0;
    for (const WifiAp& ap : s.wifi_aps) {
      if (ap.occupied == channel) {
        ap_sum += params.p_wifi_ap * fading_gain(ap.pos, ue.pos, params);
      }
    }
    for (const LaaUe& other : s.laa_ues) {
      if (other.id != ue.id && *assignment.channel_of(other.id) == channel) {
        ue_sum += params.p_laa * fading_gain(other.pos, ue.pos, params);
      }
    }
    if (std::abs(got.ap_to_ue - ap_sum) > 1e-12 * (ap_sum + 1e-300) ||
        std::abs(got.ue_to_ue - ue_sum) > 1e-12 * (ue_sum + 1e-300)) {
      detail = "interference sum disagrees with the all-pairs loop";
      return false;
    }
  }
  return true;
}

bool check_mid_idle_priority(std::string& detail) {
  RadioParams params;
  RngStream rng(4004);
  for (int trial = 0; trial < 100; ++trial) {
    ScenarioConfig config = small_config(rng.next_u64());
    config.num_channels = 6;
    config.num_wifi_ap = 3;  // fewer APs than channels: idle must exist
    Scenario s = generate_scenario(config);
    if (s.laa_ues.empty()) continue;
    ChannelAssignment empty(s.laa_ues.size());
    MidDecision d = select_channel_mid(s, empty, 0, params);
    if (!d.idle) {
      detail = "idle channel existed but was not chosen";
      return false;
    }
    if (!std::isinf(d.min_interferer_distance)) {
      detail = "idle decision must carry an infinite distance";
      return false;
    }
  }
  return true;
}

bool check_mid_maximin(std::string& detail) {
  RadioParams params;
  RngStream rng(5005);
  for (int trial = 0; trial < 20; ++trial) {
    ScenarioConfig config;
    config.num_channels = 3;
    config.num_sbs = 2;
    config.num_laa_ue = 5;
    config.num_wifi_ap = 4;
    config.num_wifi_ue_per_ap = 0;
    config.seed = rng.next_u64();
    Scenario s = generate_scenario(config);
    ChannelAssignment partial(s.laa_ues.size());
    for (std::uint32_t ue = 1; ue < 3; ++ue) {
      partial.assign(ue, rng.uniform_int(config.num_channels));
    }
    MidDecision decision = select_channel_mid(s, partial, 0, params);

    // Exhaustive re-derivation over channels x interferers.
    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> nearest(config.num_channels, kInf);
    for (const WifiAp& ap : s.wifi_aps) {
      nearest[ap.occupied] =
          std::min(nearest[ap.occupied], distance(ap.pos, s.laa_ues[0].pos));
    }
    for (std::uint32_t ue = 1; ue < 3; ++ue) {
      ChannelId c = *partial.channel_of(ue);
      nearest[c] = std::min(nearest[c], distance(s.laa_ues[ue].pos, s.laa_ues[0].pos));
    }
    ChannelId expected = 0;
    bool found_idle = false;
    for (ChannelId c = 0; c < config.num_channels; ++c) {
      if (nearest[c] == kInf) {
        expected = c;
        found_idle = true;
        break;
      }
    }
    if (!found_idle) {
      for (ChannelId c = 1; c < config.num_channels; ++c) {
        if (nearest[c] > nearest[expected]) expected = c;
      }
    }
    if (decision.chosen != expected) {
      detail = "maximin choice disagrees with exhaustive scan";
      return false;
    }
  }
  return true;
}

bool check_telescoping(std::string& detail) {
  RadioParams params;
  CoexEnv env(make_config_sampler(small_config(11)), params, 606);
  RngStream action_rng(707);
  for (int episode = 0; episode < 20; ++episode) {
    env.reset();
    double episode_return = 0.0;
    while (!env.done()) {
      StepOutcome out =
          env.step(action_rng.uniform_int(env.scenario().config.num_channels));
      episode_return += out.reward;
    }
    double total = total_throughput(env.scenario(), env.partial(), params).total;
    if (std::abs(episode_return - total) > 1e-9 * std::max(1.0, std::abs(total))) {
      detail = "episode return does not telescope to the final throughput";
      return false;
    }
  }
  return true;
}

bool check_gradients(std::string& detail) {
  RngStream rng(808);
  for (int trial = 0; trial < 3; ++trial) {
    bool dueling = trial == 2;
    Mlp net = dueling ? Mlp::build_dueling({{3, 5, Activation::kRelu}},
                                           {{5, 3, Activation::kRelu},
                                            {3, 1, Activation::kIdentity}},
                                           {{5, 3, Activation::kRelu},
                                            {3, 4, Activation::kIdentity}},
                                           rng.next_u64())
                      : Mlp::build({{3, 6, Activation::kRelu},
                                    {6, 4, Activation::kIdentity}},
                                   rng.next_u64());
    std::vector<TrainSample> batch;
    for (int i = 0; i < 4; ++i) {
      TrainSample sample;
      sample.state = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0),
                      rng.uniform(-1.0, 1.0)};
      sample.action = rng.uniform_int(4);
      sample.target = rng.uniform(-1.0, 1.0);
      batch.push_back(sample);
    }
    auto loss = [&net, &batch] {
      double total = 0.0;
      for (const TrainSample& s : batch) {
        double q = net.forward(s.state)[s.action];
        total += (q - s.target) * (q - s.target);
      }
      return total / static_cast<double>(batch.size());
    };
    Gradients grads = net.backward(batch);
    auto check_stack = [&](std::vector<Layer>& layers,
                           const std::vector<LayerGrad>& layer_grads) {
      const double h = 1e-6;
      for (std::size_t l = 0; l < layers.size(); ++l) {
        for (std::size_t k = 0; k < layers[l].w.size(); k += 3) {
          double saved = layers[l].w[k];
          layers[l].w[k] = saved + h;
          double up = loss();
          layers[l].w[k] = saved - h;
          double down = loss();
          layers[l].w[k] = saved;
          double fd = (up - down) / (2.0 * h);
          double analytic = layer_grads[l].w[k];
          double scale = std::max({std::abs(fd), std::abs(analytic), 1e-6});
          if (std::abs(fd - analytic) / scale > 1e-4) return false;
        }
      }
      return true;
    };
    if (!check_stack(net.trunk(), grads.trunk) ||
        !check_stack(net.value_stream(), grads.value_stream) ||
        !check_stack(net.adv_stream(), grads.adv_stream)) {
      detail = "analytic gradient disagrees with finite differences";
      return false;
    }
  }
  return true;
}

bool check_dueling_invariance(std::string& detail) {
  RngStream rng(909);
  for (int trial = 0; trial < 100; ++trial) {
    Mlp net = Mlp::q_network(4, 5, true, rng.next_u64());
    StateVec state = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0),
                      rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    std::vector<double> base = net.forward(state);
    double c = rng.uniform(-5.0, 5.0);
    Mlp shifted_adv = net;
    for (double& b : shifted_adv.adv_stream().back().b) b += c;
    std::vector<double> q_adv = shifted_adv.forward(state);
    Mlp shifted_value = net;
    shifted_value.value_stream().back().b[0] += c;
    std::vector<double> q_val = shifted_value.forward(state);
    for (std::size_t a = 0; a < base.size(); ++a) {
      if (std::abs(q_adv[a] - base[a]) > 1e-12) {
        detail = "advantage shift leaked into Q values";
        return false;
      }
      if (std::abs(q_val[a] - (base[a] + c)) > 1e-12) {
        detail = "value shift did not move Q uniformly";
        return false;
      }
    }
  }
  return true;
}

bool check_double_dqn_bound(std::string& detail) {
  RngStream rng(1010);
  for (int trial = 0; trial < 100; ++trial) {
    Mlp online = Mlp::q_network(3, 4, false, rng.next_u64());
    Mlp target = Mlp::q_network(3, 4, false, rng.next_u64());
    StateVec next = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0),
                     rng.uniform(-1.0, 1.0)};
    double r = rng.uniform(-1.0, 1.0);
    double lhs = double_dqn_target(r, next, online, target, 0.9, false);
    double rhs = dqn_target(r, next, online, target, 0.9, false);
    if (lhs > rhs + 1e-12) {
      detail = "double-DQN target exceeded the max-based target";
      return false;
    }
  }
  return true;
}

bool check_replay_ring(std::string& detail) {
  ReplayBuffer buffer(2);
  for (std::uint32_t i = 0; i < 3; ++i) {
    Transition t;
    t.action = i;
    buffer.push(t);
  }
  if (buffer.size() != 2 || buffer.at(0).action != 2 || buffer.at(1).action != 1) {
    detail = "ring did not evict the oldest transition";
    return false;
  }
  return true;
}

bool check_csv_round_trip(std::string& detail) {
  SweepResult result;
  result.variable = SweepVariable::kWifiAp;
  result.rows.push_back({4, AgentKind::kMid, 7, 12.3456789012345, 0.25, 0.0});
  result.rows.push_back({4, AgentKind::kDqn, 7, 11.0, 0.125, 0.0});
  SweepResult parsed = parse_csv_string(csv_string(result));
  if (!(parsed == result)) {
    detail = "CSV did not round-trip exactly";
    return false;
  }
  return true;
}

}  // namespace

std::vector<CheckResult> run_selfcheck() {
  using CheckFn = std::function<bool(std::string&)>;
  const std::pair<const char*, CheckFn> checks[] = {
      {"scenario determinism", check_scenario_determinism},
      {"geometry containment", check_containment},
      {"path-loss closed form", check_fading_closed_form},
      {"throughput hand value", check_throughput_hand_value},
      {"interference brute force", check_interference_brute_force},
      {"mid idle priority", check_mid_idle_priority},
      {"mid maximin choice", check_mid_maximin},
      {"reward telescoping", check_telescoping},
      {"gradient finite differences", check_gradients},
      {"dueling shift invariance", check_dueling_invariance},
      {"double-dqn upper bound", check_double_dqn_bound},
      {"replay ring eviction", check_replay_ring},
      {"csv round trip", check_csv_round_trip},
  };

  std::vector<CheckResult> results;
  for (const auto& [name, fn] : checks) {
    CheckResult result;
    result.name = name;
    try {
      result.passed = fn(result.detail);
    } catch (const std::exception& e) {
      result.passed = false;
      result.detail = std::string("exception: ") + e.what();
    }
    results.push_back(std::move(result));
  }
  return results;
}

std::string selfcheck_report(const std::vector<CheckResult>& results) {
  std::string out;
  std::size_t failures = 0;
  for (const CheckResult& r : results) {
    out += r.passed ? "[PASS] " : "[FAIL] ";
    out += r.name;
    if (!r.passed && !r.detail.empty()) {
      out += ": ";
      out += r.detail;
    }
    out += '\n';
    if (!r.passed) ++failures;
  }
  char line[96];
  std::snprintf(line, sizeof(line), "%zu/%zu checks passed\n",
                results.size() - failures, results.size());
  out += line;
  return out;
}

}  // namespace coexsim
