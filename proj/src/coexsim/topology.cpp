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

#include "coexsim/topology.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "coexsim/errors.hpp"
#include "coexsim/rng.hpp"

namespace coexsim {
namespace {

// Uniform point in the disc of radius r around center; two draws per point
// (polar transform) so the stream advances by a fixed amount per node.
Position uniform_in_disc(const Position& center, double r, RngStream& rng) {
  double rad = r * std::sqrt(rng.uniform());
  double ang = 2.0 * std::numbers::pi * rng.uniform();
  return {center.x + rad * std::cos(ang), center.y + rad * std::sin(ang)};
}

void append_node(std::string& out, const char* type, std::uint32_t id,
                 const Position& pos, std::int64_t serving,
                 std::int64_t channel) {
  char line[160];
  std::snprintf(line, sizeof(line), "%s %u %.17g %.17g %lld %lld\n", type, id,
                pos.x, pos.y, static_cast<long long>(serving),
                static_cast<long long>(channel));
  out += line;
}

}  // namespace

double distance(const Position& a, const Position& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

void ScenarioConfig::validate() const {
  if (num_channels == 0) {
    throw ConfigError("num_channels must be >= 1");
  }
  if (!(mbs_radius > 0.0) || !(sbs_radius > 0.0) || !(ap_radius > 0.0)) {
    throw ConfigError("all radii must be > 0");
  }
  if (num_sbs == 0 && (num_laa_ue > 0 || num_wifi_ap > 0)) {
    throw ConfigError("LAA UEs and Wi-Fi APs need at least one SBS to serve them");
  }
}

Scenario generate_scenario(const ScenarioConfig& config) {
  config.validate();

  Scenario s;
  s.config = config;
  s.mbs = {0.0, 0.0};

  RngStream sbs_rng(derive_seed(config.seed, {tag_hash("sbs")}));
  RngStream ue_rng(derive_seed(config.seed, {tag_hash("laa_ue")}));
  RngStream ap_rng(derive_seed(config.seed, {tag_hash("wifi_ap")}));
  RngStream ap_channel_rng(derive_seed(config.seed, {tag_hash("ap_channel")}));
  RngStream wifi_ue_rng(derive_seed(config.seed, {tag_hash("wifi_ue")}));

  s.sbs.reserve(config.num_sbs);
  for (std::uint32_t i = 0; i < config.num_sbs; ++i) {
    s.sbs.push_back(uniform_in_disc(s.mbs, config.mbs_radius, sbs_rng));
  }

  s.laa_ues.reserve(config.num_laa_ue);
  for (std::uint32_t i = 0; i < config.num_laa_ue; ++i) {
    std::uint32_t serving = ue_rng.uniform_int(config.num_sbs);
    Position pos = uniform_in_disc(s.sbs[serving], config.sbs_radius, ue_rng);
    s.laa_ues.push_back({i, pos, serving});
  }

  s.wifi_aps.reserve(config.num_wifi_ap);
  for (std::uint32_t i = 0; i < config.num_wifi_ap; ++i) {
    std::uint32_t serving = ap_rng.uniform_int(config.num_sbs);
    Position pos = uniform_in_disc(s.sbs[serving], config.sbs_radius, ap_rng);
    ChannelId occupied = ap_channel_rng.uniform_int(config.num_channels);
    s.wifi_aps.push_back({i, pos, serving, occupied});
  }

  s.wifi_ues.reserve(static_cast<std::size_t>(config.num_wifi_ap) *
                     config.num_wifi_ue_per_ap);
  std::uint32_t wifi_ue_id = 0;
  for (std::uint32_t ap = 0; ap < config.num_wifi_ap; ++ap) {
    for (std::uint32_t k = 0; k < config.num_wifi_ue_per_ap; ++k) {
      Position pos =
          uniform_in_disc(s.wifi_aps[ap].pos, config.ap_radius, wifi_ue_rng);
      s.wifi_ues.push_back({wifi_ue_id++, pos, ap});
    }
  }

  return s;
}

std::string dump_scenario(const Scenario& s) {
  std::string out;
  append_node(out, "mbs", 0, s.mbs, -1, -1);
  for (std::uint32_t i = 0; i < s.sbs.size(); ++i) {
    append_node(out, "sbs", i, s.sbs[i], 0, -1);
  }
  for (const LaaUe& ue : s.laa_ues) {
    append_node(out, "laa_ue", ue.id, ue.pos, ue.serving_sbs, -1);
  }
  for (const WifiAp& ap : s.wifi_aps) {
    append_node(out, "wifi_ap", ap.id, ap.pos, ap.serving_sbs,
                static_cast<std::int64_t>(ap.occupied));
  }
  for (const WifiUe& ue : s.wifi_ues) {
    append_node(out, "wifi_ue", ue.id, ue.pos, ue.serving_ap, -1);
  }
  return out;
}

bool ChannelAssignment::has(std::uint32_t ue_id) const {
  return ue_id < slots_.size() && slots_[ue_id].has_value();
}

std::optional<ChannelId> ChannelAssignment::channel_of(
    std::uint32_t ue_id) const {
  if (ue_id >= slots_.size()) {
    throw LookupError("unknown LAA UE id " + std::to_string(ue_id));
  }
  return slots_[ue_id];
}

void ChannelAssignment::assign(std::uint32_t ue_id, ChannelId channel) {
  if (ue_id >= slots_.size()) {
    throw LookupError("unknown LAA UE id " + std::to_string(ue_id));
  }
  slots_[ue_id] = channel;
}

void ChannelAssignment::clear(std::uint32_t ue_id) {
  if (ue_id >= slots_.size()) {
    throw LookupError("unknown LAA UE id " + std::to_string(ue_id));
  }
  slots_[ue_id].reset();
}

bool ChannelAssignment::complete() const {
  for (const auto& slot : slots_) {
    if (!slot.has_value()) return false;
  }
  return true;
}

std::size_t ChannelAssignment::num_assigned() const {
  std::size_t n = 0;
  for (const auto& slot : slots_) {
    if (slot.has_value()) ++n;
  }
  return n;
}

}  // namespace coexsim
