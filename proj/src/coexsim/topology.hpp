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

#ifndef COEXSIM_TOPOLOGY_HPP_
#define COEXSIM_TOPOLOGY_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace coexsim {

struct Position {
  double x = 0.0;
  double y = 0.0;
};

// Euclidean distance in meters.
double distance(const Position& a, const Position& b);

// Index into [0, num_channels) of the owning scenario config.
using ChannelId = std::uint32_t;

// Geometry and node population for one random deployment. Counts may be
// zero; radii must be positive; num_channels must be >= 1.
struct ScenarioConfig {
  std::uint32_t num_channels = 15;
  std::uint32_t num_sbs = 4;
  std::uint32_t num_laa_ue = 15;
  std::uint32_t num_wifi_ap = 6;
  std::uint32_t num_wifi_ue_per_ap = 2;
  double mbs_radius = 500.0;
  double sbs_radius = 100.0;
  double ap_radius = 30.0;
  std::uint64_t seed = 1;

  // Throws ConfigError if any invariant is violated.
  void validate() const;
};

struct LaaUe {
  std::uint32_t id = 0;
  Position pos;
  std::uint32_t serving_sbs = 0;
};

struct WifiAp {
  std::uint32_t id = 0;
  Position pos;
  std::uint32_t serving_sbs = 0;
  ChannelId occupied = 0;
};

struct WifiUe {
  std::uint32_t id = 0;
  Position pos;
  std::uint32_t serving_ap = 0;
};

// Immutable after generation; safe to share between threads.
struct Scenario {
  ScenarioConfig config;
  Position mbs;
  std::vector<Position> sbs;
  std::vector<LaaUe> laa_ues;
  std::vector<WifiAp> wifi_aps;
  std::vector<WifiUe> wifi_ues;
};

// Generates the deployment: MBS at the origin, SBS uniform in the MBS disc,
// LAA UEs and Wi-Fi APs attached to a uniformly chosen SBS and placed
// uniform in its disc, Wi-Fi UEs uniform in their AP's disc, AP channels
// uniform over [0, num_channels). Pure function of the config: the same
// config (seed included) yields a bit-identical Scenario. Each node
// category draws from its own seed-derived stream, so changing one count
// does not perturb the other categories.
Scenario generate_scenario(const ScenarioConfig& config);

// Line-oriented debug dump, one node per line:
//   node_type id x y serving_id channel
// with -1 for fields that do not apply.
std::string dump_scenario(const Scenario& scenario);

// Mapping from each LAA UE to its chosen channel, optional per UE so a
// partially built assignment can be carried through sequential decisions.
class ChannelAssignment {
 public:
  ChannelAssignment() = default;
  explicit ChannelAssignment(std::size_t num_ues) : slots_(num_ues) {}

  std::size_t size() const { return slots_.size(); }
  bool has(std::uint32_t ue_id) const;
  std::optional<ChannelId> channel_of(std::uint32_t ue_id) const;
  void assign(std::uint32_t ue_id, ChannelId channel);
  void clear(std::uint32_t ue_id);

  // Complete iff every UE has a channel.
  bool complete() const;
  std::size_t num_assigned() const;

  friend bool operator==(const ChannelAssignment&,
                         const ChannelAssignment&) = default;

 private:
  std::vector<std::optional<ChannelId>> slots_;
};

}  // namespace coexsim

#endif  // COEXSIM_TOPOLOGY_HPP_
