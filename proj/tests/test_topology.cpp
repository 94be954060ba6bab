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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <sstream>

#include "coexsim/errors.hpp"
#include "coexsim/rng.hpp"
#include "coexsim/topology.hpp"
#include "doctest.h"
#include "testutil.hpp"

using namespace coexsim;

namespace {

// Independent geometry pass: every node inside its radius, every channel in
// range, ids consecutive.
void check_scenario_invariants(const Scenario& s) {
  const ScenarioConfig& c = s.config;
  const double slack = 1e-9;
  for (const Position& p : s.sbs) {
    CHECK(std::hypot(p.x - s.mbs.x, p.y - s.mbs.y) <= c.mbs_radius + slack);
  }
  for (std::size_t i = 0; i < s.laa_ues.size(); ++i) {
    const LaaUe& ue = s.laa_ues[i];
    CHECK(ue.id == i);
    REQUIRE(ue.serving_sbs < s.sbs.size());
    const Position& sbs = s.sbs[ue.serving_sbs];
    CHECK(std::hypot(ue.pos.x - sbs.x, ue.pos.y - sbs.y) <=
          c.sbs_radius + slack);
  }
  for (std::size_t i = 0; i < s.wifi_aps.size(); ++i) {
    const WifiAp& ap = s.wifi_aps[i];
    CHECK(ap.id == i);
    REQUIRE(ap.serving_sbs < s.sbs.size());
    const Position& sbs = s.sbs[ap.serving_sbs];
    CHECK(std::hypot(ap.pos.x - sbs.x, ap.pos.y - sbs.y) <=
          c.sbs_radius + slack);
    CHECK(ap.occupied < c.num_channels);
  }
  for (std::size_t i = 0; i < s.wifi_ues.size(); ++i) {
    const WifiUe& ue = s.wifi_ues[i];
    CHECK(ue.id == i);
    REQUIRE(ue.serving_ap < s.wifi_aps.size());
    const Position& ap = s.wifi_aps[ue.serving_ap].pos;
    CHECK(std::hypot(ue.pos.x - ap.x, ue.pos.y - ap.y) <= c.ap_radius + slack);
  }
}

bool same_scenario(const Scenario& a, const Scenario& b) {
  if (a.sbs.size() != b.sbs.size() || a.laa_ues.size() != b.laa_ues.size() ||
      a.wifi_aps.size() != b.wifi_aps.size() ||
      a.wifi_ues.size() != b.wifi_ues.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.sbs.size(); ++i) {
    if (a.sbs[i].x != b.sbs[i].x || a.sbs[i].y != b.sbs[i].y) return false;
  }
  for (std::size_t i = 0; i < a.laa_ues.size(); ++i) {
    if (a.laa_ues[i].pos.x != b.laa_ues[i].pos.x ||
        a.laa_ues[i].pos.y != b.laa_ues[i].pos.y ||
        a.laa_ues[i].serving_sbs != b.laa_ues[i].serving_sbs) {
      return false;
    }
  }
  for (std::size_t i = 0; i < a.wifi_aps.size(); ++i) {
    if (a.wifi_aps[i].pos.x != b.wifi_aps[i].pos.x ||
        a.wifi_aps[i].pos.y != b.wifi_aps[i].pos.y ||
        a.wifi_aps[i].occupied != b.wifi_aps[i].occupied) {
      return false;
    }
  }
  for (std::size_t i = 0; i < a.wifi_ues.size(); ++i) {
    if (a.wifi_ues[i].pos.x != b.wifi_ues[i].pos.x ||
        a.wifi_ues[i].pos.y != b.wifi_ues[i].pos.y) {
      return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("distance identity and 3-4-5 triangle") {
  CHECK(distance({0, 0}, {0, 0}) == 0.0);
  CHECK(distance({0, 0}, {3, 4}) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(distance({3, 4}, {0, 0}) == doctest::Approx(5.0).epsilon(1e-15));
}

TEST_CASE("distance matches an independent hypot evaluation") {
  RngStream rng(99);
  for (int i = 0; i < 100; ++i) {
    Position a{rng.uniform(-1000, 1000), rng.uniform(-1000, 1000)};
    Position b{rng.uniform(-1000, 1000), rng.uniform(-1000, 1000)};
    double got = distance(a, b);
    double expected = std::sqrt((a.x - b.x) * (a.x - b.x) +
                                (a.y - b.y) * (a.y - b.y));
    CHECK(testutil::relative_error(got, expected) < 1e-12);
    CHECK(distance(a, b) == distance(b, a));
    CHECK(got >= 0.0);
  }
}

TEST_CASE("empty deployment holds only the MBS at the origin") {
  ScenarioConfig config;
  config.num_sbs = 0;
  config.num_laa_ue = 0;
  config.num_wifi_ap = 0;
  config.num_wifi_ue_per_ap = 0;
  Scenario s = generate_scenario(config);
  CHECK(s.mbs.x == 0.0);
  CHECK(s.mbs.y == 0.0);
  CHECK(s.sbs.empty());
  CHECK(s.laa_ues.empty());
  CHECK(s.wifi_aps.empty());
  CHECK(s.wifi_ues.empty());
}

TEST_CASE("same config and seed give a bit-identical scenario") {
  ScenarioConfig config;
  config.seed = 42;
  Scenario a = generate_scenario(config);
  Scenario b = generate_scenario(config);
  CHECK(same_scenario(a, b));
  CHECK(dump_scenario(a) == dump_scenario(b));
}

TEST_CASE("generated nodes respect their radii (fixed config)") {
  ScenarioConfig config;
  config.num_sbs = 3;
  config.num_laa_ue = 10;
  config.mbs_radius = 500.0;
  Scenario s = generate_scenario(config);
  REQUIRE(s.sbs.size() == 3);
  REQUIRE(s.laa_ues.size() == 10);
  check_scenario_invariants(s);
}

TEST_CASE("containment property over 1000 random configs") {
  RngStream rng(7);
  for (int trial = 0; trial < 1000; ++trial) {
    ScenarioConfig config;
    config.num_channels = 1 + rng.uniform_int(20);
    config.num_sbs = 1 + rng.uniform_int(6);
    config.num_laa_ue = rng.uniform_int(10);
    config.num_wifi_ap = rng.uniform_int(6);
    config.num_wifi_ue_per_ap = rng.uniform_int(3);
    config.mbs_radius = rng.uniform(10.0, 1000.0);
    config.sbs_radius = rng.uniform(1.0, 300.0);
    config.ap_radius = rng.uniform(0.5, 60.0);
    config.seed = rng.next_u64();
    check_scenario_invariants(generate_scenario(config));
  }
}

TEST_CASE("AP channel occupancy is uniform (chi-square at 0.001)") {
  ScenarioConfig config;
  config.num_channels = 15;
  config.num_sbs = 40;
  config.num_laa_ue = 0;
  config.num_wifi_ap = 12000;
  config.num_wifi_ue_per_ap = 0;
  config.seed = 2024;
  Scenario s = generate_scenario(config);
  std::vector<std::uint64_t> counts(15, 0);
  for (const WifiAp& ap : s.wifi_aps) counts[ap.occupied]++;
  CHECK(testutil::chi_square_uniform(counts) < testutil::kChiSq999Dof14);
}

TEST_CASE("adding Wi-Fi UEs does not perturb the other node categories") {
  ScenarioConfig config;
  config.seed = 5;
  config.num_wifi_ue_per_ap = 0;
  Scenario without = generate_scenario(config);
  config.num_wifi_ue_per_ap = 3;
  Scenario with = generate_scenario(config);
  REQUIRE(without.laa_ues.size() == with.laa_ues.size());
  for (std::size_t i = 0; i < without.laa_ues.size(); ++i) {
    CHECK(without.laa_ues[i].pos.x == with.laa_ues[i].pos.x);
    CHECK(without.laa_ues[i].pos.y == with.laa_ues[i].pos.y);
  }
  for (std::size_t i = 0; i < without.wifi_aps.size(); ++i) {
    CHECK(without.wifi_aps[i].occupied == with.wifi_aps[i].occupied);
    CHECK(without.wifi_aps[i].pos.x == with.wifi_aps[i].pos.x);
  }
}

TEST_CASE("invalid configs are rejected") {
  ScenarioConfig config;
  config.num_channels = 0;
  CHECK_THROWS_AS(generate_scenario(config), ConfigError);

  config = ScenarioConfig{};
  config.sbs_radius = 0.0;
  CHECK_THROWS_AS(generate_scenario(config), ConfigError);

  config = ScenarioConfig{};
  config.mbs_radius = -10.0;
  CHECK_THROWS_AS(generate_scenario(config), ConfigError);

  config = ScenarioConfig{};
  config.num_sbs = 0;
  config.num_laa_ue = 2;
  CHECK_THROWS_AS(generate_scenario(config), ConfigError);
}

TEST_CASE("dump emits one well-formed line per node") {
  ScenarioConfig config;
  config.num_sbs = 2;
  config.num_laa_ue = 3;
  config.num_wifi_ap = 2;
  config.num_wifi_ue_per_ap = 1;
  Scenario s = generate_scenario(config);
  std::istringstream in(dump_scenario(s));

  std::string type;
  std::uint32_t id;
  double x, y;
  long long serving, channel;
  std::size_t lines = 0;
  std::size_t ap_lines = 0;
  while (in >> type >> id >> x >> y >> serving >> channel) {
    ++lines;
    if (type == "mbs") {
      CHECK(serving == -1);
      CHECK(channel == -1);
    } else if (type == "wifi_ap") {
      ++ap_lines;
      CHECK(channel == s.wifi_aps[id].occupied);
      CHECK(x == s.wifi_aps[id].pos.x);
    } else {
      CHECK(channel == -1);
    }
  }
  CHECK(lines == 1 + 2 + 3 + 2 + 2);
  CHECK(ap_lines == 2);
}

TEST_CASE("channel assignment tracks partial and complete states") {
  ChannelAssignment a(3);
  CHECK(a.size() == 3);
  CHECK_FALSE(a.complete());
  CHECK(a.num_assigned() == 0);
  CHECK_FALSE(a.has(1));
  a.assign(1, 4);
  CHECK(a.has(1));
  CHECK(a.channel_of(1) == ChannelId{4});
  CHECK(a.num_assigned() == 1);
  a.assign(0, 0);
  a.assign(2, 2);
  CHECK(a.complete());
  a.clear(2);
  CHECK_FALSE(a.complete());
  CHECK_THROWS_AS(a.assign(3, 0), LookupError);
  CHECK_THROWS_AS(a.channel_of(7), LookupError);

  ChannelAssignment empty(0);
  CHECK(empty.complete());
}
