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
#include <algorithm>
#include <cmath>
#include <numeric>

#include "coexsim/errors.hpp"
#include "coexsim/radio.hpp"
#include "coexsim/rng.hpp"
#include "coexsim/topology.hpp"
#include "doctest.h"
#include "testutil.hpp"

using namespace coexsim;

namespace {

Scenario small_scenario(std::uint64_t seed, std::uint32_t ues = 6,
                        std::uint32_t aps = 3, std::uint32_t channels = 4) {
  ScenarioConfig config;
  config.num_channels = channels;
  config.num_sbs = 2;
  config.num_laa_ue = ues;
  config.num_wifi_ap = aps;
  config.num_wifi_ue_per_ap = 1;
  config.seed = seed;
  return generate_scenario(config);
}

}  // namespace

TEST_CASE("paper constants are embedded in the defaults") {
  RadioParams params;
  CHECK(testutil::relative_error(params.p_laa, 1e-3 * std::pow(10.0, 2.4)) <
        1e-12);
  CHECK(params.p_laa == doctest::Approx(0.251189).epsilon(1e-5));
  CHECK(params.t_max_ms == 10.0);
  CHECK(params.i_cca_ms == 0.0034);
  CHECK(params.noise == 2e-13);
}

TEST_CASE("gain at the reference distance and one decade out") {
  RadioParams params;
  Position tx{0, 0};
  CHECK(fading_gain(tx, {params.d0, 0}, params) ==
        doctest::Approx(std::pow(10.0, -params.pl0_db / 10.0)).epsilon(1e-14));
  double expected_decade =
      std::pow(10.0, -(params.pl0_db + 10.0 * params.path_loss_exponent) / 10.0);
  CHECK(fading_gain(tx, {10.0 * params.d0, 0}, params) ==
        doctest::Approx(expected_decade).epsilon(1e-14));
}

TEST_CASE("coincident endpoints clamp to the reference distance") {
  RadioParams params;
  Position p{12.0, -7.0};
  CHECK(fading_gain(p, p, params) ==
        fading_gain({0, 0}, {params.d0, 0}, params));
  CHECK(std::isfinite(fading_gain(p, p, params)));
}

TEST_CASE("gain matches the closed form on 100 random pairs") {
  RadioParams params;
  RngStream rng(31);
  for (int i = 0; i < 100; ++i) {
    Position tx{rng.uniform(-500, 500), rng.uniform(-500, 500)};
    Position rx{rng.uniform(-500, 500), rng.uniform(-500, 500)};
    double got = fading_gain(tx, rx, params);
    double expected = testutil::reference_gain(tx, rx, params);
    CHECK(testutil::relative_error(got, expected) < 1e-12);
  }
}

TEST_CASE("gain is nonincreasing in distance and bounded by the d0 gain") {
  RadioParams params;
  double bound = std::pow(10.0, -params.pl0_db / 10.0);
  double previous = bound;
  for (double d = 0.5; d < 2000.0; d *= 1.7) {
    double g = fading_gain({0, 0}, {d, 0}, params);
    CHECK(g <= previous + 1e-18);
    CHECK(g > 0.0);
    CHECK(g <= bound);
    previous = g;
  }
}

TEST_CASE("optional fast fading is seeded and pure") {
  RadioParams faded;
  faded.rayleigh_fading = true;
  faded.fading_seed = 9;
  Position tx{0, 0}, rx{40, 9};
  double once = fading_gain(tx, rx, faded);
  double twice = fading_gain(tx, rx, faded);
  CHECK(once == twice);

  RadioParams other_seed = faded;
  other_seed.fading_seed = 10;
  CHECK(fading_gain(tx, rx, other_seed) != once);

  RadioParams deterministic;
  CHECK(fading_gain(tx, rx, deterministic) != once);
}

TEST_CASE("idle channel sees zero interference") {
  Scenario s = small_scenario(3, 4, 0, 5);
  ChannelAssignment a(s.laa_ues.size());
  RadioParams params;
  InterferenceBreakdown breakdown = interference_at_ue(s, a, 0, 2, params);
  CHECK(breakdown.ap_to_ue == 0.0);
  CHECK(breakdown.ue_to_ue == 0.0);
}

TEST_CASE("single co-channel AP reproduces the hand evaluation") {
  Scenario s = small_scenario(11, 2, 1, 3);
  RadioParams params;
  ChannelAssignment a(s.laa_ues.size());
  ChannelId channel = s.wifi_aps[0].occupied;
  InterferenceBreakdown breakdown = interference_at_ue(s, a, 0, channel, params);
  double expected =
      params.p_wifi_ap * fading_gain(s.wifi_aps[0].pos, s.laa_ues[0].pos, params);
  CHECK(breakdown.ap_to_ue == doctest::Approx(expected).epsilon(1e-14));
  CHECK(breakdown.ue_to_ue == 0.0);
}

TEST_CASE("three co-channel UEs match the all-pairs brute force") {
  Scenario s = small_scenario(17, 3, 0, 2);
  RadioParams params;
  ChannelAssignment a(3);
  for (std::uint32_t ue = 0; ue < 3; ++ue) a.assign(ue, 1);
  for (std::uint32_t ue = 0; ue < 3; ++ue) {
    InterferenceBreakdown got = interference_at_ue(s, a, ue, 1, params);
    testutil::BruteInterference expected =
        testutil::brute_force_interference(s, a, ue, 1, params);
    CHECK(testutil::relative_error(got.ue_to_ue, expected.ue_to_ue) < 1e-12);
    CHECK(got.ap_to_ue == 0.0);
  }
}

TEST_CASE("interference lookups validate ids and channels") {
  Scenario s = small_scenario(5);
  ChannelAssignment a(s.laa_ues.size());
  RadioParams params;
  CHECK_THROWS_AS(interference_at_ue(s, a, 99, 0, params), LookupError);
  CHECK_THROWS_AS(interference_at_ue(s, a, 0, 77, params), RangeError);
}

TEST_CASE("normalized rate law: zero numerator and the hand value") {
  RadioParams params;
  CHECK(throughput_from_link(0.0, params.noise, params) == 0.0);
  // Num/Deno = 9 -> 10 log10(10) / 10.0034
  double expected = 10.0 * std::log10(10.0) / (0.0034 + 10.0);
  CHECK(throughput_from_link(9.0, 1.0, params) ==
        doctest::Approx(expected).epsilon(1e-12));
  CHECK(expected == doctest::Approx(0.999660).epsilon(1e-6));
}

TEST_CASE("log base is switchable and keeps the printed base-10 default") {
  RadioParams params;
  RadioParams base2 = params;
  base2.use_log2 = true;
  double ratio = throughput_from_link(9.0, 1.0, base2) /
                 throughput_from_link(9.0, 1.0, params);
  CHECK(ratio == doctest::Approx(std::log2(10.0)).epsilon(1e-12));
}

TEST_CASE("throughput of an unassigned UE is a precondition error") {
  Scenario s = small_scenario(5);
  ChannelAssignment a(s.laa_ues.size());
  RadioParams params;
  CHECK_THROWS_AS(throughput_ue(s, a, 0, params), PreconditionError);
}

TEST_CASE("single UE with no APs: denominator reduces to noise") {
  Scenario s = small_scenario(23, 1, 0, 4);
  RadioParams params;
  ChannelAssignment a(1);
  a.assign(0, 2);
  double got = throughput_ue(s, a, 0, params);
  const LaaUe& ue = s.laa_ues[0];
  double num = params.p_laa * fading_gain(s.sbs[ue.serving_sbs], ue.pos, params);
  CHECK(got == doctest::Approx(throughput_from_link(num, params.noise, params))
                   .epsilon(1e-14));
  ThroughputReport report = total_throughput(s, a, params);
  CHECK(report.total == doctest::Approx(got).epsilon(1e-14));
  CHECK(report.per_ue.size() == 1);
}

TEST_CASE("serving transmitter can be switched to the MBS") {
  Scenario s = small_scenario(29, 1, 0, 4);
  ChannelAssignment a(1);
  a.assign(0, 0);
  RadioParams from_sbs;
  RadioParams from_mbs;
  from_mbs.serve_from_mbs = true;
  double num_sbs = from_sbs.p_laa *
                   fading_gain(s.sbs[s.laa_ues[0].serving_sbs],
                               s.laa_ues[0].pos, from_sbs);
  double num_mbs = from_mbs.p_laa * fading_gain(s.mbs, s.laa_ues[0].pos, from_mbs);
  CHECK(throughput_ue(s, a, 0, from_sbs) ==
        doctest::Approx(throughput_from_link(num_sbs, from_sbs.noise, from_sbs)));
  CHECK(throughput_ue(s, a, 0, from_mbs) ==
        doctest::Approx(throughput_from_link(num_mbs, from_mbs.noise, from_mbs)));
}

TEST_CASE("zero UEs give zero total throughput") {
  Scenario s = small_scenario(31, 0, 2, 3);
  RadioParams params;
  ThroughputReport report = total_throughput(s, ChannelAssignment(0), params);
  CHECK(report.total == 0.0);
  CHECK(report.per_ue.empty());
}

TEST_CASE("incomplete assignments are rejected by total_throughput") {
  Scenario s = small_scenario(37, 3);
  RadioParams params;
  ChannelAssignment a(3);
  a.assign(0, 0);
  CHECK_THROWS_AS(total_throughput(s, a, params), PreconditionError);
  CHECK_THROWS_AS(total_throughput(s, ChannelAssignment(1), params),
                  PreconditionError);
}

TEST_CASE("total equals a shuffled-order independent recomputation") {
  RngStream rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    Scenario s = small_scenario(rng.next_u64(), 8, 4, 5);
    RadioParams params;
    ChannelAssignment a(s.laa_ues.size());
    for (const LaaUe& ue : s.laa_ues) {
      a.assign(ue.id, rng.uniform_int(s.config.num_channels));
    }
    ThroughputReport report = total_throughput(s, a, params);

    std::vector<std::uint32_t> order(s.laa_ues.size());
    std::iota(order.begin(), order.end(), 0u);
    for (std::size_t i = order.size(); i > 1; --i) {
      std::swap(order[i - 1], order[rng.uniform_int(static_cast<std::uint32_t>(i))]);
    }
    double shuffled_sum = 0.0;
    for (std::uint32_t ue : order) shuffled_sum += throughput_ue(s, a, ue, params);
    CHECK(testutil::relative_error(report.total, shuffled_sum) < 1e-12);

    double sum_per_ue = 0.0;
    for (double t : report.per_ue) {
      CHECK(t >= 0.0);
      CHECK(std::isfinite(t));
      sum_per_ue += t;
    }
    CHECK(testutil::relative_error(report.total, sum_per_ue) < 1e-12);
  }
}

TEST_CASE("adding a co-channel interferer never raises a UE's throughput") {
  RngStream rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    Scenario s = small_scenario(rng.next_u64(), 5, 2, 4);
    RadioParams params;
    ChannelAssignment a(s.laa_ues.size());
    a.assign(0, 1);
    for (std::uint32_t ue = 1; ue < 5; ++ue) a.assign(ue, 0);
    double alone = throughput_ue(s, a, 0, params);
    a.assign(1, 1);  // move one interferer onto UE 0's channel
    double crowded = throughput_ue(s, a, 0, params);
    CHECK(crowded <= alone + 1e-15);
  }
}

TEST_CASE("changing one UE's channel only affects co-channel peers") {
  Scenario s = small_scenario(47, 6, 3, 5);
  RadioParams params;
  ChannelAssignment a(6);
  std::vector<ChannelId> channels = {0, 0, 1, 2, 3, 4};
  for (std::uint32_t ue = 0; ue < 6; ++ue) a.assign(ue, channels[ue]);
  ThroughputReport before = total_throughput(s, a, params);
  a.assign(0, 1);  // 0 moves from channel 0 to channel 1
  ThroughputReport after = total_throughput(s, a, params);
  for (std::uint32_t ue = 1; ue < 6; ++ue) {
    bool on_old_or_new = channels[ue] == 0 || channels[ue] == 1;
    if (!on_old_or_new) {
      CHECK(after.per_ue[ue] == before.per_ue[ue]);
    }
  }
  CHECK(after.per_ue[1] >= before.per_ue[1]);  // lost its channel-0 neighbor
}

TEST_CASE("random scenarios produce finite nonnegative radio quantities") {
  RngStream rng(53);
  for (int trial = 0; trial < 50; ++trial) {
    Scenario s = small_scenario(rng.next_u64(), 4, 3, 3);
    RadioParams params;
    ChannelAssignment a(4);
    for (std::uint32_t ue = 0; ue < 4; ++ue) {
      a.assign(ue, rng.uniform_int(3));
    }
    for (std::uint32_t ue = 0; ue < 4; ++ue) {
      for (ChannelId c = 0; c < 3; ++c) {
        InterferenceBreakdown b = interference_at_ue(s, a, ue, c, params);
        CHECK(b.ap_to_ue >= 0.0);
        CHECK(b.ue_to_ue >= 0.0);
        CHECK(std::isfinite(b.total()));
      }
      double t = throughput_ue(s, a, ue, params);
      CHECK(t >= 0.0);
      CHECK(std::isfinite(t));
    }
  }
}

TEST_CASE("invalid radio params are rejected") {
  RadioParams params;
  params.p_laa = 0.0;
  CHECK_THROWS_AS(params.validate(), ConfigError);
  params = RadioParams{};
  params.noise = -1.0;
  CHECK_THROWS_AS(params.validate(), ConfigError);
  params = RadioParams{};
  params.t_max_ms = 0.0;
  CHECK_THROWS_AS(params.validate(), ConfigError);
  params = RadioParams{};
  params.d0 = 0.0;
  CHECK_THROWS_AS(params.validate(), ConfigError);
  params = RadioParams{};
  params.path_loss_exponent = 0.0;
  CHECK_THROWS_AS(params.validate(), ConfigError);
}
