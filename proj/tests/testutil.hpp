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

// Shared test oracles. Everything here computes its answer independently of
// the code path under test: brute-force sums, closed forms re-derived along
// a different algebraic route, finite differences, frozen critical values.

#ifndef COEXSIM_TESTS_TESTUTIL_HPP_
#define COEXSIM_TESTS_TESTUTIL_HPP_

#include <cmath>
#include <cstdint>
#include <vector>

#include "coexsim/radio.hpp"
#include "coexsim/topology.hpp"

namespace testutil {

// Upper-tail chi-square critical values at significance 0.001 (standard
// table values, frozen).
inline constexpr double kChiSq999Dof9 = 27.877;
inline constexpr double kChiSq999Dof14 = 36.123;

inline double chi_square_uniform(const std::vector<std::uint64_t>& counts) {
  std::uint64_t total = 0;
  for (std::uint64_t c : counts) total += c;
  double expected = static_cast<double>(total) / counts.size();
  double stat = 0.0;
  for (std::uint64_t c : counts) {
    double diff = static_cast<double>(c) - expected;
    stat += diff * diff / expected;
  }
  return stat;
}

// Path-loss gain along a different algebraic route than the implementation
// (linear power ratio instead of a dB exponent).
inline double reference_gain(const coexsim::Position& tx,
                             const coexsim::Position& rx,
                             const coexsim::RadioParams& p) {
  double d = std::sqrt((tx.x - rx.x) * (tx.x - rx.x) +
                       (tx.y - rx.y) * (tx.y - rx.y));
  if (d < p.d0) d = p.d0;
  return std::pow(10.0, -p.pl0_db / 10.0) *
         std::pow(p.d0 / d, p.path_loss_exponent);
}

// All-pairs brute-force interference for one UE on one channel.
struct BruteInterference {
  double ap_to_ue = 0.0;
  double ue_to_ue = 0.0;
};

inline BruteInterference brute_force_interference(
    const coexsim::Scenario& s, const coexsim::ChannelAssignment& assignment,
    std::uint32_t ue_id, coexsim::ChannelId channel,
    const coexsim::RadioParams& p) {
  BruteInterference out;
  const coexsim::Position& rx = s.laa_ues[ue_id].pos;
  for (const coexsim::WifiAp& ap : s.wifi_aps) {
    if (ap.occupied == channel) {
      out.ap_to_ue += p.p_wifi_ap * reference_gain(ap.pos, rx, p);
    }
  }
  for (const coexsim::LaaUe& other : s.laa_ues) {
    if (other.id == ue_id) continue;
    auto ch = assignment.channel_of(other.id);
    if (ch.has_value() && *ch == channel) {
      out.ue_to_ue += p.p_laa * reference_gain(other.pos, rx, p);
    }
  }
  return out;
}

// Direct evaluation of the normalized-throughput formula for one UE, built
// on the brute-force sums above.
inline double reference_throughput_ue(const coexsim::Scenario& s,
                                      const coexsim::ChannelAssignment& a,
                                      std::uint32_t ue_id,
                                      const coexsim::RadioParams& p) {
  const coexsim::LaaUe& ue = s.laa_ues[ue_id];
  const coexsim::Position& serving =
      p.serve_from_mbs ? s.mbs : s.sbs[ue.serving_sbs];
  double num = p.p_laa * reference_gain(serving, ue.pos, p);
  BruteInterference interference =
      brute_force_interference(s, a, ue_id, *a.channel_of(ue_id), p);
  double deno = interference.ap_to_ue + interference.ue_to_ue + p.noise;
  double rate = p.use_log2 ? std::log2(1.0 + num / deno)
                           : std::log10(1.0 + num / deno);
  return p.t_max_ms * rate / (p.i_cca_ms + p.t_max_ms);
}

inline double relative_error(double got, double expected) {
  double scale = std::fmax(std::fabs(got), std::fabs(expected));
  if (scale == 0.0) return 0.0;
  return std::fabs(got - expected) / scale;
}

}  // namespace testutil

#endif  // COEXSIM_TESTS_TESTUTIL_HPP_
