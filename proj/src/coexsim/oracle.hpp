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

#ifndef COEXSIM_ORACLE_HPP_
#define COEXSIM_ORACLE_HPP_

#include <cstdint>
#include <string>

#include "coexsim/radio.hpp"
#include "coexsim/topology.hpp"

namespace coexsim {

struct OracleResult {
  ChannelAssignment best;
  double best_total = 0.0;
  std::uint64_t evaluated = 0;  // number of complete assignments scored
};

// Scores every complete assignment (num_channels ^ num_laa_ue of them) and
// returns the best; ties resolve to the first assignment in odometer order.
// Throws ConfigError when the instance exceeds max_assignments.
OracleResult exhaustive_best_assignment(const Scenario& scenario,
                                        const RadioParams& params,
                                        std::uint64_t max_assignments = 1u << 20);

// Text report comparing MID against the exhaustive optimum over
// `num_seeds` random small deployments; the tool behind `coex-sim oracle`.
std::string oracle_report(std::uint32_t max_ue, std::uint32_t max_channels,
                          std::uint32_t num_seeds, std::uint64_t base_seed,
                          const RadioParams& params);

}  // namespace coexsim

#endif  // COEXSIM_ORACLE_HPP_
