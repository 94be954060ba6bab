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

#ifndef COEXSIM_SELFCHECK_HPP_
#define COEXSIM_SELFCHECK_HPP_

#include <string>
#include <vector>

namespace coexsim {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;  // short diagnostic, useful mainly on failure
};

// Runs the invariant suite: geometry containment, determinism, formula
// cross-checks, MID rules, gradient checks, target-formula identities,
// replay semantics, and CSV round-tripping. Each check re-derives its
// expectation independently of the code path it validates.
std::vector<CheckResult> run_selfcheck();

// One line per check plus a summary line.
std::string selfcheck_report(const std::vector<CheckResult>& results);

}  // namespace coexsim

#endif  // COEXSIM_SELFCHECK_HPP_
