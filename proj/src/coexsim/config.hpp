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

#ifndef COEXSIM_CONFIG_HPP_
#define COEXSIM_CONFIG_HPP_

#include <filesystem>
#include <map>
#include <string>

#include "coexsim/harness.hpp"

namespace coexsim {

// Plain-text key/value configuration with TOML-style [section] headers,
// `key = value` lines, and '#' comments. Values are scalars or
// comma-separated lists; nothing is quoted.
class KeyValueConfig {
 public:
  static KeyValueConfig parse_string(const std::string& text);
  static KeyValueConfig parse_file(const std::filesystem::path& path);

  bool has(const std::string& section, const std::string& key) const;
  const std::string& raw(const std::string& section,
                         const std::string& key) const;

  std::string get_string(const std::string& section, const std::string& key,
                         const std::string& fallback) const;
  double get_double(const std::string& section, const std::string& key,
                    double fallback) const;
  std::uint32_t get_u32(const std::string& section, const std::string& key,
                        std::uint32_t fallback) const;
  std::uint64_t get_u64(const std::string& section, const std::string& key,
                        std::uint64_t fallback) const;
  bool get_bool(const std::string& section, const std::string& key,
                bool fallback) const;
  std::vector<std::string> get_list(const std::string& section,
                                    const std::string& key) const;

  const std::map<std::string, std::map<std::string, std::string>>& sections()
      const {
    return sections_;
  }

 private:
  std::map<std::string, std::map<std::string, std::string>> sections_;
};

// Builds an ExperimentSpec from a parsed config; every key is optional and
// defaults to the built-in value. Unknown sections or keys are rejected.
// The COEX_SEED environment variable, when set, overrides the seed list
// (comma-separated 64-bit values).
ExperimentSpec experiment_spec_from_config(const KeyValueConfig& config,
                                           bool quick);

// Convenience wrappers used by the CLI: empty path means built-in defaults.
ExperimentSpec load_experiment_spec(const std::filesystem::path& path,
                                    bool quick);

}  // namespace coexsim

#endif  // COEXSIM_CONFIG_HPP_
