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

#include "coexsim/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "coexsim/errors.hpp"

namespace coexsim {
namespace {

std::string trim(const std::string& s) {
  std::size_t begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  std::size_t end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

double to_double(const std::string& value, const std::string& where) {
  try {
    std::size_t used = 0;
    double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw ParseError(where + ": expected a number, got '" + value + "'");
  }
}

std::uint64_t to_u64(const std::string& value, const std::string& where) {
  try {
    std::size_t used = 0;
    unsigned long long v = std::stoull(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw ParseError(where + ": expected a nonnegative integer, got '" + value +
                     "'");
  }
}

bool to_bool(const std::string& value, const std::string& where) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ParseError(where + ": expected true/false, got '" + value + "'");
}

// The accepted schema, for typo detection.
const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"scenario",
       {"num_channels", "num_sbs", "num_laa_ue", "num_wifi_ap",
        "num_wifi_ue_per_ap", "mbs_radius", "sbs_radius", "ap_radius", "seed"}},
      {"radio",
       {"p_laa", "p_wifi_ap", "t_max_ms", "i_cca_ms", "noise", "pl0_db", "d0",
        "path_loss_exponent", "serving_transmitter", "rayleigh_fading",
        "fading_seed", "log_base"}},
      {"hyperparams",
       {"alpha", "gamma", "train_iterations", "learning_rate", "batch_size",
        "target_update_period", "buffer_capacity", "epsilon_start",
        "epsilon_end", "epsilon_decay_steps"}},
      {"experiment",
       {"sweep_variable", "sweep_values", "agents", "seeds",
        "num_eval_scenarios", "timing", "threads"}},
  };
  return keys;
}

void reject_unknown(const KeyValueConfig& config) {
  const auto& schema = known_keys();
  for (const auto& [section, entries] : config.sections()) {
    auto it = schema.find(section);
    if (it == schema.end()) {
      throw ConfigError("unknown config section [" + section + "]");
    }
    for (const auto& [key, value] : entries) {
      if (it->second.count(key) == 0) {
        throw ConfigError("unknown key '" + key + "' in section [" + section +
                          "]");
      }
    }
  }
}

}  // namespace

KeyValueConfig KeyValueConfig::parse_string(const std::string& text) {
  KeyValueConfig config;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) {
        throw ParseError("line " + std::to_string(line_no) +
                         ": malformed section header");
      }
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected 'key = value'");
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ParseError("line " + std::to_string(line_no) + ": empty key");
    }
    config.sections_[section][key] = value;
  }
  return config;
}

KeyValueConfig KeyValueConfig::parse_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_string(buf.str());
}

bool KeyValueConfig::has(const std::string& section,
                         const std::string& key) const {
  auto sec = sections_.find(section);
  return sec != sections_.end() && sec->second.count(key) != 0;
}

const std::string& KeyValueConfig::raw(const std::string& section,
                                       const std::string& key) const {
  auto sec = sections_.find(section);
  if (sec == sections_.end()) {
    throw LookupError("no config section [" + section + "]");
  }
  auto it = sec->second.find(key);
  if (it == sec->second.end()) {
    throw LookupError("no config key " + section + "." + key);
  }
  return it->second;
}

std::string KeyValueConfig::get_string(const std::string& section,
                                       const std::string& key,
                                       const std::string& fallback) const {
  return has(section, key) ? raw(section, key) : fallback;
}

double KeyValueConfig::get_double(const std::string& section,
                                  const std::string& key,
                                  double fallback) const {
  if (!has(section, key)) return fallback;
  return to_double(raw(section, key), section + "." + key);
}

std::uint32_t KeyValueConfig::get_u32(const std::string& section,
                                      const std::string& key,
                                      std::uint32_t fallback) const {
  if (!has(section, key)) return fallback;
  std::uint64_t v = to_u64(raw(section, key), section + "." + key);
  if (v > 0xffffffffULL) {
    throw ParseError(section + "." + key + ": value too large");
  }
  return static_cast<std::uint32_t>(v);
}

std::uint64_t KeyValueConfig::get_u64(const std::string& section,
                                      const std::string& key,
                                      std::uint64_t fallback) const {
  if (!has(section, key)) return fallback;
  return to_u64(raw(section, key), section + "." + key);
}

bool KeyValueConfig::get_bool(const std::string& section,
                              const std::string& key, bool fallback) const {
  if (!has(section, key)) return fallback;
  return to_bool(raw(section, key), section + "." + key);
}

std::vector<std::string> KeyValueConfig::get_list(
    const std::string& section, const std::string& key) const {
  return split_list(raw(section, key));
}

ExperimentSpec experiment_spec_from_config(const KeyValueConfig& config,
                                           bool quick) {
  reject_unknown(config);

  ExperimentSpec spec;

  ScenarioConfig& scn = spec.base_scenario;
  scn.num_channels = config.get_u32("scenario", "num_channels", scn.num_channels);
  scn.num_sbs = config.get_u32("scenario", "num_sbs", scn.num_sbs);
  scn.num_laa_ue = config.get_u32("scenario", "num_laa_ue", scn.num_laa_ue);
  scn.num_wifi_ap = config.get_u32("scenario", "num_wifi_ap", scn.num_wifi_ap);
  scn.num_wifi_ue_per_ap =
      config.get_u32("scenario", "num_wifi_ue_per_ap", scn.num_wifi_ue_per_ap);
  scn.mbs_radius = config.get_double("scenario", "mbs_radius", scn.mbs_radius);
  scn.sbs_radius = config.get_double("scenario", "sbs_radius", scn.sbs_radius);
  scn.ap_radius = config.get_double("scenario", "ap_radius", scn.ap_radius);
  scn.seed = config.get_u64("scenario", "seed", scn.seed);

  RadioParams& radio = spec.radio;
  radio.p_laa = config.get_double("radio", "p_laa", radio.p_laa);
  radio.p_wifi_ap = config.get_double("radio", "p_wifi_ap", radio.p_wifi_ap);
  radio.t_max_ms = config.get_double("radio", "t_max_ms", radio.t_max_ms);
  radio.i_cca_ms = config.get_double("radio", "i_cca_ms", radio.i_cca_ms);
  radio.noise = config.get_double("radio", "noise", radio.noise);
  radio.pl0_db = config.get_double("radio", "pl0_db", radio.pl0_db);
  radio.d0 = config.get_double("radio", "d0", radio.d0);
  radio.path_loss_exponent =
      config.get_double("radio", "path_loss_exponent", radio.path_loss_exponent);
  std::string serving = config.get_string("radio", "serving_transmitter", "sbs");
  if (serving == "mbs") {
    radio.serve_from_mbs = true;
  } else if (serving == "sbs") {
    radio.serve_from_mbs = false;
  } else {
    throw ParseError("radio.serving_transmitter must be sbs or mbs");
  }
  radio.rayleigh_fading =
      config.get_bool("radio", "rayleigh_fading", radio.rayleigh_fading);
  radio.fading_seed = config.get_u64("radio", "fading_seed", radio.fading_seed);
  std::uint32_t log_base = config.get_u32("radio", "log_base", 10);
  if (log_base == 2) {
    radio.use_log2 = true;
  } else if (log_base == 10) {
    radio.use_log2 = false;
  } else {
    throw ParseError("radio.log_base must be 10 or 2");
  }

  Hyperparams& hp = spec.hyper;
  hp.alpha = config.get_double("hyperparams", "alpha", hp.alpha);
  hp.gamma = config.get_double("hyperparams", "gamma", hp.gamma);
  hp.train_iterations =
      config.get_u32("hyperparams", "train_iterations", hp.train_iterations);
  hp.train.learning_rate =
      config.get_double("hyperparams", "learning_rate", hp.train.learning_rate);
  hp.train.batch_size =
      config.get_u32("hyperparams", "batch_size", hp.train.batch_size);
  hp.train.target_update_period = config.get_u32(
      "hyperparams", "target_update_period", hp.train.target_update_period);
  hp.train.buffer_capacity =
      config.get_u32("hyperparams", "buffer_capacity", hp.train.buffer_capacity);
  hp.train.epsilon_start =
      config.get_double("hyperparams", "epsilon_start", hp.train.epsilon_start);
  hp.train.epsilon_end =
      config.get_double("hyperparams", "epsilon_end", hp.train.epsilon_end);
  hp.train.epsilon_decay_steps = config.get_u32(
      "hyperparams", "epsilon_decay_steps", hp.train.epsilon_decay_steps);

  spec.sweep_variable = sweep_variable_from(
      config.get_string("experiment", "sweep_variable", "laa_ue"));
  if (config.has("experiment", "sweep_values")) {
    spec.sweep_values.clear();
    for (const std::string& item : config.get_list("experiment", "sweep_values")) {
      spec.sweep_values.push_back(static_cast<std::uint32_t>(
          to_u64(item, "experiment.sweep_values")));
    }
  }
  if (config.has("experiment", "agents")) {
    spec.agents.clear();
    for (const std::string& item : config.get_list("experiment", "agents")) {
      spec.agents.push_back(agent_kind_from(item));
    }
  }
  if (config.has("experiment", "seeds")) {
    spec.seeds.clear();
    for (const std::string& item : config.get_list("experiment", "seeds")) {
      spec.seeds.push_back(to_u64(item, "experiment.seeds"));
    }
  }
  spec.num_eval_scenarios = config.get_u32("experiment", "num_eval_scenarios",
                                           spec.num_eval_scenarios);
  spec.measure_wall_time =
      config.get_bool("experiment", "timing", spec.measure_wall_time);
  spec.threads = config.get_u32("experiment", "threads", spec.threads);

  if (quick) apply_quick_profile(spec);

  if (const char* env = std::getenv("COEX_SEED"); env != nullptr) {
    std::vector<std::uint64_t> seeds;
    for (const std::string& item : split_list(env)) {
      seeds.push_back(to_u64(item, "COEX_SEED"));
    }
    if (seeds.empty()) throw ParseError("COEX_SEED is set but holds no seeds");
    spec.seeds = std::move(seeds);
  }

  spec.validate();
  return spec;
}

ExperimentSpec load_experiment_spec(const std::filesystem::path& path,
                                    bool quick) {
  if (path.empty()) {
    return experiment_spec_from_config(KeyValueConfig{}, quick);
  }
  return experiment_spec_from_config(KeyValueConfig::parse_file(path), quick);
}

}  // namespace coexsim
