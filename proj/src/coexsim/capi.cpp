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

#include "coexsim/coexsim.h"

#include <cstring>
#include <filesystem>
#include <fstream>
#include <new>
#include <string>
#include <utility>

#include "coexsim/agents.hpp"
#include "coexsim/config.hpp"
#include "coexsim/env.hpp"
#include "coexsim/errors.hpp"
#include "coexsim/harness.hpp"
#include "coexsim/mid.hpp"
#include "coexsim/oracle.hpp"
#include "coexsim/radio.hpp"
#include "coexsim/selfcheck.hpp"
#include "coexsim/topology.hpp"

struct coex_scenario {
  coexsim::Scenario impl;
};

struct coex_assignment {
  coexsim::ChannelAssignment impl;
};

struct coex_agent {
  coexsim::Agent impl;
};

namespace {

thread_local std::string g_last_error;

void set_error(const char* message) { g_last_error = message; }

template <typename Fn>
coex_status guarded(Fn&& fn) {
  try {
    fn();
    return COEX_OK;
  } catch (const coexsim::ConfigError& e) {
    set_error(e.what());
    return COEX_ERR_CONFIG;
  } catch (const coexsim::PreconditionError& e) {
    set_error(e.what());
    return COEX_ERR_PRECONDITION;
  } catch (const coexsim::LookupError& e) {
    set_error(e.what());
    return COEX_ERR_LOOKUP;
  } catch (const coexsim::RangeError& e) {
    set_error(e.what());
    return COEX_ERR_RANGE;
  } catch (const coexsim::StateError& e) {
    set_error(e.what());
    return COEX_ERR_STATE;
  } catch (const coexsim::IoError& e) {
    set_error(e.what());
    return COEX_ERR_IO;
  } catch (const coexsim::ParseError& e) {
    set_error(e.what());
    return COEX_ERR_PARSE;
  } catch (const coexsim::ShapeError& e) {
    set_error(e.what());
    return COEX_ERR_SHAPE;
  } catch (const std::bad_alloc&) {
    set_error("out of memory");
    return COEX_ERR_INTERNAL;
  } catch (const std::exception& e) {
    set_error(e.what());
    return COEX_ERR_INTERNAL;
  } catch (...) {
    set_error("unknown failure");
    return COEX_ERR_INTERNAL;
  }
}

coex_status invalid_argument(const char* message) {
  set_error(message);
  return COEX_ERR_INVALID_ARGUMENT;
}

char* copy_string(const std::string& text) {
  char* out = new char[text.size() + 1];
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

coexsim::ScenarioConfig to_cpp(const coex_scenario_config& c) {
  coexsim::ScenarioConfig config;
  config.num_channels = c.num_channels;
  config.num_sbs = c.num_sbs;
  config.num_laa_ue = c.num_laa_ue;
  config.num_wifi_ap = c.num_wifi_ap;
  config.num_wifi_ue_per_ap = c.num_wifi_ue_per_ap;
  config.mbs_radius = c.mbs_radius;
  config.sbs_radius = c.sbs_radius;
  config.ap_radius = c.ap_radius;
  config.seed = c.seed;
  return config;
}

coexsim::RadioParams to_cpp(const coex_radio_params& p) {
  coexsim::RadioParams params;
  params.p_laa = p.p_laa;
  params.p_wifi_ap = p.p_wifi_ap;
  params.t_max_ms = p.t_max_ms;
  params.i_cca_ms = p.i_cca_ms;
  params.noise = p.noise;
  params.pl0_db = p.pl0_db;
  params.d0 = p.d0;
  params.path_loss_exponent = p.path_loss_exponent;
  params.serve_from_mbs = p.serve_from_mbs != 0;
  params.rayleigh_fading = p.rayleigh_fading != 0;
  params.fading_seed = p.fading_seed;
  params.use_log2 = p.use_log2 != 0;
  return params;
}

coexsim::Hyperparams to_cpp(const coex_hyperparams& h) {
  coexsim::Hyperparams hp;
  hp.alpha = h.alpha;
  hp.gamma = h.gamma;
  hp.train_iterations = h.train_iterations;
  hp.train.learning_rate = h.learning_rate;
  hp.train.batch_size = h.batch_size;
  hp.train.target_update_period = h.target_update_period;
  hp.train.buffer_capacity = h.buffer_capacity;
  hp.train.epsilon_start = h.epsilon_start;
  hp.train.epsilon_end = h.epsilon_end;
  hp.train.epsilon_decay_steps = h.epsilon_decay_steps;
  return hp;
}

coexsim::AgentKind to_cpp(coex_agent_kind kind) {
  switch (kind) {
    case COEX_AGENT_MID: return coexsim::AgentKind::kMid;
    case COEX_AGENT_TABULAR: return coexsim::AgentKind::kTabular;
    case COEX_AGENT_DQN: return coexsim::AgentKind::kDqn;
    case COEX_AGENT_DOUBLE_DQN: return coexsim::AgentKind::kDoubleDqn;
    case COEX_AGENT_DUELING_DQN: return coexsim::AgentKind::kDuelingDqn;
  }
  throw coexsim::RangeError("invalid agent kind value");
}

}  // namespace

extern "C" {

const char* coex_status_name(coex_status status) {
  switch (status) {
    case COEX_OK: return "ok";
    case COEX_ERR_INVALID_ARGUMENT: return "invalid argument";
    case COEX_ERR_CONFIG: return "configuration error";
    case COEX_ERR_PRECONDITION: return "precondition violated";
    case COEX_ERR_LOOKUP: return "lookup error";
    case COEX_ERR_RANGE: return "out of range";
    case COEX_ERR_STATE: return "invalid state";
    case COEX_ERR_IO: return "i/o error";
    case COEX_ERR_PARSE: return "parse error";
    case COEX_ERR_SHAPE: return "shape mismatch";
    case COEX_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* coex_last_error(void) { return g_last_error.c_str(); }

const char* coex_version(void) { return "0.1.0"; }

void coex_string_free(char* text) { delete[] text; }

void coex_scenario_config_default(coex_scenario_config* config) {
  if (config == nullptr) return;
  coexsim::ScenarioConfig d;
  config->num_channels = d.num_channels;
  config->num_sbs = d.num_sbs;
  config->num_laa_ue = d.num_laa_ue;
  config->num_wifi_ap = d.num_wifi_ap;
  config->num_wifi_ue_per_ap = d.num_wifi_ue_per_ap;
  config->mbs_radius = d.mbs_radius;
  config->sbs_radius = d.sbs_radius;
  config->ap_radius = d.ap_radius;
  config->seed = d.seed;
}

void coex_radio_params_default(coex_radio_params* params) {
  if (params == nullptr) return;
  coexsim::RadioParams d;
  params->p_laa = d.p_laa;
  params->p_wifi_ap = d.p_wifi_ap;
  params->t_max_ms = d.t_max_ms;
  params->i_cca_ms = d.i_cca_ms;
  params->noise = d.noise;
  params->pl0_db = d.pl0_db;
  params->d0 = d.d0;
  params->path_loss_exponent = d.path_loss_exponent;
  params->serve_from_mbs = d.serve_from_mbs ? 1 : 0;
  params->rayleigh_fading = d.rayleigh_fading ? 1 : 0;
  params->fading_seed = d.fading_seed;
  params->use_log2 = d.use_log2 ? 1 : 0;
}

void coex_hyperparams_default(coex_hyperparams* params) {
  if (params == nullptr) return;
  coexsim::Hyperparams d;
  params->alpha = d.alpha;
  params->gamma = d.gamma;
  params->train_iterations = d.train_iterations;
  params->learning_rate = d.train.learning_rate;
  params->batch_size = d.train.batch_size;
  params->target_update_period = d.train.target_update_period;
  params->buffer_capacity = d.train.buffer_capacity;
  params->epsilon_start = d.train.epsilon_start;
  params->epsilon_end = d.train.epsilon_end;
  params->epsilon_decay_steps = d.train.epsilon_decay_steps;
}

coex_status coex_scenario_generate(const coex_scenario_config* config,
                                   coex_scenario** scenario) {
  if (config == nullptr || scenario == nullptr) {
    return invalid_argument("config and scenario must be non-null");
  }
  return guarded([&] {
    *scenario = new coex_scenario{coexsim::generate_scenario(to_cpp(*config))};
  });
}

void coex_scenario_free(coex_scenario* scenario) { delete scenario; }

uint32_t coex_scenario_num_laa_ue(const coex_scenario* scenario) {
  return scenario == nullptr
             ? 0
             : static_cast<uint32_t>(scenario->impl.laa_ues.size());
}

uint32_t coex_scenario_num_channels(const coex_scenario* scenario) {
  return scenario == nullptr ? 0 : scenario->impl.config.num_channels;
}

coex_status coex_scenario_dump(const coex_scenario* scenario, char** text) {
  if (scenario == nullptr || text == nullptr) {
    return invalid_argument("scenario and text must be non-null");
  }
  return guarded(
      [&] { *text = copy_string(coexsim::dump_scenario(scenario->impl)); });
}

coex_status coex_assignment_create(const coex_scenario* scenario,
                                   coex_assignment** assignment) {
  if (scenario == nullptr || assignment == nullptr) {
    return invalid_argument("scenario and assignment must be non-null");
  }
  return guarded([&] {
    *assignment = new coex_assignment{
        coexsim::ChannelAssignment(scenario->impl.laa_ues.size())};
  });
}

void coex_assignment_free(coex_assignment* assignment) { delete assignment; }

coex_status coex_assignment_set(coex_assignment* assignment, uint32_t ue_id,
                                uint32_t channel) {
  if (assignment == nullptr) return invalid_argument("assignment is null");
  return guarded([&] { assignment->impl.assign(ue_id, channel); });
}

coex_status coex_assignment_get(const coex_assignment* assignment,
                                uint32_t ue_id, int32_t* channel) {
  if (assignment == nullptr || channel == nullptr) {
    return invalid_argument("assignment and channel must be non-null");
  }
  return guarded([&] {
    auto ch = assignment->impl.channel_of(ue_id);
    *channel = ch.has_value() ? static_cast<int32_t>(*ch) : -1;
  });
}

int32_t coex_assignment_complete(const coex_assignment* assignment) {
  return assignment != nullptr && assignment->impl.complete() ? 1 : 0;
}

coex_status coex_assign_mid(const coex_scenario* scenario,
                            const coex_radio_params* params,
                            coex_assignment** assignment) {
  if (scenario == nullptr || params == nullptr || assignment == nullptr) {
    return invalid_argument("scenario, params, assignment must be non-null");
  }
  return guarded([&] {
    *assignment = new coex_assignment{
        coexsim::assign_all_mid(scenario->impl, to_cpp(*params))};
  });
}

coex_status coex_total_throughput(const coex_scenario* scenario,
                                  const coex_assignment* assignment,
                                  const coex_radio_params* params,
                                  double* total) {
  if (scenario == nullptr || assignment == nullptr || params == nullptr ||
      total == nullptr) {
    return invalid_argument("all arguments must be non-null");
  }
  return guarded([&] {
    *total = coexsim::total_throughput(scenario->impl, assignment->impl,
                                       to_cpp(*params))
                 .total;
  });
}

coex_status coex_ue_throughput(const coex_scenario* scenario,
                               const coex_assignment* assignment,
                               uint32_t ue_id, const coex_radio_params* params,
                               double* throughput) {
  if (scenario == nullptr || assignment == nullptr || params == nullptr ||
      throughput == nullptr) {
    return invalid_argument("all arguments must be non-null");
  }
  return guarded([&] {
    *throughput = coexsim::throughput_ue(scenario->impl, assignment->impl,
                                         ue_id, to_cpp(*params));
  });
}

coex_status coex_interference_at_ue(const coex_scenario* scenario,
                                    const coex_assignment* assignment,
                                    uint32_t ue_id, uint32_t channel,
                                    const coex_radio_params* params,
                                    double* ap_to_ue, double* ue_to_ue) {
  if (scenario == nullptr || assignment == nullptr || params == nullptr ||
      ap_to_ue == nullptr || ue_to_ue == nullptr) {
    return invalid_argument("all arguments must be non-null");
  }
  return guarded([&] {
    coexsim::InterferenceBreakdown breakdown = coexsim::interference_at_ue(
        scenario->impl, assignment->impl, ue_id, channel, to_cpp(*params));
    *ap_to_ue = breakdown.ap_to_ue;
    *ue_to_ue = breakdown.ue_to_ue;
  });
}

coex_status coex_agent_train(coex_agent_kind kind,
                             const coex_scenario_config* config,
                             const coex_radio_params* params,
                             const coex_hyperparams* hyper, uint64_t seed,
                             coex_agent** agent) {
  if (config == nullptr || params == nullptr || hyper == nullptr ||
      agent == nullptr) {
    return invalid_argument("config, params, hyper, agent must be non-null");
  }
  return guarded([&] {
    coexsim::ScenarioConfig scenario_config = to_cpp(*config);
    coexsim::EncodingSpec enc{scenario_config.num_channels,
                              scenario_config.mbs_radius};
    coexsim::TrainResult trained = coexsim::train_agent(
        to_cpp(kind), coexsim::make_config_sampler(scenario_config),
        to_cpp(*params), enc, to_cpp(*hyper), seed);
    *agent = new coex_agent{std::move(trained.agent)};
  });
}

void coex_agent_free(coex_agent* agent) { delete agent; }

coex_status coex_agent_assign(const coex_agent* agent,
                              const coex_scenario* scenario,
                              const coex_radio_params* params,
                              coex_assignment** assignment) {
  if (agent == nullptr || scenario == nullptr || params == nullptr ||
      assignment == nullptr) {
    return invalid_argument("agent, scenario, params, assignment must be non-null");
  }
  return guarded([&] {
    *assignment = new coex_assignment{coexsim::assign_all_learned(
        agent->impl, scenario->impl, to_cpp(*params))};
  });
}

coex_status coex_agent_save(const coex_agent* agent, const char* path) {
  if (agent == nullptr || path == nullptr) {
    return invalid_argument("agent and path must be non-null");
  }
  return guarded([&] {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw coexsim::IoError(std::string("cannot open ") + path);
    agent->impl.save(out);
    out.flush();
    if (!out) throw coexsim::IoError(std::string("failed writing ") + path);
  });
}

coex_status coex_agent_load(const char* path, coex_agent** agent) {
  if (path == nullptr || agent == nullptr) {
    return invalid_argument("path and agent must be non-null");
  }
  return guarded([&] {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw coexsim::IoError(std::string("cannot open ") + path);
    *agent = new coex_agent{coexsim::Agent::load(in)};
  });
}

coex_status coex_run_experiment(const char* config_path, int32_t quick,
                                int32_t timing, uint32_t threads,
                                const char* out_dir, char** csv_path_out) {
  if (out_dir == nullptr) return invalid_argument("out_dir is null");
  return guarded([&] {
    std::filesystem::path config =
        config_path != nullptr ? std::filesystem::path(config_path)
                               : std::filesystem::path();
    coexsim::ExperimentSpec spec = coexsim::load_experiment_spec(config, quick != 0);
    if (timing != 0) spec.measure_wall_time = true;
    if (threads != 0) spec.threads = threads;

    std::filesystem::path dir(out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
      throw coexsim::IoError("cannot create output directory " + dir.string());
    }

    coexsim::SweepResult result = coexsim::run_experiment(spec);
    std::filesystem::path csv_path = dir / "results.csv";
    coexsim::emit_csv(result, csv_path);
    coexsim::emit_plot_script(result, dir / "plot_results.py", "results.csv");
    if (csv_path_out != nullptr) {
      *csv_path_out = copy_string(csv_path.string());
    }
  });
}

coex_status coex_oracle_report(uint32_t max_ue, uint32_t max_channels,
                               uint32_t num_seeds, uint64_t base_seed,
                               char** report) {
  if (report == nullptr) return invalid_argument("report is null");
  return guarded([&] {
    *report = copy_string(coexsim::oracle_report(
        max_ue, max_channels, num_seeds, base_seed, coexsim::RadioParams{}));
  });
}

coex_status coex_selfcheck(char** report, uint32_t* failures) {
  if (report == nullptr) return invalid_argument("report is null");
  return guarded([&] {
    std::vector<coexsim::CheckResult> results = coexsim::run_selfcheck();
    uint32_t failed = 0;
    for (const coexsim::CheckResult& r : results) {
      if (!r.passed) ++failed;
    }
    *report = copy_string(coexsim::selfcheck_report(results));
    if (failures != nullptr) *failures = failed;
  });
}

}  // extern "C"
