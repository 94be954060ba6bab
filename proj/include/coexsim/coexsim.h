/* Copyright 2026 The coexsim Authors
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the coexsim LAA/Wi-Fi coexistence simulator.
 *
 * All objects are opaque handles created and destroyed through this API;
 * every fallible call returns a coex_status, and coex_last_error() holds a
 * human-readable message for the most recent failure on the calling thread.
 * Strings returned through char** parameters are owned by the caller and
 * must be released with coex_string_free().
 */

#ifndef COEXSIM_COEXSIM_H_
#define COEXSIM_COEXSIM_H_

#include <stdint.h>

#if defined(_WIN32)
#define COEX_API __declspec(dllexport)
#else
#define COEX_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum coex_status {
  COEX_OK = 0,
  COEX_ERR_INVALID_ARGUMENT = 1,
  COEX_ERR_CONFIG = 2,
  COEX_ERR_PRECONDITION = 3,
  COEX_ERR_LOOKUP = 4,
  COEX_ERR_RANGE = 5,
  COEX_ERR_STATE = 6,
  COEX_ERR_IO = 7,
  COEX_ERR_PARSE = 8,
  COEX_ERR_SHAPE = 9,
  COEX_ERR_INTERNAL = 10
} coex_status;

COEX_API const char* coex_status_name(coex_status status);
COEX_API const char* coex_last_error(void);
COEX_API const char* coex_version(void);
COEX_API void coex_string_free(char* text);

/* ---- deployment generation ------------------------------------------- */

typedef struct coex_scenario coex_scenario;
typedef struct coex_assignment coex_assignment;
typedef struct coex_agent coex_agent;

typedef struct coex_scenario_config {
  uint32_t num_channels;
  uint32_t num_sbs;
  uint32_t num_laa_ue;
  uint32_t num_wifi_ap;
  uint32_t num_wifi_ue_per_ap;
  double mbs_radius;
  double sbs_radius;
  double ap_radius;
  uint64_t seed;
} coex_scenario_config;

COEX_API void coex_scenario_config_default(coex_scenario_config* config);

/* Deterministic in the config, seed included. */
COEX_API coex_status coex_scenario_generate(const coex_scenario_config* config,
                                            coex_scenario** scenario);
COEX_API void coex_scenario_free(coex_scenario* scenario);
COEX_API uint32_t coex_scenario_num_laa_ue(const coex_scenario* scenario);
COEX_API uint32_t coex_scenario_num_channels(const coex_scenario* scenario);

/* Line-oriented text: node_type id x y serving_id channel. */
COEX_API coex_status coex_scenario_dump(const coex_scenario* scenario,
                                        char** text);

/* ---- channel assignments and throughput ------------------------------ */

typedef struct coex_radio_params {
  double p_laa;      /* watts */
  double p_wifi_ap;  /* watts */
  double t_max_ms;
  double i_cca_ms;
  double noise;      /* watts */
  double pl0_db;
  double d0;         /* meters */
  double path_loss_exponent;
  int32_t serve_from_mbs;
  int32_t rayleigh_fading;
  uint64_t fading_seed;
  int32_t use_log2;
} coex_radio_params;

COEX_API void coex_radio_params_default(coex_radio_params* params);

COEX_API coex_status coex_assignment_create(const coex_scenario* scenario,
                                            coex_assignment** assignment);
COEX_API void coex_assignment_free(coex_assignment* assignment);
COEX_API coex_status coex_assignment_set(coex_assignment* assignment,
                                         uint32_t ue_id, uint32_t channel);
/* Writes -1 for an unassigned UE. */
COEX_API coex_status coex_assignment_get(const coex_assignment* assignment,
                                         uint32_t ue_id, int32_t* channel);
COEX_API int32_t coex_assignment_complete(const coex_assignment* assignment);

/* Minimum-interference-distance selection for every UE, in id order. */
COEX_API coex_status coex_assign_mid(const coex_scenario* scenario,
                                     const coex_radio_params* params,
                                     coex_assignment** assignment);

COEX_API coex_status coex_total_throughput(const coex_scenario* scenario,
                                           const coex_assignment* assignment,
                                           const coex_radio_params* params,
                                           double* total);
COEX_API coex_status coex_ue_throughput(const coex_scenario* scenario,
                                        const coex_assignment* assignment,
                                        uint32_t ue_id,
                                        const coex_radio_params* params,
                                        double* throughput);
COEX_API coex_status coex_interference_at_ue(const coex_scenario* scenario,
                                             const coex_assignment* assignment,
                                             uint32_t ue_id, uint32_t channel,
                                             const coex_radio_params* params,
                                             double* ap_to_ue,
                                             double* ue_to_ue);

/* ---- learning agents -------------------------------------------------- */

typedef enum coex_agent_kind {
  COEX_AGENT_MID = 0,
  COEX_AGENT_TABULAR = 1,
  COEX_AGENT_DQN = 2,
  COEX_AGENT_DOUBLE_DQN = 3,
  COEX_AGENT_DUELING_DQN = 4
} coex_agent_kind;

typedef struct coex_hyperparams {
  double alpha;   /* tabular learning rate */
  double gamma;
  uint32_t train_iterations;
  double learning_rate;  /* network learning rate */
  uint32_t batch_size;
  uint32_t target_update_period;
  uint32_t buffer_capacity;
  double epsilon_start;
  double epsilon_end;
  uint32_t epsilon_decay_steps; /* 0: half of train_iterations */
} coex_hyperparams;

COEX_API void coex_hyperparams_default(coex_hyperparams* params);

/* Trains a learning agent on fresh random deployments drawn from the
 * config; kind must not be COEX_AGENT_MID. */
COEX_API coex_status coex_agent_train(coex_agent_kind kind,
                                      const coex_scenario_config* config,
                                      const coex_radio_params* params,
                                      const coex_hyperparams* hyper,
                                      uint64_t seed, coex_agent** agent);
COEX_API void coex_agent_free(coex_agent* agent);

/* Greedy sequential assignment in UE-id order. */
COEX_API coex_status coex_agent_assign(const coex_agent* agent,
                                       const coex_scenario* scenario,
                                       const coex_radio_params* params,
                                       coex_assignment** assignment);

COEX_API coex_status coex_agent_save(const coex_agent* agent, const char* path);
COEX_API coex_status coex_agent_load(const char* path, coex_agent** agent);

/* ---- experiment driver ------------------------------------------------ */

/* Runs the sweep described by the config file (NULL for built-in defaults)
 * and writes results.csv plus plot_results.py into out_dir. quick trims
 * training to 2,000 iterations and 3 seeds; timing enables the volatile
 * wall_time_s column; threads overrides the worker count when nonzero.
 * On success *csv_path_out (optional) receives the CSV path. */
COEX_API coex_status coex_run_experiment(const char* config_path, int32_t quick,
                                         int32_t timing, uint32_t threads,
                                         const char* out_dir,
                                         char** csv_path_out);

/* Exhaustive-search comparison of MID against the optimum on small random
 * instances; returns a text table. */
COEX_API coex_status coex_oracle_report(uint32_t max_ue, uint32_t max_channels,
                                        uint32_t num_seeds, uint64_t base_seed,
                                        char** report);

/* Runs the invariant suite; *failures receives the failed-check count. */
COEX_API coex_status coex_selfcheck(char** report, uint32_t* failures);

#ifdef __cplusplus
}
#endif

#endif /* COEXSIM_COEXSIM_H_ */
