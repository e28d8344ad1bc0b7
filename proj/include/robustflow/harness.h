// Copyright 2026 The robustflow Authors.
//
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

// Evaluation protocol, metrics and the experiment runner.

#ifndef ROBUSTFLOW_HARNESS_H_
#define ROBUSTFLOW_HARNESS_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "robustflow/adversary.h"
#include "robustflow/game.h"
#include "robustflow/instance_io.h"
#include "robustflow/network.h"

namespace robustflow {

enum class Approach { kMf, kOsp, kRf, kAamf, kRamf };

const char* ApproachName(Approach approach);
// Accepts the names above in any case.
Approach ParseApproach(const std::string& name);

struct Metrics {
  // M(x, attack) for the adversary's attack.
  double objective = 0.0;
  // Flow leaving s under x minus the flow reaching t after the attack.
  double lost_flow = 0.0;
  Attack attack;
  AttackMethod method = AttackMethod::kNone;
  // Mean committed flow on the attacked edges, 0 for an empty attack.
  double attacked_mean_flow = 0.0;
  // Mean U_e - x_e over edges touching neither s nor t, 0 if there are none.
  double mean_intermediate_residual = 0.0;
};

Metrics EvaluateApproach(const Network& net, const FlowScenario& x, int gamma,
                         AdversaryMode mode,
                         const AdversaryOptions& options = {});

// (obj_ramf - obj_baseline) * 100 / (max_capacity * gamma); nullopt when
// gamma < 1 or max_capacity <= 0.
std::optional<double> GainPct(double obj_ramf, double obj_baseline,
                              double max_capacity, int gamma);

// Computes the flow of one approach. `trace` receives the game trace for
// RAMF and is left untouched otherwise.
FlowScenario ApproachFlow(const Network& net, Approach approach, int gamma,
                          const GameConfig& game, GameTrace* trace = nullptr);

struct InstanceSpec {
  // Either a file, or generator parameters run once per seed.
  std::string path;
  std::optional<InstanceFormat> format;
  std::optional<GeneratorOptions> generator;
  std::vector<uint64_t> seeds;
  std::vector<std::string> sources;
  std::vector<std::string> sinks;
};

struct ExperimentConfig {
  std::vector<InstanceSpec> instances;
  std::vector<int> gammas = {1};
  // m_e applied to every attackable edge; unset keeps the instance values.
  std::optional<double> post_attack_capacity;
  AdversaryMode adversary_mode = AdversaryMode::kExact;
  std::vector<Approach> approaches = {Approach::kMf, Approach::kOsp,
                                      Approach::kRf, Approach::kAamf,
                                      Approach::kRamf};
  // Seeds parsing draws and the adversary.
  uint64_t seed = 1;
  int max_iterations = 50;
  // Wall times make output differ between runs, so they are opt-in.
  bool timing = false;
  std::string csv_path;
  std::string json_path;
};

// Reads a JSON config. Relative paths are resolved against `base_dir`.
//
//   {"instances": [{"file": "d1.net"},
//                  {"generator": {"nodes": 20, "density": 0.8},
//                   "seeds": [1, 2, 3]}],
//    "gamma": [1, 2], "me": 0, "adversary": "exact",
//    "approaches": ["MF", "OSP", "RF", "AAMF", "RAMF"],
//    "seed": 1, "max_iterations": 50, "timing": false,
//    "csv": "out.csv", "json": "out.json"}
ExperimentConfig ParseExperimentConfig(const std::string& json_text,
                                       const std::string& base_dir = ".");

struct ExperimentRow {
  std::string instance;
  uint64_t seed = 0;
  int gamma = 0;
  std::string approach;
  std::optional<double> objective;
  std::optional<double> lost_flow;
  std::optional<double> gain_pct;
  std::optional<double> attacked_mean_flow;
  std::optional<double> mean_residual;
  std::optional<int> iterations;
  std::optional<double> runtime_ms;
  std::string error;
  // Logged for recomputation; not part of the CSV.
  FlowScenario flow;
  Attack attack;
};

struct ExperimentResult {
  std::vector<ExperimentRow> rows;
};

// Runs every instance, seed, gamma and approach. Failures become rows with
// `error` set. Output is identical for identical configs unless timing is on.
ExperimentResult RunExperiment(const ExperimentConfig& config);

// Numbers are printed with 9 significant digits; absent values are empty.
void WriteCsv(const ExperimentResult& result, std::ostream& out);
std::vector<ExperimentRow> ReadCsv(const std::string& text);
// Rows with logged flows and attacks plus per-approach averages.
void WriteJson(const ExperimentResult& result, std::ostream& out);

// {instance, gamma, iterations: [{k, V_U, V_L, attack, flow}],
//  convergence_reason, final_objective}
void WriteTraceJson(const std::string& instance, int gamma,
                    const GameTrace& trace, std::ostream& out);

// Formats with 9 significant digits.
std::string FormatNumber(double value);

}  // namespace robustflow

#endif  // ROBUSTFLOW_HARNESS_H_
