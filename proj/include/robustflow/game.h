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

// The administrator-vs-adversary loop that produces a robust adaptive flow.

#ifndef ROBUSTFLOW_GAME_H_
#define ROBUSTFLOW_GAME_H_

#include <string>
#include <vector>

#include "robustflow/adversary.h"
#include "robustflow/lp.h"
#include "robustflow/network.h"

namespace robustflow {

struct GameConfig {
  AdversaryMode adversary_mode = AdversaryMode::kExact;
  double convergence_tolerance = 1e-6;
  // Infinity-norm distance under which two flows are the same strategy.
  double flow_tolerance = 1e-6;
  int max_iterations = 50;
  AdversaryOptions adversary;
  LpOptions lp;
};

enum class ConvergenceReason {
  kBoundsMet,
  kFlowRepeated,
  kAttackRepeated,
  kIterationCap,
};

const char* ConvergenceReasonName(ConvergenceReason reason);

struct IterationRecord {
  int k = 0;
  FlowScenario flow;
  Attack attack;
  double upper = 0.0;
  double lower = 0.0;
  AttackMethod method = AttackMethod::kNone;
  double wall_ms = 0.0;
};

struct GameTrace {
  std::vector<IterationRecord> iterations;
  ConvergenceReason reason = ConvergenceReason::kIterationCap;
  // Best bounds seen: the last administrator value (including a solve whose
  // flow repeated and was not executed) and the largest adversary value.
  double upper = 0.0;
  double lower = 0.0;
  // Adversary value of the returned flow.
  double final_objective = 0.0;
  // Iteration whose flow is returned.
  int final_iteration = 0;
  std::vector<std::string> warnings;
};

struct GameResult {
  FlowScenario flow;
  GameTrace trace;
};

// Alternates RobustFlow over the attack pool and BestAttack on the executed
// flow until the bounds meet, a flow or attack repeats, or the iteration cap
// is hit. Returns the executed flow with the largest adversary value, the
// latest one on ties. Requires gamma >= 0.
GameResult SolveTnfg(const Network& net, int gamma,
                     const GameConfig& config = {});

struct MaximinReport {
  struct Baseline {
    std::string name;
    double value = 0.0;
    Attack attack;
    bool dominated = false;
  };
  bool ok = false;
  // Exact adaptive value of the checked flow and the attack reaching it.
  double value = 0.0;
  Attack attack;
  std::vector<Baseline> baselines;
  std::vector<std::string> messages;
};

// Checks by exact enumeration that `flow` has adaptive value `value` and is
// at least as good as the MF, OSP, RF and AAMF flows. Desk scale only: throws
// AttackSpaceTooLarge when enumeration is out of reach.
MaximinReport VerifyMaximin(const Network& net, int gamma,
                            const FlowScenario& flow, double value,
                            double tolerance = 1e-6,
                            const AdversaryOptions& options = {});

}  // namespace robustflow

#endif  // ROBUSTFLOW_GAME_H_
