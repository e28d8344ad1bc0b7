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

#include "robustflow/game.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "robustflow/administrator.h"
#include "robustflow/flow.h"

namespace robustflow {

const char* ConvergenceReasonName(ConvergenceReason reason) {
  switch (reason) {
    case ConvergenceReason::kBoundsMet:
      return "bounds_met";
    case ConvergenceReason::kFlowRepeated:
      return "flow_repeated";
    case ConvergenceReason::kAttackRepeated:
      return "attack_repeated";
    case ConvergenceReason::kIterationCap:
      return "iteration_cap";
  }
  return "unknown";
}

namespace {

double MaxAbsDifference(const FlowScenario& a, const FlowScenario& b) {
  double d = 0.0;
  for (size_t i = 0; i < a.size(); ++i) d = std::max(d, std::fabs(a[i] - b[i]));
  return d;
}

std::string AttackString(const Network& net, const Attack& attack) {
  std::ostringstream out;
  out << "{";
  for (size_t i = 0; i < attack.size(); ++i) {
    out << (i ? ", " : "") << net.edge(attack[i]).label;
  }
  out << "}";
  return out.str();
}

}  // namespace

GameResult SolveTnfg(const Network& net, int gamma, const GameConfig& config) {
  if (gamma < 0) throw std::invalid_argument("gamma must be non-negative");
  using Clock = std::chrono::steady_clock;
  AttackPool pool(net);
  GameTrace trace;
  std::optional<Attack> previous_attack;
  std::vector<FlowScenario> executed;
  trace.upper = kInfinity;
  trace.lower = -kInfinity;

  bool done = false;
  for (int k = 1; k <= config.max_iterations && !done; ++k) {
    const auto start = Clock::now();
    RobustFlowResult admin = RobustFlow(net, pool, config.lp);
    trace.upper = std::min(trace.upper, admin.value);
    const bool repeated =
        std::any_of(executed.begin(), executed.end(), [&](const auto& x) {
          return MaxAbsDifference(x, admin.flow) <= config.flow_tolerance;
        });
    if (repeated) {
      trace.reason = ConvergenceReason::kFlowRepeated;
      break;
    }
    executed.push_back(admin.flow);
    AttackResult attack = BestAttack(net, admin.flow, gamma,
                                     config.adversary_mode, config.adversary);
    for (std::string& w : attack.warnings) trace.warnings.push_back(w);

    IterationRecord record;
    record.k = k;
    record.flow = std::move(admin.flow);
    record.attack = attack.attack;
    record.upper = admin.value;
    record.lower = attack.value;
    record.method = attack.method;
    record.wall_ms =
        std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    trace.iterations.push_back(std::move(record));
    trace.lower = std::max(trace.lower, attack.value);

    if (std::fabs(admin.value - attack.value) <=
        config.convergence_tolerance) {
      trace.reason = ConvergenceReason::kBoundsMet;
      done = true;
    } else if (previous_attack && *previous_attack == attack.attack) {
      trace.reason = ConvergenceReason::kAttackRepeated;
      done = true;
    } else {
      pool.Add(attack.attack);
      previous_attack = attack.attack;
      if (k == config.max_iterations) {
        trace.reason = ConvergenceReason::kIterationCap;
      }
    }
  }
  if (trace.iterations.empty()) {
    throw std::runtime_error("game finished without executing a flow");
  }

  int best = 0;
  for (int i = 0; i < static_cast<int>(trace.iterations.size()); ++i) {
    if (trace.iterations[i].lower >= trace.iterations[best].lower) best = i;
  }
  trace.final_iteration = trace.iterations[best].k;
  trace.final_objective = trace.iterations[best].lower;
  GameResult result;
  result.flow = trace.iterations[best].flow;
  result.trace = std::move(trace);
  return result;
}

MaximinReport VerifyMaximin(const Network& net, int gamma,
                            const FlowScenario& flow, double value,
                            double tolerance,
                            const AdversaryOptions& options) {
  MaximinReport report;
  const AttackResult worst = ExactAttack(net, flow, gamma, options);
  report.value = worst.value;
  report.attack = worst.attack;
  report.ok = true;
  if (std::fabs(worst.value - value) > tolerance) {
    report.ok = false;
    std::ostringstream msg;
    msg << "claimed value " << value << " but attack "
        << AttackString(net, worst.attack) << " yields " << worst.value;
    report.messages.push_back(msg.str());
  }

  const std::vector<std::pair<std::string, FlowScenario>> baselines = {
      {"MF", MaxFlowMinCost(net).flow},
      {"OSP", OspFlow(net, gamma, AdversaryMode::kExact, options)},
      {"RF", RfFlow(net, gamma).flow},
      {"AAMF", AamfFlow(net, gamma).flow},
  };
  for (const auto& [name, x] : baselines) {
    const AttackResult r = ExactAttack(net, x, gamma, options);
    MaximinReport::Baseline b;
    b.name = name;
    b.value = r.value;
    b.attack = r.attack;
    b.dominated = worst.value >= r.value - tolerance;
    if (!b.dominated) {
      report.ok = false;
      std::ostringstream msg;
      msg << name << " flow reaches " << r.value << " under its worst attack "
          << AttackString(net, r.attack) << ", above " << worst.value;
      report.messages.push_back(msg.str());
    }
    report.baselines.push_back(std::move(b));
  }
  return report;
}

}  // namespace robustflow
