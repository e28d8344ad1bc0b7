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

// Defender policies: the multi-scenario robust flow LP and four baselines.

#ifndef ROBUSTFLOW_ADMINISTRATOR_H_
#define ROBUSTFLOW_ADMINISTRATOR_H_

#include <ostream>
#include <vector>

#include "robustflow/adversary.h"
#include "robustflow/lp.h"
#include "robustflow/network.h"

namespace robustflow {

// Attacks the administrator hedges against, with their eligibility maps.
class AttackPool {
 public:
  explicit AttackPool(const Network& net) : reach_(net), net_(&net) {}

  // Returns false (and leaves the pool unchanged) for a duplicate.
  bool Add(const Attack& attack);

  int size() const { return static_cast<int>(attacks_.size()); }
  const std::vector<Attack>& attacks() const { return attacks_; }
  const std::vector<bool>& eligibility(int k) const { return pi_[k]; }

 private:
  ReachabilityIndex reach_;
  const Network* net_;
  std::vector<Attack> attacks_;
  std::vector<std::vector<bool>> pi_;
};

struct RobustFlowResult {
  FlowScenario flow;
  // Worst-case adaptive value over the pool (lambda).
  double value = 0.0;
  // Rerouted flow and excess per scenario.
  std::vector<FlowScenario> y;
  std::vector<std::vector<double>> z;
  int lp_iterations = 0;
};

// Maximizes lambda subject to lambda <= M(x, mu) for every pool attack, with
// the rerouting of each scenario as LP variables. With an empty pool this is
// the max-flow min-cost problem. Throws std::runtime_error if the LP solver
// does not reach an optimum. If `lp_dump` is set the LP is written to it.
RobustFlowResult RobustFlow(const Network& net, const AttackPool& pool,
                            const LpOptions& lp_options = {},
                            std::ostream* lp_dump = nullptr);

// MF, then the adversary's best response, then max-flow min-cost again on
// the network with the attacked edges reduced to m_e.
FlowScenario OspFlow(const Network& net, int gamma, AdversaryMode mode,
                     const AdversaryOptions& options = {});

struct RfResult {
  FlowScenario flow;
  double objective = 0.0;
  // Indexed by edge; zero on unattackable edges.
  std::vector<double> theta;
  double zeta = 0.0;
};

// Robust flow assuming the full flow of every attacked edge is lost:
//   max x_ts - sum theta_e - gamma * zeta
//   s.t. conservation, theta_e + zeta >= x_e, 0 <= x <= U, theta, zeta >= 0.
// Routing costs are not part of the model.
RfResult RfFlow(const Network& net, int gamma);

struct AamfResult {
  FlowScenario flow;
  double objective = 0.0;
  double theta = 0.0;
  std::vector<bool> cut;
};

// Approximate adaptive max flow over the minimum cut S:
//   max sum_{out(S)} x - sum_{in(S)} x - gamma * theta
//   s.t. conservation on V \ {s, t}, x_e <= theta, 0 <= x <= U.
// Among optimal solutions the one with least total flow is returned.
// Routing costs are not part of the model.
AamfResult AamfFlow(const Network& net, int gamma);

}  // namespace robustflow

#endif  // ROBUSTFLOW_ADMINISTRATOR_H_
