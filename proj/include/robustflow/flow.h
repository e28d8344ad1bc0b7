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

// Combinatorial flow solvers: max-flow with minimum routing cost, minimum
// s-t cut, and the post-attack rerouting evaluator.

#ifndef ROBUSTFLOW_FLOW_H_
#define ROBUSTFLOW_FLOW_H_

#include <vector>

#include "robustflow/network.h"

namespace robustflow {

struct MaxFlowResult {
  FlowScenario flow;
  // x_ts - sum_e p_e x_e.
  double objective = 0.0;
};

// Maximizes x_ts - sum p_e x_e by successive shortest paths. Every unit that
// reaches t earns 1, so augmentation stops once the cheapest path costs 1 or
// more.
MaxFlowResult MaxFlowMinCost(const Network& net);

struct MinCutResult {
  // in_source_side[v] is true iff v is in S.
  std::vector<bool> in_source_side;
  double capacity = 0.0;
};

// Cost-free max flow; S is the set of nodes reachable from s in the final
// residual graph.
MinCutResult MinCut(const Network& net);

struct AdjustedFlowResult {
  // y_ts - sum p_e z_e.
  double objective = 0.0;
  FlowScenario y;
  // Flow routed above the committed value on eligible edges.
  std::vector<double> z;
};

// Best rerouting of the committed flow `x` after `attack`. Attacked edges keep
// capacity m_e. An edge with pi_e = 0 may carry at most x_e, an edge with
// pi_e = 1 may carry up to U_e and pays p_e per unit above x_e. Flow into t
// is bounded by x_ts.
AdjustedFlowResult IdentifyFlow(const Network& net,
                                const ReachabilityIndex& reach,
                                const FlowScenario& x, const Attack& attack);
AdjustedFlowResult IdentifyFlow(const Network& net, const FlowScenario& x,
                                const Attack& attack);

// Routing cost sum p_e x_e.
double RoutingCost(const Network& net, const FlowScenario& x);

// M(x, attack) = IdentifyFlow(...).objective - RoutingCost(x).
double AdaptiveValue(const Network& net, const ReachabilityIndex& reach,
                     const FlowScenario& x, const Attack& attack);
double AdaptiveValue(const Network& net, const FlowScenario& x,
                     const Attack& attack);

}  // namespace robustflow

#endif  // ROBUSTFLOW_FLOW_H_
