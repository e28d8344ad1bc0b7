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

#include "robustflow/administrator.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "robustflow/flow.h"

namespace robustflow {

using Relation = LpProblem::Relation;

bool AttackPool::Add(const Attack& attack) {
  Attack sorted = attack;
  std::sort(sorted.begin(), sorted.end());
  if (std::find(attacks_.begin(), attacks_.end(), sorted) != attacks_.end()) {
    return false;
  }
  attacks_.push_back(sorted);
  pi_.push_back(RerouteEligibility(*net_, reach_, sorted));
  return true;
}

namespace {

void RequireOptimal(const LpSolution& solution, const char* what) {
  if (solution.status != LpStatus::kOptimal) {
    throw std::runtime_error(std::string(what) + " LP ended with status " +
                             LpStatusName(solution.status));
  }
}

// Adds x_e in [0, U_e] for every edge and flow conservation at every node
// except `skip_a` and `skip_b`. Returns the index of the first x variable.
int AddFlowVariables(const Network& net, LpProblem* lp, NodeIndex skip_a,
                     NodeIndex skip_b, bool include_return) {
  const int first = lp->num_variables();
  for (EdgeIndex e = 0; e < net.num_edges(); ++e) {
    const bool is_return = e == net.return_edge();
    const double upper =
        is_return ? (include_return ? kInfinity : 0.0) : net.edge(e).capacity;
    lp->AddVariable(0.0, upper, 0.0, "x_" + std::to_string(e));
  }
  for (NodeIndex v = 0; v < net.num_nodes(); ++v) {
    if (v == skip_a || v == skip_b) continue;
    std::vector<std::pair<int, double>> terms;
    for (EdgeIndex e : net.incoming(v)) terms.push_back({first + e, 1.0});
    for (EdgeIndex e : net.outgoing(v)) terms.push_back({first + e, -1.0});
    lp->AddConstraint(terms, Relation::kEqual, 0.0,
                      "flow_" + std::to_string(v));
  }
  return first;
}

FlowScenario ExtractFlow(const Network& net, const LpSolution& sol,
                         int first) {
  FlowScenario flow(net.num_edges());
  for (EdgeIndex e = 0; e < net.num_edges(); ++e) {
    flow[e] = std::max(0.0, sol.values[first + e]);
  }
  return flow;
}

}  // namespace

RobustFlowResult RobustFlow(const Network& net, const AttackPool& pool,
                            const LpOptions& lp_options,
                            std::ostream* lp_dump) {
  LpProblem lp;
  const int x = AddFlowVariables(net, &lp, net.source(), net.source(), true);
  const int lambda = lp.AddVariable(-kInfinity, kInfinity, 1.0, "lambda");
  const EdgeIndex ret = net.return_edge();

  std::vector<std::pair<int, double>> routing;
  for (EdgeIndex e = 0; e < net.num_real_edges(); ++e) {
    if (net.edge(e).cost != 0.0) routing.push_back({x + e, net.edge(e).cost});
  }
  if (pool.size() == 0) {
    std::vector<std::pair<int, double>> terms = routing;
    terms.push_back({lambda, 1.0});
    terms.push_back({x + ret, -1.0});
    lp.AddConstraint(terms, Relation::kLessOrEqual, 0.0, "nominal");
  }

  std::vector<int> y_first(pool.size());
  std::vector<std::vector<int>> z_index(pool.size());
  for (int k = 0; k < pool.size(); ++k) {
    const std::vector<bool> mu = AttackIndicator(net, pool.attacks()[k]);
    const std::vector<bool>& pi = pool.eligibility(k);
    const std::string tag = "_" + std::to_string(k);
    y_first[k] = lp.num_variables();
    for (EdgeIndex e = 0; e < net.num_edges(); ++e) {
      const Edge& edge = net.edge(e);
      const double upper = mu[e] ? edge.post_attack_capacity : edge.capacity;
      lp.AddVariable(0.0, upper, 0.0,
                     "y" + tag + "_" + std::to_string(e));
    }
    z_index[k].assign(net.num_edges(), -1);
    for (EdgeIndex e = 0; e < net.num_real_edges(); ++e) {
      if (pi[e]) {
        z_index[k][e] = lp.AddVariable(0.0, kInfinity, 0.0,
                                       "z" + tag + "_" + std::to_string(e));
      }
    }
    const int y = y_first[k];
    for (NodeIndex v = 0; v < net.num_nodes(); ++v) {
      if (v == net.source()) continue;
      std::vector<std::pair<int, double>> terms;
      for (EdgeIndex e : net.incoming(v)) terms.push_back({y + e, 1.0});
      for (EdgeIndex e : net.outgoing(v)) terms.push_back({y + e, -1.0});
      lp.AddConstraint(terms, Relation::kGreaterOrEqual, 0.0,
                       "reroute" + tag + "_" + std::to_string(v));
    }
    for (EdgeIndex e = 0; e < net.num_edges(); ++e) {
      if (z_index[k][e] >= 0) {
        // z >= y - x.
        lp.AddConstraint({{z_index[k][e], 1.0}, {y + e, -1.0}, {x + e, 1.0}},
                         Relation::kGreaterOrEqual, 0.0,
                         "excess" + tag + "_" + std::to_string(e));
      } else {
        // y <= x on edges that cannot take rerouted flow.
        lp.AddConstraint({{y + e, 1.0}, {x + e, -1.0}},
                         Relation::kLessOrEqual, 0.0,
                         "committed" + tag + "_" + std::to_string(e));
      }
    }
    // lambda <= y_ts - sum p x - sum p z.
    std::vector<std::pair<int, double>> terms = routing;
    terms.push_back({lambda, 1.0});
    terms.push_back({y + ret, -1.0});
    for (EdgeIndex e = 0; e < net.num_real_edges(); ++e) {
      if (z_index[k][e] >= 0 && net.edge(e).cost != 0.0) {
        terms.push_back({z_index[k][e], net.edge(e).cost});
      }
    }
    lp.AddConstraint(terms, Relation::kLessOrEqual, 0.0, "worst" + tag);
  }

  if (lp_dump != nullptr) lp.WriteLpFormat(*lp_dump);
  const LpSolution sol = SolveLp(lp, lp_options);
  RequireOptimal(sol, "robust flow");

  RobustFlowResult result;
  result.flow = ExtractFlow(net, sol, x);
  result.value = sol.values[lambda];
  result.lp_iterations = sol.iterations;
  for (int k = 0; k < pool.size(); ++k) {
    FlowScenario y(net.num_edges());
    std::vector<double> z(net.num_edges(), 0.0);
    for (EdgeIndex e = 0; e < net.num_edges(); ++e) {
      y[e] = std::max(0.0, sol.values[y_first[k] + e]);
      if (z_index[k][e] >= 0) z[e] = std::max(0.0, sol.values[z_index[k][e]]);
    }
    result.y.push_back(std::move(y));
    result.z.push_back(std::move(z));
  }
  return result;
}

FlowScenario OspFlow(const Network& net, int gamma, AdversaryMode mode,
                     const AdversaryOptions& options) {
  const FlowScenario mf = MaxFlowMinCost(net).flow;
  const AttackResult attack = BestAttack(net, mf, gamma, mode, options);
  return MaxFlowMinCost(net.WithAttackedCapacities(attack.attack)).flow;
}

RfResult RfFlow(const Network& net, int gamma) {
  LpProblem lp;
  const int x = AddFlowVariables(net, &lp, net.source(), net.source(), true);
  lp.SetObjective(x + net.return_edge(), 1.0);
  const int zeta = lp.AddVariable(0.0, kInfinity, -gamma, "zeta");
  std::vector<int> theta(net.num_edges(), -1);
  for (EdgeIndex e : net.attackable_edges()) {
    theta[e] =
        lp.AddVariable(0.0, kInfinity, -1.0, "theta_" + std::to_string(e));
    lp.AddConstraint({{theta[e], 1.0}, {zeta, 1.0}, {x + e, -1.0}},
                     Relation::kGreaterOrEqual, 0.0,
                     "loss_" + std::to_string(e));
  }
  const LpSolution sol = SolveLp(lp);
  RequireOptimal(sol, "robust flow baseline");
  RfResult result;
  result.flow = ExtractFlow(net, sol, x);
  result.objective = sol.objective;
  result.zeta = sol.values[zeta];
  result.theta.assign(net.num_edges(), 0.0);
  for (EdgeIndex e : net.attackable_edges()) {
    result.theta[e] = sol.values[theta[e]];
  }
  return result;
}

AamfResult AamfFlow(const Network& net, int gamma) {
  const MinCutResult cut = MinCut(net);
  LpProblem lp;
  // The return edge is left out; it is set from the terminal balance below.
  const int x =
      AddFlowVariables(net, &lp, net.source(), net.terminal(), false);
  const int theta = lp.AddVariable(0.0, kInfinity, -gamma, "theta");
  for (EdgeIndex e = 0; e < net.num_real_edges(); ++e) {
    const Edge& edge = net.edge(e);
    const bool tail_s = cut.in_source_side[edge.tail];
    const bool head_s = cut.in_source_side[edge.head];
    if (tail_s && !head_s) lp.SetObjective(x + e, 1.0);
    if (!tail_s && head_s) lp.SetObjective(x + e, -1.0);
    if (edge.attackable) {
      lp.AddConstraint({{x + e, 1.0}, {theta, -1.0}}, Relation::kLessOrEqual,
                       0.0, "largest_" + std::to_string(e));
    }
  }
  const LpSolution first = SolveLp(lp);
  RequireOptimal(first, "adaptive max flow baseline");

  // Second pass: least total flow among optimal solutions.
  LpProblem tie = lp;
  std::vector<std::pair<int, double>> objective_row;
  for (int j = 0; j < lp.num_variables(); ++j) {
    if (lp.variables()[j].objective != 0.0) {
      objective_row.push_back({j, lp.variables()[j].objective});
    }
    tie.SetObjective(j, 0.0);
  }
  for (EdgeIndex e = 0; e < net.num_real_edges(); ++e) {
    tie.SetObjective(x + e, -1.0);
  }
  const double slack = 1e-9 * std::max(1.0, std::fabs(first.objective));
  tie.AddConstraint(objective_row, Relation::kGreaterOrEqual,
                    first.objective - slack, "optimal_face");
  LpSolution second = SolveLp(tie);
  const LpSolution& sol =
      second.status == LpStatus::kOptimal ? second : first;

  AamfResult result;
  result.flow = ExtractFlow(net, sol, x);
  double into_t = 0.0;
  for (EdgeIndex e : net.incoming(net.terminal())) {
    if (e != net.return_edge()) into_t += result.flow[e];
  }
  for (EdgeIndex e : net.outgoing(net.terminal())) {
    if (e != net.return_edge()) into_t -= result.flow[e];
  }
  result.flow[net.return_edge()] = std::max(0.0, into_t);
  result.objective = lp.EvaluateObjective(sol.values);
  result.theta = sol.values[theta];
  result.cut = cut.in_source_side;
  return result;
}

}  // namespace robustflow
