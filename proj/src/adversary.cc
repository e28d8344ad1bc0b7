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

#include "robustflow/adversary.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <utility>

#include "random_util.h"
#include "robustflow/flow.h"

namespace robustflow {

const char* AttackMethodName(AttackMethod method) {
  switch (method) {
    case AttackMethod::kNone:
      return "none";
    case AttackMethod::kExact:
      return "exact";
    case AttackMethod::kGreedy:
      return "greedy";
    case AttackMethod::kAcceleratedGreedy:
      return "accelerated_greedy";
    case AttackMethod::kPartitioning:
      return "partitioning";
  }
  return "unknown";
}

const char* AdversaryModeName(AdversaryMode mode) {
  return mode == AdversaryMode::kExact ? "exact" : "heuristic";
}

namespace {

constexpr double kValueTolerance = 1e-9;

// Values on the 1e-9 comparison grid.
int64_t Grid(double value) { return std::llround(value * 1e9); }

Attack With(const Attack& attack, EdgeIndex e) {
  Attack out = attack;
  out.insert(std::lower_bound(out.begin(), out.end(), e), e);
  return out;
}

// Calls `visit` on every subset of `pool` with at most `gamma` elements, by
// size and then lexicographically.
void ForEachSubset(const std::vector<EdgeIndex>& pool, int gamma,
                   const std::function<void(const Attack&)>& visit) {
  const int n = static_cast<int>(pool.size());
  gamma = std::clamp(gamma, 0, n);
  for (int k = 0; k <= gamma; ++k) {
    std::vector<int> pos(k);
    for (int i = 0; i < k; ++i) pos[i] = i;
    Attack attack(k);
    while (true) {
      for (int i = 0; i < k; ++i) attack[i] = pool[pos[i]];
      visit(attack);
      int i = k - 1;
      while (i >= 0 && pos[i] == n - k + i) --i;
      if (i < 0) break;
      ++pos[i];
      for (int j = i + 1; j < k; ++j) pos[j] = pos[j - 1] + 1;
    }
  }
}

struct GreedyOutcome {
  Attack attack;
  int64_t evaluations = 0;
  // M(x, attack) when it was already computed on the original flow.
  bool has_value = false;
  double value = 0.0;
};

GreedyOutcome RunGreedy(const Network& net, const ReachabilityIndex& reach,
                        const FlowScenario& x, int gamma,
                        const std::vector<EdgeIndex>& candidates, bool lazy,
                        GreedyDiagnostics* diagnostics) {
  GreedyOutcome out;
  if (gamma <= 0) return out;
  if (gamma >= static_cast<int>(candidates.size())) {
    out.attack = candidates;
    std::sort(out.attack.begin(), out.attack.end());
    return out;
  }
  const double routing = RoutingCost(net, x);
  FlowScenario current = x;
  // The rerouted flow for the attack so far carries its own throughput
  // without any extra cost, so the reference value is just x_ts.
  double base = current[net.return_edge()];
  std::vector<bool> chosen(net.num_edges(), false);

  for (int step = 0; step < gamma; ++step) {
    std::vector<EdgeIndex> order;
    for (EdgeIndex e : candidates) {
      if (!chosen[e]) order.push_back(e);
    }
    if (lazy) {
      std::stable_sort(order.begin(), order.end(),
                       [&](EdgeIndex a, EdgeIndex b) {
                         const int64_t ga = Grid(current[a]);
                         const int64_t gb = Grid(current[b]);
                         return ga != gb ? ga > gb : a < b;
                       });
    }
    EdgeIndex best = -1;
    int64_t best_gain = 0;
    double best_raw_gain = 0.0;
    AdjustedFlowResult best_result;
    double max_unevaluated = -kInfinity;
    for (size_t i = 0; i < order.size(); ++i) {
      const EdgeIndex e = order[i];
      if (lazy && best >= 0) {
        // One grid unit of slack absorbs rounding in the bound.
        const int64_t bound = Grid(current[e]) + 1;
        if (bound < best_gain || (bound == best_gain && e > best)) {
          for (size_t j = i; j < order.size(); ++j) {
            max_unevaluated = std::max(max_unevaluated, current[order[j]]);
          }
          break;
        }
      }
      AdjustedFlowResult r = IdentifyFlow(net, reach, current,
                                          With(out.attack, e));
      ++out.evaluations;
      const double gain = base - r.objective;
      if (diagnostics != nullptr) {
        diagnostics->evaluations.push_back({step, e, current[e], gain});
      }
      const int64_t g = Grid(gain);
      if (best < 0 || g > best_gain || (g == best_gain && e < best)) {
        best = e;
        best_gain = g;
        best_raw_gain = gain;
        best_result = std::move(r);
      }
    }
    if (diagnostics != nullptr) {
      diagnostics->steps.push_back({best, best_raw_gain, max_unevaluated});
    }
    if (step == 0 && gamma == 1) {
      out.has_value = true;
      out.value = best_result.objective - routing;
    }
    out.attack = With(out.attack, best);
    chosen[best] = true;
    current = std::move(best_result.y);
    base = current[net.return_edge()];
  }
  return out;
}

AttackResult FinishGreedy(const Network& net, const ReachabilityIndex& reach,
                          const FlowScenario& x, GreedyOutcome outcome,
                          AttackMethod method) {
  AttackResult result;
  result.attack = std::move(outcome.attack);
  result.method = method;
  result.evaluations = outcome.evaluations;
  if (outcome.has_value) {
    result.value = outcome.value;
  } else {
    result.value = AdaptiveValue(net, reach, x, result.attack);
    ++result.evaluations;
  }
  return result;
}

}  // namespace

AttackResult ExactAttackOver(const Network& net, const ReachabilityIndex& reach,
                             const FlowScenario& x, int gamma,
                             std::vector<EdgeIndex> candidates,
                             uint64_t max_attacks) {
  std::sort(candidates.begin(), candidates.end());
  const uint64_t size =
      AttackSpaceSize(static_cast<int>(candidates.size()), gamma);
  if (size > max_attacks) {
    throw AttackSpaceTooLarge("attack space of " + std::to_string(size) +
                              " exceeds the limit of " +
                              std::to_string(max_attacks));
  }
  const double routing = RoutingCost(net, x);
  AttackResult result;
  result.method = AttackMethod::kExact;
  bool have = false;
  ForEachSubset(candidates, gamma, [&](const Attack& attack) {
    const double value =
        IdentifyFlow(net, reach, x, attack).objective - routing;
    ++result.evaluations;
    if (!have || value < result.value - kValueTolerance ||
        (value <= result.value + kValueTolerance && attack < result.attack)) {
      result.value = value;
      result.attack = attack;
      have = true;
    }
  });
  return result;
}

AttackResult ExactAttack(const Network& net, const FlowScenario& x, int gamma,
                         const AdversaryOptions& options) {
  return ExactAttackOver(net, ReachabilityIndex(net), x, gamma,
                         net.attackable_edges(), options.max_attacks);
}

AttackResult GreedyAttack(const Network& net, const FlowScenario& x, int gamma,
                          GreedyDiagnostics* diagnostics) {
  const ReachabilityIndex reach(net);
  return FinishGreedy(net, reach, x,
                      RunGreedy(net, reach, x, gamma, net.attackable_edges(),
                                /*lazy=*/false, diagnostics),
                      AttackMethod::kGreedy);
}

AttackResult AcceleratedGreedyAttack(const Network& net, const FlowScenario& x,
                                     int gamma,
                                     GreedyDiagnostics* diagnostics) {
  const ReachabilityIndex reach(net);
  return FinishGreedy(net, reach, x,
                      RunGreedy(net, reach, x, gamma, net.attackable_edges(),
                                /*lazy=*/true, diagnostics),
                      AttackMethod::kAcceleratedGreedy);
}

namespace {

// Collects the edges of one side of a partition, merging parallel cut edges,
// then prunes nodes without incident edges.
class SubNetworkBuilder {
 public:
  SubNetworkBuilder(const Network& net, const FlowScenario& x)
      : net_(net), x_(x) {}

  // `original` is -1 for the artificial endpoint.
  int Node(NodeIndex original, const std::string& name) {
    const auto key = std::make_pair(original, name);
    auto it = nodes_.find(key);
    if (it != nodes_.end()) return it->second;
    const int id = static_cast<int>(node_origin_.size());
    nodes_[key] = id;
    node_origin_.push_back(original);
    names_.push_back(name);
    return id;
  }

  void Keep(EdgeIndex e, int tail, int head) {
    edges_.push_back({tail, head, {e}});
  }

  // Adds an original edge as an artificial cut edge; attackable ones with the
  // same endpoints are merged.
  void Cut(EdgeIndex e, int tail, int head) {
    if (!net_.edge(e).attackable) {
      edges_.push_back({tail, head, {e}});
      return;
    }
    const auto key = std::make_pair(tail, head);
    auto it = merged_.find(key);
    if (it == merged_.end()) {
      merged_[key] = edges_.size();
      edges_.push_back({tail, head, {e}});
    } else {
      edges_[it->second].members.push_back(e);
    }
  }

  SubNetwork Build(int source, int terminal) {
    const int n = static_cast<int>(node_origin_.size());
    std::vector<bool> used(n, false);
    used[source] = used[terminal] = true;
    for (const Pending& p : edges_) used[p.tail] = used[p.head] = true;
    std::vector<int> remap(n, -1);
    Topology topo;
    std::vector<NodeIndex> node_origin;
    for (int v = 0; v < n; ++v) {
      if (!used[v]) continue;
      remap[v] = topo.AddNode(names_[v]);
      node_origin.push_back(node_origin_[v]);
    }
    SubNetwork sub;
    FlowScenario flow;
    for (const Pending& p : edges_) {
      Edge edge;
      edge.tail = remap[p.tail];
      edge.head = remap[p.head];
      edge.attackable = true;
      double weighted_cost = 0.0;
      double flow_sum = 0.0;
      for (EdgeIndex e : p.members) {
        const Edge& orig = net_.edge(e);
        edge.capacity += orig.capacity;
        edge.post_attack_capacity += orig.post_attack_capacity;
        edge.attackable = edge.attackable && orig.attackable;
        weighted_cost += orig.capacity * orig.cost;
        flow_sum += x_[e];
      }
      if (p.members.size() == 1) {
        edge.cost = net_.edge(p.members[0]).cost;
        edge.label = net_.edge(p.members[0]).label;
      } else {
        double plain = 0.0;
        for (EdgeIndex e : p.members) plain += net_.edge(e).cost;
        edge.cost = edge.capacity > 0 ? weighted_cost / edge.capacity
                                      : plain / p.members.size();
        edge.label = "merged";
        for (EdgeIndex e : p.members) edge.label += "_" + net_.edge(e).label;
      }
      edge.post_attack_capacity =
          std::min(edge.post_attack_capacity, edge.capacity);
      topo.edges.push_back(edge);
      sub.origin.push_back(p.members);
      flow.push_back(flow_sum);
    }
    double into_terminal = 0.0;
    for (size_t i = 0; i < topo.edges.size(); ++i) {
      if (topo.edges[i].head == remap[terminal]) into_terminal += flow[i];
    }
    flow.push_back(into_terminal);
    sub.origin.push_back({});
    sub.net = Network(std::move(topo), remap[source], remap[terminal]);
    sub.flow = std::move(flow);
    sub.node_origin = std::move(node_origin);
    return sub;
  }

 private:
  struct Pending {
    int tail;
    int head;
    std::vector<EdgeIndex> members;
  };
  const Network& net_;
  const FlowScenario& x_;
  std::map<std::pair<NodeIndex, std::string>, int> nodes_;
  std::vector<NodeIndex> node_origin_;
  std::vector<std::string> names_;
  std::vector<Pending> edges_;
  std::map<std::pair<int, int>, size_t> merged_;
};

}  // namespace

PartitionPair PartitionNetwork(const Network& net, const FlowScenario& x,
                               uint64_t seed) {
  const int n = net.num_nodes();
  if (n < 4) throw std::invalid_argument("partitioning needs 4 or more nodes");
  const NodeIndex s = net.source();
  const NodeIndex t = net.terminal();
  // Nodes fed by unbounded source edges stay with s; nodes draining into
  // the terminal through unbounded edges stay with t.
  std::vector<int> pinned(n, 0);
  for (EdgeIndex e = 0; e < net.num_real_edges(); ++e) {
    const Edge& edge = net.edge(e);
    if (edge.attackable) continue;
    if (edge.tail == s && edge.head != t) pinned[edge.head] = 1;
    if (edge.head == t && edge.tail != s && pinned[edge.tail] == 0) {
      pinned[edge.tail] = 2;
    }
  }
  std::vector<bool> first(n, false);
  first[s] = true;
  int wanted = (n + 1) / 2 - 1;
  std::vector<NodeIndex> pool;
  for (NodeIndex v = 0; v < n; ++v) {
    if (v == s || v == t) continue;
    if (pinned[v] == 1) {
      first[v] = true;
      --wanted;
    } else if (pinned[v] == 0) {
      pool.push_back(v);
    }
  }
  SeededRandom rng(seed);
  for (int i = static_cast<int>(pool.size()) - 1; i > 0; --i) {
    std::swap(pool[i], pool[rng.Int(0, i)]);
  }
  for (int i = 0; i < wanted && i < static_cast<int>(pool.size()); ++i) {
    first[pool[i]] = true;
  }

  SubNetworkBuilder one(net, x);
  SubNetworkBuilder two(net, x);
  const int one_source = one.Node(s, net.node_name(s));
  for (NodeIndex v = 0; v < n; ++v) {
    if (first[v] && v != s) one.Node(v, net.node_name(v));
  }
  const int one_terminal = one.Node(-1, "t_hat");
  const int two_source = two.Node(-1, "s_hat");
  for (NodeIndex v = 0; v < n; ++v) {
    if (!first[v]) two.Node(v, net.node_name(v));
  }
  const int two_terminal = two.Node(t, net.node_name(t));

  for (EdgeIndex e = 0; e < net.num_real_edges(); ++e) {
    const Edge& edge = net.edge(e);
    const bool a = first[edge.tail];
    const bool b = first[edge.head];
    if (a && b) {
      one.Keep(e, one.Node(edge.tail, net.node_name(edge.tail)),
               one.Node(edge.head, net.node_name(edge.head)));
    } else if (!a && !b) {
      two.Keep(e, two.Node(edge.tail, net.node_name(edge.tail)),
               two.Node(edge.head, net.node_name(edge.head)));
    } else if (a && !b) {
      one.Cut(e, one.Node(edge.tail, net.node_name(edge.tail)), one_terminal);
      two.Cut(e, two_source, two.Node(edge.head, net.node_name(edge.head)));
    }
  }
  PartitionPair pair;
  pair.first = one.Build(one_source, one_terminal);
  pair.second = two.Build(two_source, two_terminal);
  return pair;
}

AttackResult PartitioningAttack(const Network& net, const FlowScenario& x,
                                int gamma, const AdversaryOptions& options) {
  const ReachabilityIndex reach(net);
  const int delta = options.delta < 0 ? 5 * gamma : options.delta;
  const int sub_budget = (gamma + 1) / 2;
  AttackResult result;
  result.method = AttackMethod::kPartitioning;
  std::set<EdgeIndex> candidates;
  if (net.num_nodes() < 4) {
    candidates.insert(net.attackable_edges().begin(),
                      net.attackable_edges().end());
  } else {
    for (int it = 0; it < options.max_iterations &&
                     static_cast<int>(candidates.size()) < delta;
         ++it) {
      const PartitionPair pair = PartitionNetwork(
          net, x, options.seed + 0x9E3779B97F4A7C15ULL * (it + 1));
      for (const SubNetwork* sub : {&pair.first, &pair.second}) {
        if (sub->net.attackable_edges().empty()) continue;
        const ReachabilityIndex sub_reach(sub->net);
        AttackResult local;
        try {
          local = ExactAttackOver(sub->net, sub_reach, sub->flow, sub_budget,
                                  sub->net.attackable_edges(),
                                  options.max_attacks);
        } catch (const AttackSpaceTooLarge&) {
          GreedyOutcome g =
              RunGreedy(sub->net, sub_reach, sub->flow, sub_budget,
                        sub->net.attackable_edges(), /*lazy=*/true, nullptr);
          local.attack = g.attack;
          local.evaluations = g.evaluations;
          result.warnings.push_back(
              "sub-problem too large for enumeration; used greedy");
        }
        result.evaluations += local.evaluations;
        for (EdgeIndex e : local.attack) {
          for (EdgeIndex o : sub->origin[e]) candidates.insert(o);
        }
      }
    }
  }
  const std::vector<EdgeIndex> pool(candidates.begin(), candidates.end());
  try {
    AttackResult final_result =
        ExactAttackOver(net, reach, x, gamma, pool, options.max_attacks);
    result.attack = final_result.attack;
    result.value = final_result.value;
    result.evaluations += final_result.evaluations;
  } catch (const AttackSpaceTooLarge&) {
    result.warnings.push_back(
        "candidate set too large for enumeration; used greedy");
    AttackResult g = FinishGreedy(
        net, reach, x,
        RunGreedy(net, reach, x, gamma, pool, /*lazy=*/true, nullptr),
        AttackMethod::kPartitioning);
    result.attack = g.attack;
    result.value = g.value;
    result.evaluations += g.evaluations;
  }
  return result;
}

AttackResult BestAttack(const Network& net, const FlowScenario& x, int gamma,
                        AdversaryMode mode, const AdversaryOptions& options) {
  std::vector<std::string> warnings;
  if (mode == AdversaryMode::kExact) {
    try {
      return ExactAttack(net, x, gamma, options);
    } catch (const AttackSpaceTooLarge& e) {
      warnings.push_back(std::string(e.what()) +
                         "; falling back to heuristic adversary");
    }
  }
  AttackResult greedy = AcceleratedGreedyAttack(net, x, gamma);
  AttackResult part = PartitioningAttack(net, x, gamma, options);
  const int64_t evaluations = greedy.evaluations + part.evaluations;
  AttackResult best =
      part.value < greedy.value - kValueTolerance ? part : greedy;
  best.evaluations = evaluations;
  best.warnings.insert(best.warnings.begin(), warnings.begin(),
                       warnings.end());
  return best;
}

}  // namespace robustflow
