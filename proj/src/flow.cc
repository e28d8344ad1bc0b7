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

#include "robustflow/flow.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <queue>
#include <stdexcept>
#include <utility>

namespace robustflow {
namespace {

// Residual capacities below this are treated as saturated.
constexpr double kResidualEpsilon = 1e-11;
constexpr double kCostEpsilon = 1e-12;

// Residual graph with paired arcs: arc 2k is forward, arc 2k+1 its reverse.
class ResidualGraph {
 public:
  explicit ResidualGraph(int num_nodes) : adjacency_(num_nodes) {}

  // Returns the index of the forward arc.
  int AddArc(NodeIndex from, NodeIndex to, double capacity, double cost,
             EdgeIndex edge) {
    const int index = static_cast<int>(head_.size());
    head_.push_back(to);
    residual_.push_back(capacity);
    cost_.push_back(cost);
    edge_.push_back(edge);
    adjacency_[from].push_back(index);
    head_.push_back(from);
    residual_.push_back(0.0);
    cost_.push_back(-cost);
    edge_.push_back(edge);
    adjacency_[to].push_back(index + 1);
    return index;
  }

  int num_nodes() const { return static_cast<int>(adjacency_.size()); }
  int num_arcs() const { return static_cast<int>(head_.size()); }

  // Flow pushed along forward arc `arc`.
  double Flow(int arc) const { return residual_[arc ^ 1]; }
  EdgeIndex edge(int arc) const { return edge_[arc]; }

  // Successive shortest paths from s to t. Each unit reaching t is worth 1,
  // so a path is used only while its cost is below 1. Returns the flow sent.
  double SendProfitableFlow(NodeIndex s, NodeIndex t, double limit) {
    const int n = num_nodes();
    std::vector<double> potential(n, 0.0);
    std::vector<double> dist(n);
    std::vector<int> parent_arc(n);
    std::vector<bool> done(n);
    double sent = 0.0;
    while (sent < limit - kResidualEpsilon) {
      std::fill(dist.begin(), dist.end(), kInfinity);
      std::fill(parent_arc.begin(), parent_arc.end(), -1);
      std::fill(done.begin(), done.end(), false);
      typedef std::pair<double, NodeIndex> Entry;
      std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> heap;
      dist[s] = 0.0;
      heap.push({0.0, s});
      while (!heap.empty()) {
        const auto [d, u] = heap.top();
        heap.pop();
        if (done[u]) continue;
        done[u] = true;
        if (u == t) break;
        for (int arc : adjacency_[u]) {
          if (residual_[arc] <= kResidualEpsilon) continue;
          const NodeIndex v = head_[arc];
          if (done[v]) continue;
          const double reduced =
              std::max(0.0, cost_[arc] + potential[u] - potential[v]);
          if (d + reduced < dist[v] - kCostEpsilon) {
            dist[v] = d + reduced;
            parent_arc[v] = arc;
            heap.push({dist[v], v});
          }
        }
      }
      if (!done[t]) break;
      const double path_cost = dist[t] + potential[t] - potential[s];
      if (path_cost >= 1.0 - kCostEpsilon) break;
      double bottleneck = limit - sent;
      for (NodeIndex v = t; v != s; v = head_[parent_arc[v] ^ 1]) {
        bottleneck = std::min(bottleneck, residual_[parent_arc[v]]);
      }
      if (std::isinf(bottleneck)) {
        throw std::runtime_error("unbounded profitable s-t path");
      }
      for (NodeIndex v = t; v != s; v = head_[parent_arc[v] ^ 1]) {
        residual_[parent_arc[v]] -= bottleneck;
        residual_[parent_arc[v] ^ 1] += bottleneck;
      }
      sent += bottleneck;
      const double cap = dist[t];
      for (NodeIndex v = 0; v < n; ++v) {
        potential[v] += std::min(dist[v], cap);
      }
    }
    return sent;
  }

  // Plain max flow by shortest augmenting paths (BFS). Returns the flow.
  double SendMaxFlow(NodeIndex s, NodeIndex t) {
    const int n = num_nodes();
    std::vector<int> parent_arc(n);
    double total = 0.0;
    while (true) {
      std::fill(parent_arc.begin(), parent_arc.end(), -1);
      std::deque<NodeIndex> queue = {s};
      std::vector<bool> seen(n, false);
      seen[s] = true;
      while (!queue.empty() && !seen[t]) {
        const NodeIndex u = queue.front();
        queue.pop_front();
        for (int arc : adjacency_[u]) {
          const NodeIndex v = head_[arc];
          if (seen[v] || residual_[arc] <= kResidualEpsilon) continue;
          seen[v] = true;
          parent_arc[v] = arc;
          queue.push_back(v);
        }
      }
      if (!seen[t]) break;
      double bottleneck = kInfinity;
      for (NodeIndex v = t; v != s; v = head_[parent_arc[v] ^ 1]) {
        bottleneck = std::min(bottleneck, residual_[parent_arc[v]]);
      }
      if (std::isinf(bottleneck)) {
        throw std::runtime_error("unbounded s-t path");
      }
      for (NodeIndex v = t; v != s; v = head_[parent_arc[v] ^ 1]) {
        residual_[parent_arc[v]] -= bottleneck;
        residual_[parent_arc[v] ^ 1] += bottleneck;
      }
      total += bottleneck;
    }
    return total;
  }

  std::vector<bool> ReachableFrom(NodeIndex s) const {
    std::vector<bool> seen(num_nodes(), false);
    std::deque<NodeIndex> queue = {s};
    seen[s] = true;
    while (!queue.empty()) {
      const NodeIndex u = queue.front();
      queue.pop_front();
      for (int arc : adjacency_[u]) {
        const NodeIndex v = head_[arc];
        if (seen[v] || residual_[arc] <= kResidualEpsilon) continue;
        seen[v] = true;
        queue.push_back(v);
      }
    }
    return seen;
  }

 private:
  std::vector<std::vector<int>> adjacency_;
  std::vector<NodeIndex> head_;
  std::vector<double> residual_;
  std::vector<double> cost_;
  std::vector<EdgeIndex> edge_;
};

// Sums arc flows back onto network edges and closes the return edge.
FlowScenario CollectFlow(const Network& net, const ResidualGraph& graph,
                         double throughput) {
  FlowScenario flow(net.num_edges(), 0.0);
  for (int arc = 0; arc < graph.num_arcs(); arc += 2) {
    flow[graph.edge(arc)] += graph.Flow(arc);
  }
  flow[net.return_edge()] = throughput;
  return flow;
}

}  // namespace

double RoutingCost(const Network& net, const FlowScenario& x) {
  double total = 0.0;
  for (EdgeIndex e = 0; e < net.num_real_edges(); ++e) {
    total += net.edge(e).cost * x[e];
  }
  return total;
}

MaxFlowResult MaxFlowMinCost(const Network& net) {
  ResidualGraph graph(net.num_nodes());
  for (EdgeIndex e = 0; e < net.num_real_edges(); ++e) {
    const Edge& edge = net.edge(e);
    if (edge.capacity > 0) {
      graph.AddArc(edge.tail, edge.head, edge.capacity, edge.cost, e);
    }
  }
  const double sent =
      graph.SendProfitableFlow(net.source(), net.terminal(), kInfinity);
  MaxFlowResult result;
  result.flow = CollectFlow(net, graph, sent);
  result.objective = sent - RoutingCost(net, result.flow);
  return result;
}

MinCutResult MinCut(const Network& net) {
  ResidualGraph graph(net.num_nodes());
  for (EdgeIndex e = 0; e < net.num_real_edges(); ++e) {
    const Edge& edge = net.edge(e);
    if (edge.capacity > 0) {
      graph.AddArc(edge.tail, edge.head, edge.capacity, 0.0, e);
    }
  }
  graph.SendMaxFlow(net.source(), net.terminal());
  MinCutResult result;
  result.in_source_side = graph.ReachableFrom(net.source());
  for (EdgeIndex e = 0; e < net.num_real_edges(); ++e) {
    const Edge& edge = net.edge(e);
    if (result.in_source_side[edge.tail] && !result.in_source_side[edge.head]) {
      result.capacity += edge.capacity;
    }
  }
  return result;
}

AdjustedFlowResult IdentifyFlow(const Network& net,
                                const ReachabilityIndex& reach,
                                const FlowScenario& x, const Attack& attack) {
  const std::vector<bool> pi = RerouteEligibility(net, reach, attack);
  const std::vector<bool> mu = AttackIndicator(net, attack);
  ResidualGraph graph(net.num_nodes());
  auto add = [&](const Edge& edge, double capacity, double cost, EdgeIndex e) {
    if (capacity > kResidualEpsilon) {
      graph.AddArc(edge.tail, edge.head, capacity, cost, e);
    }
  };
  for (EdgeIndex e = 0; e < net.num_real_edges(); ++e) {
    const Edge& edge = net.edge(e);
    const double committed = std::clamp(x[e], 0.0, edge.capacity);
    // Attacked edges are capped at m_e. Whatever part of that lies above the
    // committed flow is only usable when the edge is eligible for rerouting.
    const double upper = mu[e] ? edge.post_attack_capacity : edge.capacity;
    add(edge, std::min(committed, upper), 0.0, e);
    if (pi[e] && upper > committed) add(edge, upper - committed, edge.cost, e);
  }
  const double limit = std::max(0.0, x[net.return_edge()]);
  const double sent =
      graph.SendProfitableFlow(net.source(), net.terminal(), limit);
  AdjustedFlowResult result;
  result.y = CollectFlow(net, graph, sent);
  result.z.assign(net.num_edges(), 0.0);
  double penalty = 0.0;
  for (EdgeIndex e = 0; e < net.num_real_edges(); ++e) {
    if (pi[e]) {
      result.z[e] = std::max(0.0, result.y[e] - x[e]);
      penalty += net.edge(e).cost * result.z[e];
    }
  }
  result.objective = sent - penalty;
  return result;
}

AdjustedFlowResult IdentifyFlow(const Network& net, const FlowScenario& x,
                                const Attack& attack) {
  return IdentifyFlow(net, ReachabilityIndex(net), x, attack);
}

double AdaptiveValue(const Network& net, const ReachabilityIndex& reach,
                     const FlowScenario& x, const Attack& attack) {
  return IdentifyFlow(net, reach, x, attack).objective - RoutingCost(net, x);
}

double AdaptiveValue(const Network& net, const FlowScenario& x,
                     const Attack& attack) {
  return AdaptiveValue(net, ReachabilityIndex(net), x, attack);
}

}  // namespace robustflow
