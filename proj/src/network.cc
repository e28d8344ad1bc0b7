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

#include "robustflow/network.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "random_util.h"

namespace robustflow {

NodeIndex Topology::AddNode(const std::string& name) {
  node_names.push_back(name);
  return static_cast<NodeIndex>(node_names.size()) - 1;
}

NodeIndex Topology::FindNode(const std::string& name) const {
  for (size_t i = 0; i < node_names.size(); ++i) {
    if (node_names[i] == name) return static_cast<NodeIndex>(i);
  }
  return -1;
}

EdgeIndex Topology::AddEdge(NodeIndex tail, NodeIndex head, double capacity,
                            double cost, double post_attack_capacity,
                            bool attackable) {
  Edge e;
  e.tail = tail;
  e.head = head;
  e.capacity = capacity;
  e.cost = cost;
  e.post_attack_capacity = post_attack_capacity;
  e.attackable = attackable;
  edges.push_back(e);
  return static_cast<EdgeIndex>(edges.size()) - 1;
}

Network::Network(Topology topology, NodeIndex source, NodeIndex terminal)
    : node_names_(std::move(topology.node_names)),
      edges_(std::move(topology.edges)),
      source_(source),
      terminal_(terminal) {
  const int n = static_cast<int>(node_names_.size());
  if (source < 0 || source >= n || terminal < 0 || terminal >= n) {
    throw std::invalid_argument("source or terminal out of range");
  }
  if (source == terminal) {
    throw std::invalid_argument("source and terminal must differ");
  }
  for (size_t i = 0; i < edges_.size(); ++i) {
    Edge& e = edges_[i];
    if (e.tail < 0 || e.tail >= n || e.head < 0 || e.head >= n) {
      throw std::invalid_argument("edge endpoint out of range");
    }
    if (!(e.capacity >= 0) || !(e.cost >= 0)) {
      throw std::invalid_argument("negative capacity or cost on edge " +
                                  std::to_string(i));
    }
    if (!(e.post_attack_capacity >= 0) ||
        e.post_attack_capacity > e.capacity) {
      throw std::invalid_argument(
          "post-attack capacity outside [0, capacity] on edge " +
          std::to_string(i));
    }
    if (std::isinf(e.capacity) && e.attackable) {
      throw std::invalid_argument("unbounded edge must be unattackable");
    }
    if (e.label.empty()) e.label = "e" + std::to_string(i + 1);
  }
  Edge ret;
  ret.tail = terminal;
  ret.head = source;
  ret.capacity = kInfinity;
  ret.cost = 0.0;
  ret.post_attack_capacity = kInfinity;
  ret.attackable = false;
  ret.label = "return";
  edges_.push_back(ret);

  outgoing_.assign(n, {});
  incoming_.assign(n, {});
  for (EdgeIndex e = 0; e < num_edges(); ++e) {
    outgoing_[edges_[e].tail].push_back(e);
    incoming_[edges_[e].head].push_back(e);
    if (edges_[e].attackable) attackable_.push_back(e);
  }
}

NodeIndex Network::FindNode(const std::string& name) const {
  for (int i = 0; i < num_nodes(); ++i) {
    if (node_names_[i] == name) return i;
  }
  return -1;
}

double Network::MaxCapacity() const {
  double best = 0.0;
  for (EdgeIndex e = 0; e < num_real_edges(); ++e) {
    if (std::isfinite(edges_[e].capacity)) {
      best = std::max(best, edges_[e].capacity);
    }
  }
  return best;
}

Topology Network::ToTopology() const {
  Topology t;
  t.node_names = node_names_;
  t.edges.assign(edges_.begin(), edges_.end() - 1);
  return t;
}

Network Network::WithAttackedCapacities(
    const std::vector<EdgeIndex>& attacked) const {
  Topology t = ToTopology();
  for (EdgeIndex e : attacked) {
    t.edges[e].capacity = t.edges[e].post_attack_capacity;
  }
  Network out(std::move(t), source_, terminal_);
  out.metadata_ = metadata_;
  return out;
}

void Network::SetPostAttackCapacity(double value) {
  for (EdgeIndex e : attackable_) {
    edges_[e].post_attack_capacity = std::min(value, edges_[e].capacity);
  }
}

std::vector<bool> AttackIndicator(const Network& net, const Attack& attack) {
  std::vector<bool> mu(net.num_edges(), false);
  for (EdgeIndex e : attack) mu[e] = true;
  return mu;
}

std::string Violation::ToString() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::kMissingValue:
      out << "missing flow values";
      break;
    case Kind::kLowerBound:
      out << "negative flow on edge " << index;
      break;
    case Kind::kUpperBound:
      out << "capacity exceeded on edge " << index;
      break;
    case Kind::kConservation:
      out << "conservation violated at node " << index;
      break;
  }
  out << " (residual " << residual << ")";
  return out.str();
}

ValidationReport ValidateFlow(const Network& net, const FlowScenario& x,
                              double tolerance) {
  ValidationReport report;
  if (static_cast<int>(x.size()) != net.num_edges()) {
    report.violations.push_back(
        {Violation::Kind::kMissingValue, -1,
         static_cast<double>(net.num_edges()) - static_cast<double>(x.size())});
    report.max_residual = kInfinity;
    return report;
  }
  auto note = [&](Violation::Kind kind, int index, double residual) {
    report.max_residual = std::max(report.max_residual, residual);
    if (residual > tolerance) report.violations.push_back({kind, index, residual});
  };
  for (EdgeIndex e = 0; e < net.num_edges(); ++e) {
    note(Violation::Kind::kLowerBound, e, -x[e]);
    note(Violation::Kind::kUpperBound, e, x[e] - net.edge(e).capacity);
  }
  for (NodeIndex v = 0; v < net.num_nodes(); ++v) {
    if (v == net.source()) continue;
    double balance = 0.0;
    for (EdgeIndex e : net.incoming(v)) balance += x[e];
    for (EdgeIndex e : net.outgoing(v)) balance -= x[e];
    note(Violation::Kind::kConservation, v, std::fabs(balance));
  }
  return report;
}

namespace {

// Nodes reachable from `start` along real edges, forward or backward.
std::vector<bool> Search(int n, const std::vector<Edge>& edges,
                         NodeIndex start, bool forward) {
  std::vector<std::vector<NodeIndex>> adj(n);
  for (const Edge& e : edges) {
    if (forward) {
      adj[e.tail].push_back(e.head);
    } else {
      adj[e.head].push_back(e.tail);
    }
  }
  std::vector<bool> seen(n, false);
  std::deque<NodeIndex> queue = {start};
  seen[start] = true;
  while (!queue.empty()) {
    const NodeIndex u = queue.front();
    queue.pop_front();
    for (NodeIndex v : adj[u]) {
      if (!seen[v]) {
        seen[v] = true;
        queue.push_back(v);
      }
    }
  }
  return seen;
}

}  // namespace

ReachabilityIndex::ReachabilityIndex(const Network& net)
    : n_(net.num_nodes()),
      source_(net.source()),
      terminal_(net.terminal()),
      reach_(static_cast<size_t>(n_) * n_, false) {
  std::vector<Edge> real(net.edges().begin(), net.edges().end() - 1);
  for (NodeIndex u = 0; u < n_; ++u) {
    const std::vector<bool> seen = Search(n_, real, u, true);
    for (NodeIndex v = 0; v < n_; ++v) {
      reach_[static_cast<size_t>(u) * n_ + v] = seen[v];
    }
  }
}

std::vector<bool> RerouteEligibility(const Network& net,
                                     const ReachabilityIndex& reach,
                                     const Attack& attack) {
  std::vector<bool> pi(net.num_edges(), false);
  if (attack.empty()) return pi;
  std::vector<NodeIndex> tails;
  for (EdgeIndex a : attack) tails.push_back(net.edge(a).tail);
  std::sort(tails.begin(), tails.end());
  tails.erase(std::unique(tails.begin(), tails.end()), tails.end());
  for (EdgeIndex e = 0; e < net.num_real_edges(); ++e) {
    const Edge& edge = net.edge(e);
    if (!reach.ReachesTerminal(edge.head)) continue;
    for (NodeIndex u : tails) {
      if (reach.Reaches(u, edge.tail)) {
        pi[e] = true;
        break;
      }
    }
  }
  return pi;
}

std::vector<bool> RerouteEligibility(const Network& net, const Attack& attack) {
  return RerouteEligibility(net, ReachabilityIndex(net), attack);
}

void ForEachAttack(const Network& net, int gamma,
                   const std::function<bool(const Attack&)>& visit) {
  const std::vector<EdgeIndex>& pool = net.attackable_edges();
  const int n = static_cast<int>(pool.size());
  gamma = std::clamp(gamma, 0, n);
  for (int k = 0; k <= gamma; ++k) {
    std::vector<int> pos(k);
    for (int i = 0; i < k; ++i) pos[i] = i;
    Attack attack(k);
    while (true) {
      for (int i = 0; i < k; ++i) attack[i] = pool[pos[i]];
      if (!visit(attack)) return;
      int i = k - 1;
      while (i >= 0 && pos[i] == n - k + i) --i;
      if (i < 0) break;
      ++pos[i];
      for (int j = i + 1; j < k; ++j) pos[j] = pos[j - 1] + 1;
    }
  }
}

uint64_t AttackSpaceSize(int num_edges, int gamma) {
  gamma = std::clamp(gamma, 0, num_edges);
  const uint64_t kMax = std::numeric_limits<uint64_t>::max();
  uint64_t total = 0;
  uint64_t binom = 1;  // C(num_edges, k)
  for (int k = 0; k <= gamma; ++k) {
    if (k > 0) {
      // binom * (n - k + 1) / k, computed without overflow where possible.
      const unsigned __int128 next =
          static_cast<unsigned __int128>(binom) * (num_edges - k + 1) / k;
      if (next > kMax) return kMax;
      binom = static_cast<uint64_t>(next);
    }
    if (total > kMax - binom) return kMax;
    total += binom;
  }
  return total;
}

uint64_t AttackSpaceSize(const Network& net, int gamma) {
  return AttackSpaceSize(static_cast<int>(net.attackable_edges().size()),
                         gamma);
}

Network TransformMultiTerminal(const Topology& topology,
                               const std::vector<NodeIndex>& sources,
                               const std::vector<NodeIndex>& sinks) {
  if (sources.empty() || sinks.empty()) {
    throw std::invalid_argument("source and sink sets must be non-empty");
  }
  for (NodeIndex a : sources) {
    if (std::find(sinks.begin(), sinks.end(), a) != sinks.end()) {
      throw std::invalid_argument("a node cannot be both source and sink");
    }
  }
  if (sources.size() == 1 && sinks.size() == 1) {
    return Network(topology, sources[0], sinks[0]);
  }
  Topology t = topology;
  NodeIndex s = sources[0];
  NodeIndex d = sinks[0];
  if (sources.size() > 1) {
    s = t.AddNode("super_source");
    for (NodeIndex v : sources) {
      t.AddEdge(s, v, kInfinity, 0.0, kInfinity, false);
      t.edges.back().label = "src_" + t.node_names[v];
    }
  }
  if (sinks.size() > 1) {
    d = t.AddNode("super_terminal");
    for (NodeIndex v : sinks) {
      t.AddEdge(v, d, kInfinity, 0.0, kInfinity, false);
      t.edges.back().label = "snk_" + t.node_names[v];
    }
  }
  return Network(std::move(t), s, d);
}

int RepairConnectivity(Topology* topology, NodeIndex source,
                       NodeIndex terminal, uint64_t seed) {
  SeededRandom rng(seed);
  const int n = static_cast<int>(topology->node_names.size());
  int added = 0;
  auto add = [&](NodeIndex u, NodeIndex v) {
    topology->AddEdge(u, v, 0.0, 0.0, 0.0);
    topology->edges.back().label = "repair" + std::to_string(++added);
  };
  while (true) {
    const std::vector<bool> from_s =
        Search(n, topology->edges, source, true);
    NodeIndex missing = -1;
    std::vector<NodeIndex> reached;
    for (NodeIndex v = 0; v < n; ++v) {
      if (from_s[v] && v != terminal) reached.push_back(v);
      if (!from_s[v] && missing < 0) missing = v;
    }
    if (missing < 0) break;
    add(reached[rng.Int(0, static_cast<int64_t>(reached.size()) - 1)],
        missing);
  }
  while (true) {
    const std::vector<bool> to_t =
        Search(n, topology->edges, terminal, false);
    NodeIndex missing = -1;
    std::vector<NodeIndex> reaching;
    for (NodeIndex v = 0; v < n; ++v) {
      if (to_t[v] && v != source) reaching.push_back(v);
      if (!to_t[v] && missing < 0) missing = v;
    }
    if (missing < 0) break;
    add(missing,
        reaching[rng.Int(0, static_cast<int64_t>(reaching.size()) - 1)]);
  }
  return added;
}

Network GenerateRandom(const GeneratorOptions& options) {
  if (options.num_nodes < 2) {
    throw std::invalid_argument("need at least two nodes");
  }
  if (!(options.density > 0.0 && options.density <= 1.0)) {
    throw std::invalid_argument("density must lie in (0, 1]");
  }
  if (options.capacity_min > options.capacity_max ||
      options.cost_min > options.cost_max || options.capacity_min < 0 ||
      options.cost_min < 0) {
    throw std::invalid_argument("invalid capacity or cost range");
  }
  SeededRandom rng(options.seed);
  const int n = options.num_nodes;
  const NodeIndex s = 0;
  const NodeIndex t = n - 1;
  Topology topo;
  topo.AddNode("s");
  for (int i = 1; i + 1 < n; ++i) topo.AddNode("v" + std::to_string(i));
  topo.AddNode("t");

  std::vector<bool> present(static_cast<size_t>(n) * n, false);
  for (NodeIndex u = 0; u < n; ++u) {
    if (u == t) continue;
    for (NodeIndex v = 0; v < n; ++v) {
      if (v == s || v == u) continue;
      if (rng.Bernoulli(options.density)) {
        topo.AddEdge(u, v, 0.0, 0.0, 0.0);
        present[static_cast<size_t>(u) * n + v] = true;
      }
    }
  }

  const std::vector<bool> from_s = Search(n, topo.edges, s, true);
  const std::vector<bool> to_t = Search(n, topo.edges, t, false);
  bool connected = true;
  for (NodeIndex v = 0; v < n; ++v) connected = connected && from_s[v] && to_t[v];
  int spine_edges = 0;
  if (!connected) {
    std::vector<NodeIndex> order;
    for (NodeIndex v = 1; v + 1 < n; ++v) order.push_back(v);
    for (int i = static_cast<int>(order.size()) - 1; i > 0; --i) {
      std::swap(order[i], order[rng.Int(0, i)]);
    }
    order.insert(order.begin(), s);
    order.push_back(t);
    for (size_t i = 0; i + 1 < order.size(); ++i) {
      const NodeIndex u = order[i];
      const NodeIndex v = order[i + 1];
      if (!present[static_cast<size_t>(u) * n + v]) {
        topo.AddEdge(u, v, 0.0, 0.0, 0.0);
        present[static_cast<size_t>(u) * n + v] = true;
        ++spine_edges;
      }
    }
  }

  const bool integral = std::floor(options.capacity_min) == options.capacity_min &&
                        std::floor(options.capacity_max) == options.capacity_max;
  for (Edge& e : topo.edges) {
    e.capacity = integral
                     ? static_cast<double>(
                           rng.Int(static_cast<int64_t>(options.capacity_min),
                                   static_cast<int64_t>(options.capacity_max)))
                     : rng.Real(options.capacity_min, options.capacity_max);
    e.cost = RoundTo(rng.Real(options.cost_min, options.cost_max), 1e-4);
    e.cost = std::clamp(e.cost, options.cost_min, options.cost_max);
  }

  Network net(std::move(topo), s, t);
  std::ostringstream note;
  note << "generated n=" << n << " density=" << options.density
       << " seed=" << options.seed;
  net.metadata().push_back(note.str());
  if (spine_edges > 0) {
    net.metadata().push_back("spine edges added: " +
                             std::to_string(spine_edges));
  }
  return net;
}

int LongestSimplePathBound(const Network& net, int64_t node_budget) {
  const int n = net.num_nodes();
  std::vector<bool> on_path(n, false);
  int best = 0;
  int64_t visits = 0;
  bool exhausted = false;
  std::function<void(NodeIndex, int)> dfs = [&](NodeIndex u, int depth) {
    if (exhausted) return;
    if (++visits > node_budget) {
      exhausted = true;
      return;
    }
    if (u == net.terminal()) {
      best = std::max(best, depth);
      return;
    }
    on_path[u] = true;
    for (EdgeIndex e : net.outgoing(u)) {
      if (e == net.return_edge()) continue;
      const NodeIndex v = net.edge(e).head;
      if (!on_path[v]) dfs(v, depth + 1);
    }
    on_path[u] = false;
  };
  dfs(net.source(), 0);
  if (exhausted) return n - 1;
  return best;
}

std::vector<std::string> CostBoundWarnings(const Network& net) {
  std::vector<std::string> warnings;
  const int longest = LongestSimplePathBound(net);
  if (longest == 0) return warnings;
  const double bound = 1.0 / (2.0 * longest);
  int count = 0;
  for (EdgeIndex e = 0; e < net.num_real_edges(); ++e) {
    if (net.edge(e).cost > bound + 1e-12) ++count;
  }
  if (count > 0) {
    std::ostringstream out;
    out << count << " edge(s) have cost above 1/(2L) = " << bound
        << " with L = " << longest;
    warnings.push_back(out.str());
  }
  return warnings;
}

}  // namespace robustflow
