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

// Directed network model shared by every solver in the library.
//
// A Network has a designated source s and terminal t, an ordered list of
// edges, and one artificial return edge t->s with unbounded capacity and zero
// cost. The return edge always has the largest edge index, so a flow is a
// plain vector indexed by EdgeIndex whose last entry is the throughput.

#ifndef ROBUSTFLOW_NETWORK_H_
#define ROBUSTFLOW_NETWORK_H_

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace robustflow {

typedef int NodeIndex;
typedef int EdgeIndex;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Absolute tolerance for conservation and bound checks.
inline constexpr double kFlowTolerance = 1e-6;

struct Edge {
  NodeIndex tail = 0;
  NodeIndex head = 0;
  double capacity = 0.0;
  double cost = 0.0;
  // Capacity left on the edge after it is attacked (m_e).
  double post_attack_capacity = 0.0;
  bool attackable = true;
  std::string label;
};

// Edge list without terminals. Used by parsers and by the multi-terminal
// transform before a Network is assembled.
struct Topology {
  std::vector<std::string> node_names;
  std::vector<Edge> edges;

  NodeIndex AddNode(const std::string& name);
  // Returns -1 if there is no node with this name.
  NodeIndex FindNode(const std::string& name) const;
  EdgeIndex AddEdge(NodeIndex tail, NodeIndex head, double capacity,
                    double cost, double post_attack_capacity,
                    bool attackable = true);
};

class Network {
 public:
  Network() = default;
  // Appends the return edge t->s. Throws std::invalid_argument if s == t or
  // if either index is out of range.
  Network(Topology topology, NodeIndex source, NodeIndex terminal);

  int num_nodes() const { return static_cast<int>(node_names_.size()); }
  // Number of edges including the return edge.
  int num_edges() const { return static_cast<int>(edges_.size()); }
  // Number of edges excluding the return edge.
  int num_real_edges() const { return num_edges() - 1; }

  NodeIndex source() const { return source_; }
  NodeIndex terminal() const { return terminal_; }
  EdgeIndex return_edge() const { return num_edges() - 1; }

  const Edge& edge(EdgeIndex e) const { return edges_[e]; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::string& node_name(NodeIndex v) const { return node_names_[v]; }
  const std::vector<std::string>& node_names() const { return node_names_; }
  NodeIndex FindNode(const std::string& name) const;

  const std::vector<EdgeIndex>& outgoing(NodeIndex v) const {
    return outgoing_[v];
  }
  const std::vector<EdgeIndex>& incoming(NodeIndex v) const {
    return incoming_[v];
  }

  // Attackable edges in increasing index order.
  const std::vector<EdgeIndex>& attackable_edges() const {
    return attackable_;
  }

  // Largest finite capacity among real edges, 0 if there is none.
  double MaxCapacity() const;

  // Copy of the network without the return edge.
  Topology ToTopology() const;

  // Returns a copy where every listed edge has its capacity replaced by the
  // post-attack capacity.
  Network WithAttackedCapacities(const std::vector<EdgeIndex>& attacked) const;

  // Sets m_e = min(value, U_e) on every attackable edge.
  void SetPostAttackCapacity(double value);

  // Free-form notes recorded by generators, parsers and repairs.
  std::vector<std::string>& metadata() { return metadata_; }
  const std::vector<std::string>& metadata() const { return metadata_; }

 private:
  std::vector<std::string> node_names_;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeIndex>> outgoing_;
  std::vector<std::vector<EdgeIndex>> incoming_;
  std::vector<EdgeIndex> attackable_;
  NodeIndex source_ = 0;
  NodeIndex terminal_ = 1;
  std::vector<std::string> metadata_;
};

// Flow value per edge, return edge included.
typedef std::vector<double> FlowScenario;

// Sorted set of attacked edge indices.
typedef std::vector<EdgeIndex> Attack;

// Indicator view of an attack over all edges.
std::vector<bool> AttackIndicator(const Network& net, const Attack& attack);

struct Violation {
  enum class Kind { kMissingValue, kLowerBound, kUpperBound, kConservation };
  Kind kind;
  // Edge index for bound violations, node index for conservation.
  int index;
  double residual;
  std::string ToString() const;
};

struct ValidationReport {
  std::vector<Violation> violations;
  double max_residual = 0.0;
  bool ok() const { return violations.empty(); }
};

// Checks 0 <= x_e <= U_e and conservation at every node except s.
ValidationReport ValidateFlow(const Network& net, const FlowScenario& x,
                              double tolerance = kFlowTolerance);

// Transitive closure of the edge relation, return edge excluded.
class ReachabilityIndex {
 public:
  explicit ReachabilityIndex(const Network& net);

  bool Reaches(NodeIndex u, NodeIndex v) const {
    return reach_[static_cast<size_t>(u) * n_ + v];
  }
  bool ReachesTerminal(NodeIndex v) const { return Reaches(v, terminal_); }
  bool ReachedFromSource(NodeIndex v) const { return Reaches(source_, v); }

 private:
  int n_;
  NodeIndex source_;
  NodeIndex terminal_;
  std::vector<bool> reach_;
};

// pi_e = 1 iff some attacked edge (u, v) has reach(u, tail(e)) and
// reach(head(e), t). The return edge always gets 0.
std::vector<bool> RerouteEligibility(const Network& net,
                                     const ReachabilityIndex& reach,
                                     const Attack& attack);
std::vector<bool> RerouteEligibility(const Network& net, const Attack& attack);

// Enumerates every attack of size 0..gamma over the attackable edges, by size
// and then lexicographically. Stops early when `visit` returns false.
void ForEachAttack(const Network& net, int gamma,
                   const std::function<bool(const Attack&)>& visit);

// sum_{k=0..gamma} C(|attackable|, k), saturating at uint64 max.
uint64_t AttackSpaceSize(const Network& net, int gamma);
uint64_t AttackSpaceSize(int num_edges, int gamma);

// Connects a super-source to every source and every sink to a super-terminal
// with unbounded, zero-cost, unattackable edges. With one source and one sink
// the topology is used as is.
Network TransformMultiTerminal(const Topology& topology,
                               const std::vector<NodeIndex>& sources,
                               const std::vector<NodeIndex>& sinks);

// Adds seeded edges until every node lies on an s->t walk. Returns the
// number of edges added.
int RepairConnectivity(Topology* topology, NodeIndex source,
                       NodeIndex terminal, uint64_t seed);

struct GeneratorOptions {
  int num_nodes = 10;
  double density = 0.5;
  double capacity_min = 1;
  double capacity_max = 20;
  double cost_min = 0.01;
  double cost_max = 0.1;
  uint64_t seed = 1;
};

// Node 0 is s and node n-1 is t. Each ordered pair (u, v) with u != t and
// v != s is an edge with probability `density`. Capacities are integers when
// both capacity bounds are integral. Costs are rounded to 1e-4.
Network GenerateRandom(const GeneratorOptions& options);

// Longest simple s->t path in edges. Falls back to |V|-1 when the search
// exceeds `node_budget` visits.
int LongestSimplePathBound(const Network& net, int64_t node_budget = 2000000);

// Warnings for edges whose cost exceeds 1/(2L).
std::vector<std::string> CostBoundWarnings(const Network& net);

}  // namespace robustflow

#endif  // ROBUSTFLOW_NETWORK_H_
