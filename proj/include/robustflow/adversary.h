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

// Attack oracles. Given a committed flow x, the adversary looks for the
// attack of at most gamma edges that minimizes the adaptive value M(x, mu).

#ifndef ROBUSTFLOW_ADVERSARY_H_
#define ROBUSTFLOW_ADVERSARY_H_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "robustflow/network.h"

namespace robustflow {

enum class AttackMethod {
  kNone,
  kExact,
  kGreedy,
  kAcceleratedGreedy,
  kPartitioning,
};

const char* AttackMethodName(AttackMethod method);

enum class AdversaryMode { kExact, kHeuristic };

const char* AdversaryModeName(AdversaryMode mode);

struct AttackResult {
  Attack attack;
  // M(x, attack).
  double value = 0.0;
  AttackMethod method = AttackMethod::kNone;
  // Number of IdentifyFlow calls spent.
  int64_t evaluations = 0;
  std::vector<std::string> warnings;
};

class AttackSpaceTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AdversaryOptions {
  // Largest attack space exact enumeration will visit.
  uint64_t max_attacks = 2000000;
  // Candidate target for the partitioning heuristic; negative means 5*gamma.
  int delta = -1;
  int max_iterations = 20;
  uint64_t seed = 1;
};

// Enumerates every attack of size <= gamma and keeps the smallest M(x, mu).
// Values within 1e-9 are ties, resolved toward the lexicographically smallest
// sorted edge list. Throws AttackSpaceTooLarge above `max_attacks`.
AttackResult ExactAttack(const Network& net, const FlowScenario& x, int gamma,
                         const AdversaryOptions& options = {});

// Same, restricted to subsets of `candidates`.
AttackResult ExactAttackOver(const Network& net, const ReachabilityIndex& reach,
                             const FlowScenario& x, int gamma,
                             std::vector<EdgeIndex> candidates,
                             uint64_t max_attacks);

// Per-evaluation record of a greedy run, used to audit the lazy bound.
struct GreedyDiagnostics {
  struct Evaluation {
    int step;
    EdgeIndex edge;
    // Flow on the edge in the current re-based scenario.
    double current_flow;
    double gain;
  };
  struct Step {
    EdgeIndex picked;
    double gain;
    // Largest bound among edges not evaluated at this step, or -inf.
    double max_unevaluated_bound;
  };
  std::vector<Evaluation> evaluations;
  std::vector<Step> steps;
};

// Picks gamma edges one at a time by largest marginal gain, lowest edge index
// on ties (gains compared on a 1e-9 grid).
//
// After every pick the reference flow is replaced by the rerouted flow for
// the attack chosen so far, and later gains are measured against it. This
// matches the lazy variant below and keeps the bound "gain <= current flow on
// the edge" valid. The returned value is M(x, attack) on the original flow.
AttackResult GreedyAttack(const Network& net, const FlowScenario& x, int gamma,
                          GreedyDiagnostics* diagnostics = nullptr);

// Same selections as GreedyAttack. Edges are evaluated in decreasing order of
// their current flow, which bounds their gain, and the scan stops once the
// best realized gain dominates every remaining bound.
AttackResult AcceleratedGreedyAttack(const Network& net, const FlowScenario& x,
                                     int gamma,
                                     GreedyDiagnostics* diagnostics = nullptr);

// A sub-network produced by partitioning, with the flow it inherits.
struct SubNetwork {
  Network net;
  FlowScenario flow;
  // For each sub-network edge, the original edges it stands for.
  std::vector<std::vector<EdgeIndex>> origin;
  // Original node index for each sub-network node, -1 for artificial ones.
  std::vector<NodeIndex> node_origin;
};

struct PartitionPair {
  // Holds s, the sampled nodes and an artificial terminal.
  SubNetwork first;
  // Holds the remaining nodes, t and an artificial source.
  SubNetwork second;
};

// Samples ceil(N/2)-1 intermediate nodes into the first part. Edges from the
// first part to the second become u->t_hat in the first sub-network and
// s_hat->v in the second; edges going back are dropped. Parallel artificial
// edges are merged (flow, capacity and m_e summed, cost capacity-weighted).
// Requires at least 4 nodes.
PartitionPair PartitionNetwork(const Network& net, const FlowScenario& x,
                               uint64_t seed);

// Repeatedly partitions the network, solves both halves exactly with budget
// ceil(gamma/2), and collects the chosen original edges until at least
// `delta` candidates exist or the iteration limit is hit. The answer is the
// best attack of size <= gamma over the candidates.
AttackResult PartitioningAttack(const Network& net, const FlowScenario& x,
                                int gamma,
                                const AdversaryOptions& options = {});

// Exact mode enumerates, falling back to heuristic mode with a warning when
// the attack space is too large. Heuristic mode returns the better of the
// accelerated greedy and partitioning attacks.
AttackResult BestAttack(const Network& net, const FlowScenario& x, int gamma,
                        AdversaryMode mode,
                        const AdversaryOptions& options = {});

}  // namespace robustflow

#endif  // ROBUSTFLOW_ADVERSARY_H_
