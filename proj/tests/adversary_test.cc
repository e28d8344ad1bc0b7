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

#include <set>

#include "gtest/gtest.h"
#include "robustflow/flow.h"
#include "test_util.h"

namespace robustflow {
namespace {

using testing::D1Committed;
using testing::Gain;
using testing::MakeD1;
using testing::Witness;
using namespace testing::witness;

TEST(ExactAttackTest, D1) {
  const Network net = MakeD1();
  const AttackResult r = ExactAttack(net, D1Committed(), 1);
  EXPECT_EQ(r.attack, Attack({0}));
  EXPECT_NEAR(r.value, 4.67, 1e-9);
  EXPECT_EQ(r.method, AttackMethod::kExact);
  EXPECT_EQ(r.evaluations, 6);

  const AttackResult none = ExactAttack(net, D1Committed(), 0);
  EXPECT_TRUE(none.attack.empty());
  EXPECT_NEAR(none.value, 13.68, 1e-9);

  const AttackResult zero = ExactAttack(net, FlowScenario(6, 0.0), 2);
  EXPECT_EQ(zero.value, 0.0);
  EXPECT_TRUE(zero.attack.empty());
}

TEST(ExactAttackTest, IsMinimumOverAttackSpace) {
  for (uint64_t seed = 1; seed <= 5; ++seed) {
    const Network net = testing::RandomNetwork(7, 0.45, seed);
    const FlowScenario x = MaxFlowMinCost(net).flow;
    const AttackResult r = ExactAttack(net, x, 2);
    EXPECT_NEAR(r.value, AdaptiveValue(net, x, r.attack), 1e-9);
    ForEachAttack(net, 2, [&](const Attack& a) {
      EXPECT_LE(r.value, AdaptiveValue(net, x, a) + 1e-9);
      return true;
    });
  }
}

TEST(ExactAttackTest, SizeGuard) {
  const Network net = testing::RandomNetwork(12, 0.8, 3);
  AdversaryOptions options;
  options.max_attacks = 100;
  EXPECT_THROW(ExactAttack(net, MaxFlowMinCost(net).flow, 2, options),
               AttackSpaceTooLarge);
}

TEST(GreedyAttackTest, D1) {
  const Network net = MakeD1();
  const AttackResult greedy = GreedyAttack(net, D1Committed(), 1);
  EXPECT_EQ(greedy.attack, Attack({0}));
  EXPECT_NEAR(greedy.value, 4.67, 1e-9);
  EXPECT_EQ(greedy.evaluations, 5);

  const AttackResult lazy = AcceleratedGreedyAttack(net, D1Committed(), 1);
  EXPECT_EQ(lazy.attack, Attack({0}));
  EXPECT_EQ(lazy.evaluations, 1);

  const AttackResult g2 = GreedyAttack(net, D1Committed(), 2);
  const AttackResult a2 = AcceleratedGreedyAttack(net, D1Committed(), 2);
  EXPECT_EQ(g2.attack, a2.attack);
  EXPECT_EQ(g2.attack.size(), 2u);
  EXPECT_GE(g2.value, ExactAttack(net, D1Committed(), 2).value - 1e-9);
}

TEST(GreedyAttackTest, ZeroFlowPicksLowestIndex) {
  const Network net = MakeD1();
  const FlowScenario zero(6, 0.0);
  GreedyDiagnostics diag;
  const AttackResult r = GreedyAttack(net, zero, 1, &diag);
  EXPECT_EQ(r.attack, Attack({0}));
  for (const auto& ev : diag.evaluations) EXPECT_EQ(ev.gain, 0.0);
  EXPECT_EQ(AcceleratedGreedyAttack(net, zero, 1).attack, Attack({0}));
}

TEST(GreedyAttackTest, BudgetCoversAllEdges) {
  const Network net = MakeD1();
  const AttackResult r = GreedyAttack(net, D1Committed(), 7);
  EXPECT_EQ(r.attack, Attack({0, 1, 2, 3, 4}));
  EXPECT_EQ(AcceleratedGreedyAttack(net, D1Committed(), 5).attack,
            Attack({0, 1, 2, 3, 4}));
}

TEST(GreedyAttackTest, DominantEdgeNeedsFewEvaluations) {
  Topology t;
  t.AddNode("s");
  t.AddNode("a");
  t.AddNode("t");
  t.AddEdge(0, 2, 90, 0.01, 0);
  t.AddEdge(0, 1, 10, 0.01, 0);
  t.AddEdge(1, 2, 10, 0.01, 0);
  const Network net(t, 0, 2);
  const FlowScenario x = {90, 10, 10, 100};
  const AttackResult r = AcceleratedGreedyAttack(net, x, 1);
  EXPECT_EQ(r.attack, Attack({0}));
  EXPECT_LE(r.evaluations, 2);
}

TEST(GreedyAttackTest, LazyMatchesPlainAndBoundsHold) {
  for (uint64_t seed = 1; seed <= 25; ++seed) {
    const Network net = testing::RandomNetwork(6 + seed % 6, 0.5, seed);
    const FlowScenario x = MaxFlowMinCost(net).flow;
    for (int gamma = 1; gamma <= 3; ++gamma) {
      GreedyDiagnostics plain_diag, lazy_diag;
      const AttackResult plain = GreedyAttack(net, x, gamma, &plain_diag);
      const AttackResult lazy =
          AcceleratedGreedyAttack(net, x, gamma, &lazy_diag);
      EXPECT_EQ(plain.attack, lazy.attack) << seed << " " << gamma;
      EXPECT_LE(lazy.evaluations, plain.evaluations);
      EXPECT_NEAR(plain.value, AdaptiveValue(net, x, plain.attack), 1e-9);
      for (const GreedyDiagnostics* d : {&plain_diag, &lazy_diag}) {
        for (const auto& ev : d->evaluations) {
          EXPECT_LE(ev.gain, ev.current_flow + 1e-9);
        }
      }
      for (const auto& step : lazy_diag.steps) {
        EXPECT_GE(step.gain, step.max_unevaluated_bound - 1e-9);
      }
    }
  }
}

TEST(ModularityTest, GainIsNotSubmodular) {
  const Network net =
      Witness({2, 2, 4, 2, 2, 2, 2, 2, 2, 2, 2});
  const FlowScenario x = {2, 2, 2, 2, 2, 2, 0, 2, 2, 2, 0, 6};
  ASSERT_TRUE(ValidateFlow(net, x).ok());
  const double alone = Gain(net, x, k37, {});
  const double after = Gain(net, x, k37, {k45});
  EXPECT_NEAR(alone, 0.0, 1e-12);
  EXPECT_NEAR(after, 2.0, 1e-12);
  EXPECT_GT(after, alone);
}

TEST(ModularityTest, GainIsNotSupermodular) {
  const Network net =
      Witness({3, 3, 3, 3, 3, 3, 3, 1, 1, 1, 1});
  const FlowScenario x = {3, 3, 3, 3, 3, 3, 0, 1, 1, 1, 0, 7};
  ASSERT_TRUE(ValidateFlow(net, x).ok());
  const double alone = Gain(net, x, k37, {});
  const double after = Gain(net, x, k37, {k26});
  EXPECT_NEAR(alone, 3.0, 1e-12);
  EXPECT_NEAR(after, 0.0, 1e-12);
  EXPECT_LT(after, alone);
}

TEST(PartitionNetworkTest, EightNodeShape) {
  const Network net = Witness({2, 2, 4, 2, 2, 2, 2, 2, 2, 2, 2});
  const FlowScenario x = {2, 2, 2, 2, 2, 2, 0, 2, 2, 2, 0, 6};
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    const PartitionPair p = PartitionNetwork(net, x, seed);
    // Isolated nodes are pruned, so each side has at most five nodes.
    EXPECT_LE(p.first.net.num_nodes(), 5);
    EXPECT_LE(p.second.net.num_nodes(), 5);
    EXPECT_EQ(p.first.net.node_name(p.first.net.terminal()), "t_hat");
    EXPECT_EQ(p.second.net.node_name(p.second.net.source()), "s_hat");
    // Every original edge appears at most once per side.
    std::multiset<EdgeIndex> seen;
    for (const SubNetwork* sub : {&p.first, &p.second}) {
      std::set<EdgeIndex> side;
      for (const auto& members : sub->origin) {
        for (EdgeIndex e : members) EXPECT_TRUE(side.insert(e).second);
      }
      // Merged edges carry the summed flow and capacity of their members.
      for (EdgeIndex e = 0; e < sub->net.num_real_edges(); ++e) {
        double flow = 0.0, cap = 0.0;
        for (EdgeIndex o : sub->origin[e]) {
          flow += x[o];
          cap += net.edge(o).capacity;
        }
        EXPECT_EQ(sub->flow[e], flow);
        EXPECT_EQ(sub->net.edge(e).capacity, cap);
      }
    }
  }
  const PartitionPair full = PartitionNetwork(net, x, 3);
  EXPECT_EQ(full.first.net.num_nodes() + full.second.net.num_nodes(), 10);
}

TEST(PartitionNetworkTest, DeterministicPerSeed) {
  const Network net = MakeD1();
  const PartitionPair a = PartitionNetwork(net, D1Committed(), 42);
  const PartitionPair b = PartitionNetwork(net, D1Committed(), 42);
  EXPECT_EQ(a.first.origin, b.first.origin);
  EXPECT_EQ(a.second.origin, b.second.origin);
  EXPECT_EQ(a.first.flow, b.first.flow);
  EXPECT_EQ(a.first.node_origin, b.first.node_origin);
}

TEST(PartitionNetworkTest, AllCrossingEdgesSinkToArtificialTerminal) {
  // With a in the first part every edge crosses the cut.
  Topology t;
  for (const char* name : {"s", "a", "b", "t"}) t.AddNode(name);
  t.AddEdge(0, 3, 5, 0.01, 0);
  t.AddEdge(0, 2, 5, 0.01, 0);
  t.AddEdge(1, 3, 5, 0.01, 0);
  t.AddEdge(1, 2, 5, 0.01, 0);
  const Network net(t, 0, 3);
  const FlowScenario x = {5, 0, 0, 0, 5};
  bool checked = false;
  for (uint64_t seed = 1; seed <= 20 && !checked; ++seed) {
    const PartitionPair p = PartitionNetwork(net, x, seed);
    const auto& origin = p.first.node_origin;
    if (std::find(origin.begin(), origin.end(), 1) == origin.end()) continue;
    checked = true;
    const Network& sub = p.first.net;
    for (EdgeIndex e = 0; e < sub.num_real_edges(); ++e) {
      EXPECT_EQ(sub.edge(e).head, sub.terminal());
    }
    // s->t and s->b merge, as do a->t and a->b.
    EXPECT_EQ(sub.num_real_edges(), 2);
  }
  EXPECT_TRUE(checked);
}

TEST(PartitioningAttackTest, D1) {
  const Network net = MakeD1();
  const double exact = ExactAttack(net, D1Committed(), 1).value;
  AdversaryOptions options;
  options.delta = 3;
  options.max_iterations = 5;
  options.seed = 7;
  const AttackResult r = PartitioningAttack(net, D1Committed(), 1, options);
  EXPECT_GE(r.value, exact - 1e-9);
  for (EdgeIndex e : r.attack) EXPECT_LT(e, 5);

  options.delta = 5;
  options.max_iterations = 50;
  const AttackResult full = PartitioningAttack(net, D1Committed(), 1, options);
  EXPECT_NEAR(full.value, exact, 1e-9);
  EXPECT_EQ(full.attack, Attack({0}));
}

TEST(PartitioningAttackTest, ZeroDeltaGivesEmptyAttack) {
  const Network net = testing::RandomNetwork(8, 0.5, 4);
  const FlowScenario x = MaxFlowMinCost(net).flow;
  AdversaryOptions options;
  options.delta = 0;
  const AttackResult r = PartitioningAttack(net, x, 2, options);
  EXPECT_TRUE(r.attack.empty());
  EXPECT_NEAR(r.value, AdaptiveValue(net, x, {}), 1e-9);
}

TEST(BestAttackTest, ModesAndOrdering) {
  const Network net = MakeD1();
  const AttackResult exact =
      BestAttack(net, D1Committed(), 1, AdversaryMode::kExact);
  EXPECT_NEAR(exact.value, 4.67, 1e-9);

  const AttackResult heuristic =
      BestAttack(net, D1Committed(), 1, AdversaryMode::kHeuristic);
  const double greedy = AcceleratedGreedyAttack(net, D1Committed(), 1).value;
  const double part = PartitioningAttack(net, D1Committed(), 1).value;
  EXPECT_NEAR(heuristic.value, std::min(greedy, part), 1e-12);

  for (uint64_t seed = 1; seed <= 10; ++seed) {
    const Network rnd = testing::RandomNetwork(8, 0.5, seed);
    const FlowScenario x = MaxFlowMinCost(rnd).flow;
    for (int gamma = 1; gamma <= 2; ++gamma) {
      const AttackResult h = BestAttack(rnd, x, gamma, AdversaryMode::kHeuristic);
      const AttackResult e = BestAttack(rnd, x, gamma, AdversaryMode::kExact);
      EXPECT_GE(h.value, e.value - 1e-9);
      EXPECT_LE(static_cast<int>(h.attack.size()), gamma);
      for (EdgeIndex a : h.attack) EXPECT_TRUE(rnd.edge(a).attackable);
    }
  }
}

TEST(BestAttackTest, ExactFallsBackWhenTooLarge) {
  const Network net = testing::RandomNetwork(10, 0.8, 2);
  AdversaryOptions options;
  options.max_attacks = 10;
  const AttackResult r = BestAttack(net, MaxFlowMinCost(net).flow, 2,
                                    AdversaryMode::kExact, options);
  EXPECT_NE(r.method, AttackMethod::kExact);
  ASSERT_FALSE(r.warnings.empty());
}

}  // namespace
}  // namespace robustflow
