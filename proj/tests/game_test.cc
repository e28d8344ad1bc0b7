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

#include "gtest/gtest.h"
#include "robustflow/administrator.h"
#include "robustflow/flow.h"
#include "test_util.h"

namespace robustflow {
namespace {

using testing::MakeD1;

TEST(SolveTnfgTest, SingleEdgeIsDestroyed) {
  const Network net = testing::MakeSingleEdge(5, 0.05);
  const GameResult r = SolveTnfg(net, 1);
  EXPECT_EQ(r.trace.iterations.size(), 2u);
  EXPECT_EQ(r.trace.reason, ConvergenceReason::kBoundsMet);
  EXPECT_EQ(r.trace.final_objective, 0.0);
  EXPECT_NEAR(r.flow[0], 0.0, 1e-12);
  EXPECT_NEAR(r.trace.iterations[0].upper, 4.75, 1e-9);
  EXPECT_NEAR(r.trace.iterations[0].lower, -0.25, 1e-9);
}

TEST(SolveTnfgTest, NoBudgetIsMaxFlow) {
  const Network net = MakeD1();
  const GameResult r = SolveTnfg(net, 0);
  EXPECT_EQ(r.trace.iterations.size(), 1u);
  EXPECT_EQ(r.trace.reason, ConvergenceReason::kBoundsMet);
  EXPECT_NEAR(r.trace.final_objective, 13.69, 1e-7);
  EXPECT_NEAR(r.trace.final_objective, MaxFlowMinCost(net).objective, 1e-9);
}

TEST(SolveTnfgTest, D1SelfConsistent) {
  const Network net = MakeD1();
  const GameResult r = SolveTnfg(net, 1);
  EXPECT_NE(r.trace.reason, ConvergenceReason::kIterationCap);
  EXPECT_LE(std::fabs(r.trace.upper - r.trace.lower), 1e-6);
  const AttackResult exact = ExactAttack(net, r.flow, 1);
  EXPECT_NEAR(exact.value, r.trace.final_objective, 1e-6);
  EXPECT_GE(r.trace.final_objective, 4.69 - 1e-6);
  const MaximinReport report =
      VerifyMaximin(net, 1, r.flow, r.trace.final_objective);
  EXPECT_TRUE(report.ok);
  for (const std::string& m : report.messages) ADD_FAILURE() << m;
}

TEST(SolveTnfgTest, RandomInstancesConverge) {
  for (uint64_t seed = 1; seed <= 6; ++seed) {
    const Network net = testing::RandomNetwork(8, 0.5, seed);
    for (int gamma = 1; gamma <= 2; ++gamma) {
      const GameResult r = SolveTnfg(net, gamma);
      EXPECT_NE(r.trace.reason, ConvergenceReason::kIterationCap);
      EXPECT_LE(std::fabs(r.trace.upper - r.trace.lower), 1e-6)
          << seed << " " << gamma;
      for (size_t i = 1; i < r.trace.iterations.size(); ++i) {
        EXPECT_LE(r.trace.iterations[i].upper,
                  r.trace.iterations[i - 1].upper + 1e-9);
      }
      for (const IterationRecord& it : r.trace.iterations) {
        EXPECT_LE(it.lower, it.upper + 1e-6);
      }
      EXPECT_NEAR(ExactAttack(net, r.flow, gamma).value,
                  r.trace.final_objective, 1e-6);
      EXPECT_TRUE(
          VerifyMaximin(net, gamma, r.flow, r.trace.final_objective).ok);
    }
  }
}

TEST(SolveTnfgTest, HeuristicModeTerminates) {
  const Network net = testing::RandomNetwork(12, 0.5, 7);
  GameConfig config;
  config.adversary_mode = AdversaryMode::kHeuristic;
  const GameResult r = SolveTnfg(net, 2, config);
  EXPECT_FALSE(r.trace.iterations.empty());
  EXPECT_TRUE(ValidateFlow(net, r.flow).ok());
  for (size_t i = 1; i < r.trace.iterations.size(); ++i) {
    EXPECT_LE(r.trace.iterations[i].upper,
              r.trace.iterations[i - 1].upper + 1e-9);
  }
}

TEST(SolveTnfgTest, IterationCap) {
  const Network net = MakeD1();
  GameConfig config;
  config.max_iterations = 1;
  const GameResult r = SolveTnfg(net, 1, config);
  EXPECT_EQ(r.trace.iterations.size(), 1u);
  EXPECT_EQ(r.trace.reason, ConvergenceReason::kIterationCap);
  EXPECT_THROW(SolveTnfg(net, -1), std::invalid_argument);
}

TEST(VerifyMaximinTest, FlagsMaxFlow) {
  const Network net = MakeD1();
  const FlowScenario mf = MaxFlowMinCost(net).flow;
  MaximinReport report = VerifyMaximin(net, 1, mf, 4.69);
  EXPECT_NEAR(report.value, 4.69, 1e-9);
  // RF and AAMF keep 4.8 under attack, so MF is not maximin.
  EXPECT_FALSE(report.ok);
  EXPECT_FALSE(report.messages.empty());

  report = VerifyMaximin(net, 1, mf, 3.0);
  EXPECT_FALSE(report.ok);

  report = VerifyMaximin(net, 0, mf, 13.69);
  EXPECT_TRUE(report.ok);
}

}  // namespace
}  // namespace robustflow
