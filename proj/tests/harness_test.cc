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

#include "robustflow/harness.h"

#include <sstream>

#include "gtest/gtest.h"
#include "json.hpp"
#include "robustflow/flow.h"
#include "test_util.h"

namespace robustflow {
namespace {

using testing::D1Committed;
using testing::MakeD1;

const std::string kDataDir = ROBUSTFLOW_DATA_DIR;

TEST(EvaluateApproachTest, D1) {
  const Network net = MakeD1();
  Metrics m = EvaluateApproach(net, D1Committed(), 1, AdversaryMode::kExact);
  EXPECT_NEAR(m.objective, 4.67, 1e-9);
  EXPECT_NEAR(m.lost_flow, 9.0, 1e-9);
  EXPECT_EQ(m.attack, Attack({0}));
  EXPECT_NEAR(m.attacked_mean_flow, 10.0, 1e-12);
  // Only a->b avoids both terminals: 4 - 4.
  EXPECT_NEAR(m.mean_intermediate_residual, 0.0, 1e-12);

  m = EvaluateApproach(net, FlowScenario(6, 0.0), 2, AdversaryMode::kExact);
  EXPECT_EQ(m.objective, 0.0);
  EXPECT_EQ(m.lost_flow, 0.0);
  EXPECT_NEAR(m.mean_intermediate_residual, 4.0, 1e-12);

  m = EvaluateApproach(net, D1Committed(), 0, AdversaryMode::kExact);
  EXPECT_NEAR(m.objective, 13.68, 1e-9);
  EXPECT_EQ(m.lost_flow, 0.0);
}

TEST(GainPctTest, Formula) {
  EXPECT_EQ(*GainPct(13.68, 13.68, 20, 5), 0.0);
  EXPECT_NEAR(*GainPct(30, 6, 20, 5), 24.0, 1e-12);
  EXPECT_NEAR(*GainPct(24 + 1.5, 1.5, 20, 5) / 10, 2.4, 1e-12);
  EXPECT_NEAR(*GainPct(4.67, 3.67, 10, 1), 10.0, 1e-12);
  EXPECT_FALSE(GainPct(1, 0, 10, 0).has_value());
}

ExperimentConfig D1Config() {
  return ParseExperimentConfig(
      R"({"instances": [{"file": "instances/d1.net"}], "gamma": 1,
          "adversary": "exact"})",
      kDataDir);
}

TEST(RunExperimentTest, D1AllApproaches) {
  const ExperimentConfig config = D1Config();
  const ExperimentResult result = RunExperiment(config);
  ASSERT_EQ(result.rows.size(), 5u);
  double ramf = 0.0;
  for (const ExperimentRow& row : result.rows) {
    ASSERT_TRUE(row.error.empty()) << row.error;
    if (row.approach == "RAMF") ramf = *row.objective;
  }
  const Network net = LoadInstance(kDataDir + "/instances/d1.net").net;
  for (const ExperimentRow& row : result.rows) {
    EXPECT_GE(ramf, *row.objective - 1e-6) << row.approach;
    EXPECT_NEAR(*row.objective, AdaptiveValue(net, row.flow, row.attack),
                1e-9);
    EXPECT_EQ(row.gain_pct.has_value(), row.approach != "RAMF");
    EXPECT_FALSE(row.runtime_ms.has_value());
  }
  EXPECT_EQ(result.rows[0].approach, "MF");
  EXPECT_NEAR(*result.rows[0].objective, 4.69, 1e-9);
}

TEST(RunExperimentTest, EmptyApproachListIsHeaderOnly) {
  ExperimentConfig config = D1Config();
  config.approaches.clear();
  const ExperimentResult result = RunExperiment(config);
  EXPECT_TRUE(result.rows.empty());
  std::ostringstream csv;
  WriteCsv(result, csv);
  EXPECT_EQ(csv.str(),
            "instance,seed,gamma,approach,objective,lost_flow,gain_pct,"
            "attacked_mean_flow,mean_residual,iterations,runtime_ms,error\n");
}

TEST(RunExperimentTest, GeneratorSeedsAndSummary) {
  const ExperimentConfig config = ParseExperimentConfig(
      R"({"instances": [{"generator": {"nodes": 8, "density": 0.5},
                         "seeds": [1, 2, 3, 4, 5]}],
          "gamma": 1, "adversary": "heuristic"})");
  const ExperimentResult result = RunExperiment(config);
  EXPECT_EQ(result.rows.size(), 25u);
  std::ostringstream json_out;
  WriteJson(result, json_out);
  const nlohmann::json doc = nlohmann::json::parse(json_out.str());
  EXPECT_EQ(doc["rows"].size(), 25u);
  ASSERT_EQ(doc["summary"].size(), 5u);
  EXPECT_EQ(doc["summary"][0]["count"], 5);
}

TEST(RunExperimentTest, ErrorRows) {
  ExperimentConfig config = D1Config();
  InstanceSpec missing;
  missing.path = "/nonexistent/instance.net";
  config.instances.insert(config.instances.begin(), missing);
  const ExperimentResult result = RunExperiment(config);
  ASSERT_EQ(result.rows.size(), 6u);
  EXPECT_FALSE(result.rows[0].error.empty());
  EXPECT_FALSE(result.rows[0].objective.has_value());
  EXPECT_TRUE(result.rows[1].error.empty());
}

TEST(RunExperimentTest, CsvRoundTripAndDeterminism) {
  ExperimentConfig config = D1Config();
  config.gammas = {0, 1, 2};
  const ExperimentResult a = RunExperiment(config);
  const ExperimentResult b = RunExperiment(config);
  std::ostringstream csv_a, csv_b, json_a, json_b;
  WriteCsv(a, csv_a);
  WriteCsv(b, csv_b);
  WriteJson(a, json_a);
  WriteJson(b, json_b);
  EXPECT_EQ(csv_a.str(), csv_b.str());
  EXPECT_EQ(json_a.str(), json_b.str());

  ExperimentResult reread;
  reread.rows = ReadCsv(csv_a.str());
  ASSERT_EQ(reread.rows.size(), a.rows.size());
  for (size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(FormatNumber(*reread.rows[i].objective),
              FormatNumber(*a.rows[i].objective));
  }
  std::ostringstream again;
  WriteCsv(reread, again);
  EXPECT_EQ(again.str(), csv_a.str());
}

TEST(CsvTest, QuotesFields) {
  ExperimentResult result;
  ExperimentRow row;
  row.instance = "a,b";
  row.error = "say \"hi\"\nthere";
  result.rows.push_back(row);
  std::ostringstream out;
  WriteCsv(result, out);
  const std::vector<ExperimentRow> back = ReadCsv(out.str());
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0].instance, "a,b");
  EXPECT_EQ(back[0].error, "say \"hi\"\nthere");
}

TEST(TraceJsonTest, Schema) {
  const Network net = MakeD1();
  const GameResult game = SolveTnfg(net, 1);
  std::ostringstream out;
  WriteTraceJson("d1", 1, game.trace, out);
  const nlohmann::json doc = nlohmann::json::parse(out.str());
  EXPECT_EQ(doc["instance"], "d1");
  EXPECT_EQ(doc["gamma"], 1);
  EXPECT_EQ(doc["convergence_reason"], "bounds_met");
  ASSERT_EQ(doc["iterations"].size(), game.trace.iterations.size());
  const nlohmann::json& first = doc["iterations"][0];
  EXPECT_EQ(first["k"], 1);
  EXPECT_TRUE(first["V_U"].is_number());
  EXPECT_TRUE(first["V_L"].is_number());
  EXPECT_TRUE(first["attack"].is_array());
  EXPECT_EQ(first["flow"].size(), 6u);
  EXPECT_DOUBLE_EQ(doc["final_objective"].get<double>(),
                   game.trace.final_objective);
}

TEST(ConfigTest, Errors) {
  EXPECT_THROW(ParseExperimentConfig("{"), std::invalid_argument);
  EXPECT_THROW(ParseExperimentConfig(R"({"instances": [{}]})"),
               std::invalid_argument);
  EXPECT_THROW(ParseExperimentConfig(R"({"approaches": ["XYZ"]})"),
               std::invalid_argument);
  EXPECT_THROW(ParseExperimentConfig(R"({"gamma": -1})"),
               std::invalid_argument);
  const ExperimentConfig c =
      ParseExperimentConfig(R"({"csv": "out/r.csv", "me": 2})", "/base");
  EXPECT_EQ(c.csv_path, "/base/out/r.csv");
  EXPECT_EQ(*c.post_attack_capacity, 2.0);
}

}  // namespace
}  // namespace robustflow
