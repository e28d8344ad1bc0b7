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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "robustflow/administrator.h"
#include "robustflow/adversary.h"
#include "robustflow/flow.h"
#include "robustflow/game.h"
#include "robustflow/harness.h"
#include "robustflow/instance_io.h"
#include "robustflow/lp.h"
#include "test_util.h"

namespace robustflow {
namespace {

using Clock = std::chrono::steady_clock;

const std::string kDataDir = ROBUSTFLOW_DATA_DIR;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string Fmt(const char* format, ...) __attribute__((format(printf, 1, 2)));
std::string Fmt(const char* format, ...) {
  char buffer[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buffer, sizeof(buffer), format, args);
  va_end(args);
  return buffer;
}

// A seeded attack of size at most `gamma` over the attackable edges.
Attack SampledAttack(const Network& net, int gamma, uint64_t seed) {
  std::vector<EdgeIndex> pool = net.attackable_edges();
  std::vector<EdgeIndex> attack;
  uint64_t state = seed * 0x9E3779B97F4A7C15ULL + 1;
  for (int i = 0; i < gamma && !pool.empty(); ++i) {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    const size_t k = state % pool.size();
    attack.push_back(pool[k]);
    pool.erase(pool.begin() + k);
  }
  std::sort(attack.begin(), attack.end());
  return attack;
}

// The instance set shared by the dominance and convergence checks.
struct GameInstance {
  Network net;
  int gamma;
  uint64_t seed;
};

std::vector<GameInstance> GameInstances() {
  std::vector<GameInstance> out;
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    const int nodes = 8 + static_cast<int>(seed % 5);
    const double density = 0.5 + 0.05 * static_cast<double>(seed % 4);
    out.push_back({testing::RandomNetwork(nodes, density, 100 + seed),
                   1 + static_cast<int>(seed % 3), seed});
  }
  return out;
}

Outcome OracleEquivalence() {
  Outcome o;
  const auto start = Clock::now();
  double worst = 0.0;
  int lp_failures = 0;
  for (uint64_t seed = 1; seed <= 50; ++seed) {
    const int nodes = 6 + static_cast<int>(seed % 7);
    const double density = 0.4 + 0.1 * static_cast<double>(seed % 5);
    Network net = testing::RandomNetwork(nodes, density, 1000 + seed);
    if (seed % 3 == 0) net.SetPostAttackCapacity(2.0);
    const FlowScenario x = MaxFlowMinCost(net).flow;
    const Attack attack = SampledAttack(net, 1 + seed % 3, seed);
    const AdjustedFlowResult fast = IdentifyFlow(net, x, attack);
    const LpSolution lp = SolveLp(testing::IdentifyFlowLp(net, x, attack));
    if (lp.status != LpStatus::kOptimal) {
      ++lp_failures;
      continue;
    }
    worst = std::max(worst, std::fabs(fast.objective - lp.objective));
  }
  const double seconds = Seconds(start);
  o.pass = lp_failures == 0 && worst <= 1e-6 && seconds < 60;
  o.detail = Fmt("50 networks, max |diff| %.3g, %d LP failures, %.1fs", worst,
                 lp_failures, seconds);
  return o;
}

struct GameRun {
  GameInstance instance;
  GameResult result;
};

std::vector<GameRun>& GameRuns() {
  static std::vector<GameRun> runs = [] {
    std::vector<GameRun> r;
    for (GameInstance& g : GameInstances()) {
      GameConfig config;
      config.adversary.seed = g.seed;
      GameResult result = SolveTnfg(g.net, g.gamma, config);
      r.push_back({std::move(g), std::move(result)});
    }
    return r;
  }();
  return runs;
}

Outcome MaximinDominance() {
  Outcome o;
  const auto start = Clock::now();
  double worst_margin = kInfinity;
  std::string where;
  for (const GameRun& run : GameRuns()) {
    const Network& net = run.instance.net;
    const int gamma = run.instance.gamma;
    const double ramf = ExactAttack(net, run.result.flow, gamma).value;
    GameConfig config;
    for (Approach a :
         {Approach::kMf, Approach::kOsp, Approach::kRf, Approach::kAamf}) {
      const FlowScenario x = ApproachFlow(net, a, gamma, config);
      const double value = ExactAttack(net, x, gamma).value;
      if (ramf - value < worst_margin) {
        worst_margin = ramf - value;
        where = Fmt("seed %llu vs %s",
                    static_cast<unsigned long long>(run.instance.seed),
                    ApproachName(a));
      }
    }
  }
  const double seconds = Seconds(start);
  o.pass = worst_margin >= -1e-6 && seconds < 600;
  o.detail = Fmt("20 instances x 4 baselines, min margin %.3g (%s), %.1fs",
                 worst_margin, where.c_str(), seconds);
  return o;
}

Outcome Convergence() {
  Outcome o;
  int max_iterations = 0;
  double max_gap = 0.0;
  int bad = 0;
  for (const GameRun& run : GameRuns()) {
    const GameTrace& trace = run.result.trace;
    max_iterations =
        std::max(max_iterations, static_cast<int>(trace.iterations.size()));
    max_gap = std::max(max_gap, std::fabs(trace.upper - trace.lower));
    bool monotone = true;
    for (size_t i = 1; i < trace.iterations.size(); ++i) {
      if (trace.iterations[i].upper > trace.iterations[i - 1].upper + 1e-9) {
        monotone = false;
      }
    }
    if (trace.reason == ConvergenceReason::kIterationCap || !monotone ||
        trace.iterations.size() > 25 ||
        std::fabs(trace.upper - trace.lower) > 1e-6) {
      ++bad;
    }
  }
  o.pass = bad == 0;
  o.detail = Fmt("max %d iterations, max |V_U - V_L| %.3g, %d violations",
                 max_iterations, max_gap, bad);
  return o;
}

// Relative to |exact|; when the exact value is ~0 the nominal value M(x, {})
// is used as the scale instead.
double RelativeGap(const Network& net, const FlowScenario& x, int gamma,
                   uint64_t seed) {
  AdversaryOptions options;
  options.seed = seed;
  const double exact = ExactAttack(net, x, gamma).value;
  const double heuristic =
      BestAttack(net, x, gamma, AdversaryMode::kHeuristic, options).value;
  double scale = std::fabs(exact);
  if (scale < 1e-6) scale = std::fabs(AdaptiveValue(net, x, {}));
  return scale < 1e-9 ? 0.0 : (heuristic - exact) / scale;
}

// Gaps are measured on every flow the exact game executes, plus the MF flow.
Outcome HeuristicGap() {
  Outcome o;
  const auto start = Clock::now();
  double total = 0.0;
  double worst = 0.0;
  int count = 0;
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    const int nodes = 7 + static_cast<int>(seed % 6);
    const Network net = testing::RandomNetwork(nodes, 0.5, 2000 + seed);
    const int gamma = 1 + static_cast<int>(seed % 3);
    std::vector<FlowScenario> flows = {MaxFlowMinCost(net).flow};
    for (const IterationRecord& it : SolveTnfg(net, gamma).trace.iterations) {
      flows.push_back(it.flow);
    }
    for (const FlowScenario& x : flows) {
      const double gap = RelativeGap(net, x, gamma, seed);
      total += gap;
      worst = std::max(worst, gap);
      ++count;
    }
  }
  const double mean = total / count;
  const double seconds = Seconds(start);
  o.pass = mean <= 0.10 && seconds < 600;
  o.detail = Fmt("20 instances, %d flows, mean gap %.3f%%, worst %.3f%%, %.1fs",
                 count, 100 * mean, 100 * worst, seconds);
  return o;
}

Outcome GreedyMachinery() {
  Outcome o;
  int mismatches = 0;
  int more_evaluations = 0;
  int bound_violations = 0;
  int64_t plain = 0;
  int64_t lazy = 0;
  for (uint64_t seed = 1; seed <= 100; ++seed) {
    const int nodes = 6 + static_cast<int>(seed % 9);
    const double density = 0.3 + 0.1 * static_cast<double>(seed % 5);
    const Network net = testing::RandomNetwork(nodes, density, 3000 + seed);
    const int gamma = 1 + static_cast<int>(seed % 4);
    const FlowScenario x = MaxFlowMinCost(net).flow;
    GreedyDiagnostics d_plain;
    GreedyDiagnostics d_lazy;
    const AttackResult g = GreedyAttack(net, x, gamma, &d_plain);
    const AttackResult a = AcceleratedGreedyAttack(net, x, gamma, &d_lazy);
    if (g.attack != a.attack || std::fabs(g.value - a.value) > 1e-9) {
      ++mismatches;
    }
    if (a.evaluations > g.evaluations) ++more_evaluations;
    plain += g.evaluations;
    lazy += a.evaluations;
    for (const GreedyDiagnostics* d : {&d_plain, &d_lazy}) {
      for (const auto& ev : d->evaluations) {
        if (ev.gain > ev.current_flow + 1e-9) ++bound_violations;
      }
    }
  }
  o.pass = mismatches == 0 && more_evaluations == 0 && bound_violations == 0;
  o.detail = Fmt(
      "100 instances, %d mismatches, %d with more evaluations, %d bound "
      "violations, evaluations %lld vs %lld",
      mismatches, more_evaluations, bound_violations,
      static_cast<long long>(lazy), static_cast<long long>(plain));
  return o;
}

Outcome Modularity() {
  using namespace testing::witness;
  Outcome o;
  const Network sub = testing::Witness({2, 2, 4, 2, 2, 2, 2, 2, 2, 2, 2});
  const FlowScenario x_sub = {2, 2, 2, 2, 2, 2, 0, 2, 2, 2, 0, 6};
  const double alone_sub = testing::Gain(sub, x_sub, k37, {});
  const double after_sub = testing::Gain(sub, x_sub, k37, {k45});

  const Network sup = testing::Witness({3, 3, 3, 3, 3, 3, 3, 1, 1, 1, 1});
  const FlowScenario x_sup = {3, 3, 3, 3, 3, 3, 0, 1, 1, 1, 0, 7};
  const double alone_sup = testing::Gain(sup, x_sup, k37, {});
  const double after_sup = testing::Gain(sup, x_sup, k37, {k26});

  o.pass = ValidateFlow(sub, x_sub).ok() && ValidateFlow(sup, x_sup).ok() &&
           after_sub > alone_sub && after_sup < alone_sup;
  o.detail = Fmt(
      "gain(3-7 | {}) = %g < gain(3-7 | {4-5}) = %g; "
      "gain(3-7 | {}) = %g > gain(3-7 | {2-6}) = %g",
      alone_sub, after_sub, alone_sup, after_sup);
  return o;
}

Outcome RfDuality() {
  Outcome o;
  double worst = 0.0;
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    const int nodes = 6 + static_cast<int>(seed % 7);
    const Network net = testing::RandomNetwork(nodes, 0.5, 4000 + seed);
    const int gamma = 1 + static_cast<int>(seed % 3);
    const RfResult r = RfFlow(net, gamma);
    double protection = gamma * r.zeta;
    for (double t : r.theta) protection += t;
    std::vector<double> flows;
    for (EdgeIndex e : net.attackable_edges()) flows.push_back(r.flow[e]);
    std::sort(flows.rbegin(), flows.rend());
    double largest = 0.0;
    for (int i = 0; i < gamma && i < static_cast<int>(flows.size()); ++i) {
      largest += flows[i];
    }
    worst = std::max(worst, std::fabs(protection - largest));
  }
  o.pass = worst <= 1e-6;
  o.detail = Fmt("20 instances, max |sum theta + gamma zeta - top-gamma| %.3g",
                 worst);
  return o;
}

Outcome TrivialValues() {
  Outcome o;
  std::vector<std::string> notes;
  bool pass = true;
  for (int gamma = 1; gamma <= 3; ++gamma) {
    const GameResult r =
        SolveTnfg(testing::MakeSingleEdge(5, 0.05), gamma);
    if (r.trace.final_objective != 0.0) pass = false;
  }
  notes.push_back("single edge RAMF = 0 for gamma 1..3");

  double worst_gamma0 = 0.0;
  std::vector<Network> nets = {testing::MakeD1()};
  for (uint64_t seed = 1; seed <= 5; ++seed) {
    nets.push_back(testing::RandomNetwork(8, 0.5, 5000 + seed));
  }
  for (const Network& net : nets) {
    const double ramf = SolveTnfg(net, 0).trace.final_objective;
    worst_gamma0 =
        std::max(worst_gamma0, std::fabs(ramf - MaxFlowMinCost(net).objective));
  }
  if (worst_gamma0 > 1e-9) pass = false;
  notes.push_back(Fmt("gamma 0 |RAMF - MF| <= %.3g", worst_gamma0));

  const Network d1 = testing::MakeD1();
  const double av = ExactAttack(d1, testing::D1Committed(), 1).value;
  const double nominal = AdaptiveValue(d1, testing::D1Committed(), {});
  if (std::fabs(av - 4.67) > 1e-9 || std::fabs(nominal - 13.68) > 1e-9) {
    pass = false;
  }
  notes.push_back(Fmt("D1 AV(x*, 1) = %.10g, M(x*, {}) = %.10g", av, nominal));
  o.pass = pass;
  for (size_t i = 0; i < notes.size(); ++i) {
    o.detail += (i ? "; " : "") + notes[i];
  }
  return o;
}

Outcome Parsers() {
  Outcome o;
  std::vector<std::string> notes;
  bool pass = true;
  const std::string abilene = kDataDir + "/sndlib/abilene.txt";
  try {
    const Instance instance = LoadInstance(abilene);
    const int links = instance.net.num_real_edges() - instance.repair_edges;
    if (instance.net.num_nodes() != 14 || links != 22) pass = false;
    notes.push_back(Fmt("abilene %d nodes / %d links (want 14 / 22)",
                        instance.net.num_nodes(), links));
    GameConfig config;
    config.adversary_mode = AdversaryMode::kHeuristic;
    const auto start = Clock::now();
    const GameResult r = SolveTnfg(instance.net, 2, config);
    const double seconds = Seconds(start);
    if (seconds > 900) pass = false;
    notes.push_back(Fmt("abilene gamma 2 heuristic solve %.1fs, %s",
                        seconds, ConvergenceReasonName(r.trace.reason)));
  } catch (const std::exception& e) {
    pass = false;
    notes.push_back(std::string("abilene: ") + e.what());
  }
  const std::string elist = kDataDir + "/rmfgen/elist96.max";
  if (!std::filesystem::exists(elist)) {
    pass = false;
    notes.push_back("elist96 not available at data/rmfgen/elist96.max");
  } else {
    try {
      const Instance instance = LoadInstance(elist);
      if (instance.net.num_nodes() != 96 ||
          instance.net.num_real_edges() != 348) {
        pass = false;
      }
      notes.push_back(Fmt("elist96 %d nodes / %d edges (want 96 / 348)",
                          instance.net.num_nodes(),
                          instance.net.num_real_edges()));
      GameConfig config;
      config.adversary_mode = AdversaryMode::kHeuristic;
      const auto start = Clock::now();
      SolveTnfg(instance.net, 3, config);
      if (Seconds(start) > 900) pass = false;
      notes.push_back(Fmt("elist96 solve %.1fs", Seconds(start)));
    } catch (const std::exception& e) {
      pass = false;
      notes.push_back(std::string("elist96: ") + e.what());
    }
  }
  o.pass = pass;
  for (size_t i = 0; i < notes.size(); ++i) {
    o.detail += (i ? "; " : "") + notes[i];
  }
  return o;
}

std::string RunToFiles(const std::string& config_text, const std::string& dir) {
  std::filesystem::create_directories(dir);
  const ExperimentConfig config = ParseExperimentConfig(config_text, dir);
  const ExperimentResult result = RunExperiment(config);
  {
    std::ofstream csv(config.csv_path);
    WriteCsv(result, csv);
    std::ofstream json(config.json_path);
    WriteJson(result, json);
  }
  std::ifstream csv(config.csv_path, std::ios::binary);
  std::ifstream json(config.json_path, std::ios::binary);
  std::stringstream bytes;
  bytes << csv.rdbuf() << json.rdbuf();
  return bytes.str();
}

Outcome Determinism() {
  Outcome o;
  const std::string config = R"({
    "instances": [{"file": ")" + kDataDir + R"(/instances/d1.net"},
                  {"file": ")" + kDataDir + R"(/sndlib/abilene.txt"},
                  {"generator": {"nodes": 9, "density": 0.5},
                   "seeds": [1, 2, 3]}],
    "gamma": [1, 2], "adversary": "heuristic",
    "csv": "rows.csv", "json": "rows.json"})";
  const std::string base =
      (std::filesystem::temp_directory_path() / "robustflow_acceptance")
          .string();
  const std::string first = RunToFiles(config, base + "/a");
  const std::string second = RunToFiles(config, base + "/b");
  std::string exact_config = config;
  exact_config.replace(exact_config.find("heuristic"), 9, "exact");
  const std::string third = RunToFiles(exact_config, base + "/c");
  const std::string fourth = RunToFiles(exact_config, base + "/d");
  o.pass = !first.empty() && first == second && third == fourth;
  o.detail = Fmt("heuristic and exact configs rerun, %zu and %zu bytes, %s",
                 first.size(), third.size(),
                 o.pass ? "identical" : "different");
  return o;
}

}  // namespace
}  // namespace robustflow

int main() {
  using robustflow::Outcome;
  const std::vector<std::pair<const char*, std::function<Outcome()>>> checks =
      {
          {"oracle equivalence", robustflow::OracleEquivalence},
          {"maximin dominance", robustflow::MaximinDominance},
          {"convergence", robustflow::Convergence},
          {"heuristic adversary gap", robustflow::HeuristicGap},
          {"greedy machinery", robustflow::GreedyMachinery},
          {"modularity counterexamples", robustflow::Modularity},
          {"rf inner duality", robustflow::RfDuality},
          {"trivial exact values", robustflow::TrivialValues},
          {"parsers", robustflow::Parsers},
          {"determinism", robustflow::Determinism},
      };
  int failures = 0;
  for (size_t i = 0; i < checks.size(); ++i) {
    Outcome outcome;
    try {
      outcome = checks[i].second();
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome.detail = std::string("exception: ") + e.what();
    }
    failures += !outcome.pass;
    std::printf("%s %zu %s: %s\n", outcome.pass ? "PASS" : "FAIL", i + 1,
                checks[i].first, outcome.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
