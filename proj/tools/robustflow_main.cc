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

// Command line front end.
//
//   robustflow gen --nodes 20 --density 0.8 --seed 3 --out r.net
//   robustflow solve r.net --gamma 2 --trace trace.json
//   robustflow baseline r.net --method rf --gamma 2
//   robustflow attack r.net --mode best --gamma 2 --flow flow.json
//   robustflow experiment --config exp.json
//   robustflow verify r.net --gamma 2

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "robustflow/administrator.h"
#include "robustflow/adversary.h"
#include "robustflow/flow.h"
#include "robustflow/game.h"
#include "robustflow/harness.h"
#include "robustflow/instance_io.h"

namespace robustflow {
namespace {

struct CommonFlags {
  std::string instance;
  std::string format_in;
  int gamma = 1;
  uint64_t seed = 1;
  std::optional<double> me;
  std::vector<std::string> sources;
  std::vector<std::string> sinks;
  double tol = 1e-6;
  std::string out;
  std::string format = "json";
  std::string mode = "exact";
};

void AddInstanceFlags(CLI::App* cmd, CommonFlags* f) {
  cmd->add_option("instance", f->instance, "Instance file")->required();
  cmd->add_option("--format-in", f->format_in, "native, sndlib or dimacs")
      ->check(CLI::IsMember({"native", "sndlib", "dimacs"}));
  cmd->add_option("--gamma", f->gamma, "Attack budget")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--seed", f->seed, "Seed for draws and heuristics");
  cmd->add_option("--me", f->me, "Post-attack capacity for every edge");
  cmd->add_option("--source", f->sources, "Source node name(s)")
      ->delimiter(',');
  cmd->add_option("--sink", f->sinks, "Sink node name(s)")->delimiter(',');
  cmd->add_option("--tol", f->tol, "Tolerance");
  cmd->add_option("--out", f->out, "Output path (default stdout)");
  cmd->add_option("--format", f->format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
}

Instance Load(const CommonFlags& f) {
  ParseOptions options;
  options.seed = f.seed;
  options.post_attack_capacity = f.me;
  options.sources = f.sources;
  options.sinks = f.sinks;
  std::optional<InstanceFormat> format;
  if (!f.format_in.empty()) format = ParseInstanceFormat(f.format_in);
  return LoadInstance(f.instance, format, options);
}

AdversaryMode ModeOf(const std::string& name) {
  if (name == "exact") return AdversaryMode::kExact;
  if (name == "heuristic") return AdversaryMode::kHeuristic;
  throw std::invalid_argument("unknown adversary mode: " + name);
}

// Writes to --out, or stdout when it is empty.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      const std::filesystem::path parent =
          std::filesystem::path(path).parent_path();
      std::error_code ignored;
      if (!parent.empty()) std::filesystem::create_directories(parent, ignored);
      file_ =std::make_unique<std::ofstream>(path);
      if (!*file_) throw std::runtime_error("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

void WriteFlow(const Network& net, const FlowScenario& flow,
               const Metrics& metrics, const std::string& format,
               std::ostream& out) {
  if (format == "csv") {
    out << "edge,label,tail,head,flow\n";
    for (EdgeIndex e = 0; e < net.num_edges(); ++e) {
      const Edge& edge = net.edge(e);
      out << e << "," << edge.label << "," << net.node_name(edge.tail) << ","
          << net.node_name(edge.head) << "," << FormatNumber(flow[e]) << "\n";
    }
    return;
  }
  nlohmann::json doc;
  nlohmann::json values = nlohmann::json::object();
  for (EdgeIndex e = 0; e < net.num_edges(); ++e) {
    values[std::to_string(e)] = flow[e];
  }
  doc["flow"] = std::move(values);
  doc["objective"] = metrics.objective;
  doc["lost_flow"] = metrics.lost_flow;
  doc["attack"] = metrics.attack;
  doc["attack_method"] = AttackMethodName(metrics.method);
  out << doc.dump(2) << "\n";
}

FlowScenario ReadFlow(const Network& net, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  const nlohmann::json doc = nlohmann::json::parse(in);
  const nlohmann::json& values = doc.contains("flow") ? doc["flow"] : doc;
  FlowScenario flow(net.num_edges(), 0.0);
  for (auto it = values.begin(); it != values.end(); ++it) {
    const int e = std::stoi(it.key());
    if (e < 0 || e >= net.num_edges()) {
      throw std::runtime_error("flow file names edge " + it.key());
    }
    flow[e] = it.value().get<double>();
  }
  return flow;
}

void PrintSummary(const std::string& what, const Metrics& m) {
  std::cerr << what << ": objective " << FormatNumber(m.objective)
            << ", lost flow " << FormatNumber(m.lost_flow) << ", attack [";
  for (size_t i = 0; i < m.attack.size(); ++i) {
    std::cerr << (i ? " " : "") << m.attack[i];
  }
  std::cerr << "] (" << AttackMethodName(m.method) << ")\n";
}

int Run(int argc, char** argv) {
  CLI::App app{"Robust adaptive flows under budgeted edge attacks"};
  app.require_subcommand(1);

  GeneratorOptions gen;
  std::string gen_out;
  CLI::App* gen_cmd = app.add_subcommand("gen", "Write a random instance");
  gen_cmd->add_option("--nodes", gen.num_nodes)->check(CLI::Range(2, 100000));
  gen_cmd->add_option("--density", gen.density);
  gen_cmd->add_option("--cap-min", gen.capacity_min);
  gen_cmd->add_option("--cap-max", gen.capacity_max);
  gen_cmd->add_option("--cost-min", gen.cost_min);
  gen_cmd->add_option("--cost-max", gen.cost_max);
  gen_cmd->add_option("--seed", gen.seed);
  gen_cmd->add_option("--out", gen_out, "Output path (default stdout)");

  CommonFlags solve;
  int max_iterations = 50;
  std::string trace_path;
  CLI::App* solve_cmd =
      app.add_subcommand("solve", "Robust adaptive flow by the game loop");
  AddInstanceFlags(solve_cmd, &solve);
  solve_cmd->add_option("--mode", solve.mode, "Adversary: exact|heuristic")
      ->check(CLI::IsMember({"exact", "heuristic"}));
  solve_cmd->add_option("--max-iterations", max_iterations);
  solve_cmd->add_option("--trace", trace_path, "Write the game trace JSON");

  CommonFlags base;
  std::string method = "mf";
  CLI::App* base_cmd = app.add_subcommand("baseline", "Baseline flow");
  AddInstanceFlags(base_cmd, &base);
  base_cmd->add_option("--method", method)
      ->check(CLI::IsMember({"mf", "osp", "rf", "aamf"}));
  base_cmd->add_option("--mode", base.mode, "Adversary: exact|heuristic")
      ->check(CLI::IsMember({"exact", "heuristic"}));

  CommonFlags attack;
  std::string attack_mode = "best";
  std::string flow_path;
  CLI::App* attack_cmd =
      app.add_subcommand("attack", "Adversary response to a flow");
  AddInstanceFlags(attack_cmd, &attack);
  attack_cmd->add_option("--mode", attack_mode)
      ->check(CLI::IsMember({"exact", "greedy", "accel", "partition", "best"}));
  attack_cmd->add_option("--flow", flow_path,
                         "Flow JSON (default: max-flow min-cost flow)");

  std::string config_path;
  std::string experiment_out;
  std::string experiment_format = "csv";
  CLI::App* exp_cmd = app.add_subcommand("experiment", "Run an experiment");
  exp_cmd->add_option("--config", config_path)->required();
  exp_cmd->add_option("--out", experiment_out,
                      "Write here when the config names no output");
  exp_cmd->add_option("--format", experiment_format)
      ->check(CLI::IsMember({"csv", "json"}));

  CommonFlags verify;
  std::string verify_flow;
  double claimed = 0.0;
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "Check maximin optimality by enumeration");
  AddInstanceFlags(verify_cmd, &verify);
  verify_cmd->add_option("--flow", verify_flow,
                         "Flow JSON (default: solve the game first)");
  CLI::Option* value_opt =
      verify_cmd->add_option("--value", claimed, "Claimed adaptive value");

  CLI11_PARSE(app, argc, argv);

  if (gen_cmd->parsed()) {
    const Network net = GenerateRandom(gen);
    Output out(gen_out);
    WriteNative(net, "random_s" + std::to_string(gen.seed), out.stream());
    return 0;
  }

  if (solve_cmd->parsed()) {
    const Instance instance = Load(solve);
    GameConfig config;
    config.adversary_mode = ModeOf(solve.mode);
    config.convergence_tolerance = solve.tol;
    config.max_iterations = max_iterations;
    config.adversary.seed = solve.seed;
    const GameResult result = SolveTnfg(instance.net, solve.gamma, config);
    for (const std::string& w : result.trace.warnings) {
      std::cerr << "warning: " << w << "\n";
    }
    std::cerr << "game: " << result.trace.iterations.size()
              << " iterations, " << ConvergenceReasonName(result.trace.reason)
              << ", V_U " << FormatNumber(result.trace.upper) << ", V_L "
              << FormatNumber(result.trace.lower) << "\n";
    if (!trace_path.empty()) {
      Output trace_out(trace_path);
      WriteTraceJson(instance.name, solve.gamma, result.trace,
                     trace_out.stream());
    }
    const Metrics m =
        EvaluateApproach(instance.net, result.flow, solve.gamma,
                         config.adversary_mode, config.adversary);
    PrintSummary("RAMF", m);
    Output out(solve.out);
    WriteFlow(instance.net, result.flow, m, solve.format, out.stream());
    return 0;
  }

  if (base_cmd->parsed()) {
    const Instance instance = Load(base);
    GameConfig config;
    config.adversary_mode = ModeOf(base.mode);
    config.adversary.seed = base.seed;
    const Approach approach = ParseApproach(method);
    const FlowScenario flow =
        ApproachFlow(instance.net, approach, base.gamma, config);
    const Metrics m = EvaluateApproach(instance.net, flow, base.gamma,
                                       config.adversary_mode, config.adversary);
    PrintSummary(ApproachName(approach), m);
    Output out(base.out);
    WriteFlow(instance.net, flow, m, base.format, out.stream());
    return 0;
  }

  if (attack_cmd->parsed()) {
    const Instance instance = Load(attack);
    const Network& net = instance.net;
    const FlowScenario flow = flow_path.empty() ? MaxFlowMinCost(net).flow
                                                : ReadFlow(net, flow_path);
    const ValidationReport check = ValidateFlow(net, flow);
    if (!check.ok()) {
      for (const auto& v : check.violations) {
        std::cerr << "invalid flow: " << v.ToString() << "\n";
      }
      return 1;
    }
    AdversaryOptions options;
    options.seed = attack.seed;
    AttackResult r;
    if (attack_mode == "exact") {
      r = ExactAttack(net, flow, attack.gamma, options);
    } else if (attack_mode == "greedy") {
      r = GreedyAttack(net, flow, attack.gamma);
    } else if (attack_mode == "accel") {
      r = AcceleratedGreedyAttack(net, flow, attack.gamma);
    } else if (attack_mode == "partition") {
      r = PartitioningAttack(net, flow, attack.gamma, options);
    } else {
      r = BestAttack(net, flow, attack.gamma, AdversaryMode::kHeuristic,
                     options);
    }
    for (const std::string& w : r.warnings) std::cerr << "warning: " << w << "\n";
    Output out(attack.out);
    if (attack.format == "csv") {
      out.stream() << "edge,label\n";
      for (EdgeIndex e : r.attack) {
        out.stream() << e << "," << net.edge(e).label << "\n";
      }
    } else {
      nlohmann::json doc;
      doc["attack"] = r.attack;
      nlohmann::json labels = nlohmann::json::array();
      for (EdgeIndex e : r.attack) labels.push_back(net.edge(e).label);
      doc["labels"] = labels;
      doc["value"] = r.value;
      doc["method"] = AttackMethodName(r.method);
      doc["evaluations"] = r.evaluations;
      out.stream() << doc.dump(2) << "\n";
    }
    return 0;
  }

  if (exp_cmd->parsed()) {
    std::ifstream in(config_path);
    if (!in) throw std::runtime_error("cannot open " + config_path);
    std::stringstream text;
    text << in.rdbuf();
    const std::string dir =
        std::filesystem::path(config_path).parent_path().string();
    ExperimentConfig config =
        ParseExperimentConfig(text.str(), dir.empty() ? "." : dir);
    const ExperimentResult result = RunExperiment(config);
    if (!config.csv_path.empty()) {
      Output out(config.csv_path);
      WriteCsv(result, out.stream());
    }
    if (!config.json_path.empty()) {
      Output out(config.json_path);
      WriteJson(result, out.stream());
    }
    if (config.csv_path.empty() && config.json_path.empty()) {
      Output out(experiment_out);
      if (experiment_format == "json") {
        WriteJson(result, out.stream());
      } else {
        WriteCsv(result, out.stream());
      }
    }
    int errors = 0;
    for (const ExperimentRow& row : result.rows) errors += !row.error.empty();
    std::cerr << result.rows.size() << " rows, " << errors << " errors\n";
    return 0;
  }

  if (verify_cmd->parsed()) {
    const Instance instance = Load(verify);
    const Network& net = instance.net;
    FlowScenario flow;
    double value = claimed;
    if (verify_flow.empty()) {
      GameConfig config;
      config.convergence_tolerance = verify.tol;
      config.adversary.seed = verify.seed;
      const GameResult game = SolveTnfg(net, verify.gamma, config);
      flow = game.flow;
      if (value_opt->count() == 0) value = game.trace.final_objective;
    } else {
      flow = ReadFlow(net, verify_flow);
      if (value_opt->count() == 0) {
        value = ExactAttack(net, flow, verify.gamma).value;
      }
    }
    AdversaryOptions options;
    options.seed = verify.seed;
    const MaximinReport report =
        VerifyMaximin(net, verify.gamma, flow, value, verify.tol, options);
    Output out(verify.out);
    nlohmann::json doc;
    doc["ok"] = report.ok;
    doc["value"] = report.value;
    doc["attack"] = report.attack;
    nlohmann::json baselines = nlohmann::json::array();
    for (const auto& b : report.baselines) {
      baselines.push_back({{"name", b.name},
                           {"value", b.value},
                           {"attack", b.attack},
                           {"dominated", b.dominated}});
    }
    doc["baselines"] = baselines;
    doc["messages"] = report.messages;
    out.stream() << doc.dump(2) << "\n";
    return report.ok ? 0 : 1;
  }
  return 0;
}

}  // namespace
}  // namespace robustflow

int main(int argc, char** argv) {
  try {
    return robustflow::Run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
