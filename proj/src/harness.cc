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

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "robustflow/administrator.h"
#include "robustflow/flow.h"

namespace robustflow {

using nlohmann::json;

const char* ApproachName(Approach approach) {
  switch (approach) {
    case Approach::kMf:
      return "MF";
    case Approach::kOsp:
      return "OSP";
    case Approach::kRf:
      return "RF";
    case Approach::kAamf:
      return "AAMF";
    case Approach::kRamf:
      return "RAMF";
  }
  return "unknown";
}

Approach ParseApproach(const std::string& name) {
  std::string upper = name;
  for (char& c : upper) c = static_cast<char>(std::toupper(c));
  for (Approach a : {Approach::kMf, Approach::kOsp, Approach::kRf,
                     Approach::kAamf, Approach::kRamf}) {
    if (upper == ApproachName(a)) return a;
  }
  throw std::invalid_argument("unknown approach: " + name);
}

Metrics EvaluateApproach(const Network& net, const FlowScenario& x, int gamma,
                         AdversaryMode mode, const AdversaryOptions& options) {
  Metrics metrics;
  const AttackResult attack = BestAttack(net, x, gamma, mode, options);
  metrics.objective = attack.value;
  metrics.attack = attack.attack;
  metrics.method = attack.method;

  const AdjustedFlowResult adjusted = IdentifyFlow(net, x, attack.attack);
  double sent = 0.0;
  for (EdgeIndex e : net.outgoing(net.source())) {
    if (e != net.return_edge()) sent += x[e];
  }
  metrics.lost_flow = sent - adjusted.y[net.return_edge()];

  if (!attack.attack.empty()) {
    double sum = 0.0;
    for (EdgeIndex e : attack.attack) sum += x[e];
    metrics.attacked_mean_flow = sum / attack.attack.size();
  }
  double residual = 0.0;
  int count = 0;
  for (EdgeIndex e = 0; e < net.num_real_edges(); ++e) {
    const Edge& edge = net.edge(e);
    if (edge.tail == net.source() || edge.head == net.source() ||
        edge.tail == net.terminal() || edge.head == net.terminal() ||
        std::isinf(edge.capacity)) {
      continue;
    }
    residual += edge.capacity - x[e];
    ++count;
  }
  if (count > 0) metrics.mean_intermediate_residual = residual / count;
  return metrics;
}

std::optional<double> GainPct(double obj_ramf, double obj_baseline,
                              double max_capacity, int gamma) {
  if (gamma < 1 || !(max_capacity > 0)) return std::nullopt;
  return (obj_ramf - obj_baseline) * 100.0 / (max_capacity * gamma);
}

FlowScenario ApproachFlow(const Network& net, Approach approach, int gamma,
                          const GameConfig& game, GameTrace* trace) {
  switch (approach) {
    case Approach::kMf:
      return MaxFlowMinCost(net).flow;
    case Approach::kOsp:
      return OspFlow(net, gamma, game.adversary_mode, game.adversary);
    case Approach::kRf:
      return RfFlow(net, gamma).flow;
    case Approach::kAamf:
      return AamfFlow(net, gamma).flow;
    case Approach::kRamf: {
      GameResult result = SolveTnfg(net, gamma, game);
      if (trace != nullptr) *trace = std::move(result.trace);
      return result.flow;
    }
  }
  throw std::invalid_argument("unknown approach");
}

namespace {

std::string Resolve(const std::string& base_dir, const std::string& path) {
  const std::filesystem::path p(path);
  if (p.is_absolute()) return path;
  return (std::filesystem::path(base_dir) / p).lexically_normal().string();
}

template <typename T>
std::vector<T> ScalarOrList(const json& value) {
  if (value.is_array()) return value.get<std::vector<T>>();
  return {value.get<T>()};
}

std::vector<std::string> NamesOf(const json& spec, const char* key) {
  if (!spec.contains(key)) return {};
  return ScalarOrList<std::string>(spec.at(key));
}

double Round9(double value) {
  return std::strtod(FormatNumber(value).c_str(), nullptr);
}

json OptionalNumber(const std::optional<double>& value) {
  if (!value) return nullptr;
  return Round9(*value);
}

std::string CsvField(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string quoted = "\"";
  for (char c : field) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

std::string CsvNumber(const std::optional<double>& value) {
  return value ? FormatNumber(*value) : "";
}

std::vector<std::vector<std::string>> SplitCsv(const std::string& text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
      continue;
    }
    any = true;
    if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      record.push_back(std::move(field));
      field.clear();
    } else if (c == '\n') {
      record.push_back(std::move(field));
      field.clear();
      records.push_back(std::move(record));
      record.clear();
      any = false;
    } else if (c != '\r') {
      field += c;
    }
  }
  if (any || !field.empty() || !record.empty()) {
    record.push_back(std::move(field));
    records.push_back(std::move(record));
  }
  return records;
}

std::optional<double> ParseOptional(const std::string& field) {
  if (field.empty()) return std::nullopt;
  return std::strtod(field.c_str(), nullptr);
}

const char* const kCsvHeader =
    "instance,seed,gamma,approach,objective,lost_flow,gain_pct,"
    "attacked_mean_flow,mean_residual,iterations,runtime_ms,error";

struct LoadedInstance {
  std::string name;
  uint64_t seed;
  std::optional<Network> net;
  std::string error;
};

std::vector<LoadedInstance> LoadAll(const InstanceSpec& spec,
                                    const ExperimentConfig& config) {
  std::vector<uint64_t> seeds = spec.seeds;
  if (seeds.empty()) seeds.push_back(config.seed);
  std::vector<LoadedInstance> loaded;
  for (uint64_t seed : seeds) {
    LoadedInstance item;
    item.seed = seed;
    try {
      if (spec.generator) {
        GeneratorOptions options = *spec.generator;
        options.seed = seed;
        item.name = "random_n" + std::to_string(options.num_nodes) + "_d" +
                    FormatNumber(options.density) + "_s" +
                    std::to_string(seed);
        Network net = GenerateRandom(options);
        if (config.post_attack_capacity) {
          net.SetPostAttackCapacity(*config.post_attack_capacity);
        }
        item.net = std::move(net);
      } else {
        item.name = std::filesystem::path(spec.path).stem().string();
        ParseOptions options;
        options.seed = seed;
        options.post_attack_capacity = config.post_attack_capacity;
        options.sources = spec.sources;
        options.sinks = spec.sinks;
        Instance instance = LoadInstance(spec.path, spec.format, options);
        item.name = instance.name;
        item.net = std::move(instance.net);
      }
    } catch (const std::exception& e) {
      item.error = e.what();
    }
    loaded.push_back(std::move(item));
  }
  return loaded;
}

}  // namespace

std::string FormatNumber(double value) {
  if (value == 0.0) value = 0.0;  // Drops the sign of -0.
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.9g", value);
  return buffer;
}

ExperimentConfig ParseExperimentConfig(const std::string& json_text,
                                       const std::string& base_dir) {
  ExperimentConfig config;
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  try {
    if (root.contains("instances")) {
      for (const json& item : root.at("instances")) {
        InstanceSpec spec;
        if (item.contains("file")) {
          spec.path = Resolve(base_dir, item.at("file").get<std::string>());
        } else if (item.contains("generator")) {
          const json& g = item.at("generator");
          GeneratorOptions options;
          options.num_nodes = g.value("nodes", options.num_nodes);
          options.density = g.value("density", options.density);
          options.capacity_min = g.value("capacity_min", options.capacity_min);
          options.capacity_max = g.value("capacity_max", options.capacity_max);
          options.cost_min = g.value("cost_min", 0.01);
          options.cost_max = g.value("cost_max", 0.1);
          spec.generator = options;
        } else {
          throw std::invalid_argument(
              "config: instance needs 'file' or 'generator'");
        }
        if (item.contains("format")) {
          spec.format =
              ParseInstanceFormat(item.at("format").get<std::string>());
        }
        if (item.contains("seeds")) {
          spec.seeds = ScalarOrList<uint64_t>(item.at("seeds"));
        }
        spec.sources = NamesOf(item, "source");
        spec.sinks = NamesOf(item, "sink");
        config.instances.push_back(std::move(spec));
      }
    }
    if (root.contains("gamma")) {
      config.gammas = ScalarOrList<int>(root.at("gamma"));
    }
    if (root.contains("me") && !root.at("me").is_null()) {
      config.post_attack_capacity = root.at("me").get<double>();
    }
    if (root.contains("adversary")) {
      const std::string mode = root.at("adversary").get<std::string>();
      if (mode == "exact") {
        config.adversary_mode = AdversaryMode::kExact;
      } else if (mode == "heuristic") {
        config.adversary_mode = AdversaryMode::kHeuristic;
      } else {
        throw std::invalid_argument("config: unknown adversary mode " + mode);
      }
    }
    if (root.contains("approaches")) {
      config.approaches.clear();
      for (const json& a : root.at("approaches")) {
        config.approaches.push_back(ParseApproach(a.get<std::string>()));
      }
    }
    config.seed = root.value("seed", config.seed);
    config.max_iterations = root.value("max_iterations", config.max_iterations);
    config.timing = root.value("timing", config.timing);
    if (root.contains("csv")) {
      config.csv_path = Resolve(base_dir, root.at("csv").get<std::string>());
    }
    if (root.contains("json")) {
      config.json_path = Resolve(base_dir, root.at("json").get<std::string>());
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  for (int gamma : config.gammas) {
    if (gamma < 0) throw std::invalid_argument("config: negative gamma");
  }
  return config;
}

ExperimentResult RunExperiment(const ExperimentConfig& config) {
  using Clock = std::chrono::steady_clock;
  ExperimentResult result;
  if (config.approaches.empty()) return result;
  for (const InstanceSpec& spec : config.instances) {
    for (const LoadedInstance& item : LoadAll(spec, config)) {
      for (int gamma : config.gammas) {
        ExperimentRow base;
        base.instance = item.name;
        base.seed = item.seed;
        base.gamma = gamma;
        if (!item.net) {
          base.error = item.error;
          result.rows.push_back(base);
          continue;
        }
        const Network& net = *item.net;
        GameConfig game;
        game.adversary_mode = config.adversary_mode;
        game.max_iterations = config.max_iterations;
        game.adversary.seed = item.seed;

        const size_t first = result.rows.size();
        std::optional<double> ramf_objective;
        for (Approach approach : config.approaches) {
          ExperimentRow row = base;
          row.approach = ApproachName(approach);
          try {
            const auto start = Clock::now();
            GameTrace trace;
            row.flow = ApproachFlow(net, approach, gamma, game, &trace);
            if (config.timing) {
              row.runtime_ms = std::chrono::duration<double, std::milli>(
                                   Clock::now() - start)
                                   .count();
            }
            const Metrics m = EvaluateApproach(net, row.flow, gamma,
                                               config.adversary_mode,
                                               game.adversary);
            row.objective = m.objective;
            row.lost_flow = m.lost_flow;
            row.attacked_mean_flow = m.attacked_mean_flow;
            row.mean_residual = m.mean_intermediate_residual;
            row.attack = m.attack;
            row.iterations = approach == Approach::kRamf
                                 ? static_cast<int>(trace.iterations.size())
                                 : 1;
            if (approach == Approach::kRamf) ramf_objective = m.objective;
          } catch (const std::exception& e) {
            row.error = e.what();
            row.flow.clear();
          }
          result.rows.push_back(std::move(row));
        }
        if (ramf_objective) {
          for (size_t i = first; i < result.rows.size(); ++i) {
            ExperimentRow& row = result.rows[i];
            if (row.approach == "RAMF" || !row.objective) continue;
            row.gain_pct = GainPct(*ramf_objective, *row.objective,
                                   net.MaxCapacity(), gamma);
          }
        }
      }
    }
  }
  return result;
}

void WriteCsv(const ExperimentResult& result, std::ostream& out) {
  out << kCsvHeader << "\n";
  for (const ExperimentRow& row : result.rows) {
    out << CsvField(row.instance) << "," << row.seed << "," << row.gamma
        << "," << CsvField(row.approach) << "," << CsvNumber(row.objective)
        << "," << CsvNumber(row.lost_flow) << "," << CsvNumber(row.gain_pct)
        << "," << CsvNumber(row.attacked_mean_flow) << ","
        << CsvNumber(row.mean_residual) << ","
        << (row.iterations ? std::to_string(*row.iterations) : "") << ","
        << CsvNumber(row.runtime_ms) << "," << CsvField(row.error) << "\n";
  }
}

std::vector<ExperimentRow> ReadCsv(const std::string& text) {
  std::vector<std::vector<std::string>> records = SplitCsv(text);
  if (records.empty()) throw std::invalid_argument("empty CSV");
  std::ostringstream header;
  for (size_t i = 0; i < records[0].size(); ++i) {
    header << (i ? "," : "") << records[0][i];
  }
  if (header.str() != kCsvHeader) {
    throw std::invalid_argument("unexpected CSV header");
  }
  std::vector<ExperimentRow> rows;
  for (size_t r = 1; r < records.size(); ++r) {
    const std::vector<std::string>& f = records[r];
    if (f.size() != 12) {
      throw std::invalid_argument("CSV record " + std::to_string(r) +
                                  " has " + std::to_string(f.size()) +
                                  " fields");
    }
    ExperimentRow row;
    row.instance = f[0];
    row.seed = std::strtoull(f[1].c_str(), nullptr, 10);
    row.gamma = std::atoi(f[2].c_str());
    row.approach = f[3];
    row.objective = ParseOptional(f[4]);
    row.lost_flow = ParseOptional(f[5]);
    row.gain_pct = ParseOptional(f[6]);
    row.attacked_mean_flow = ParseOptional(f[7]);
    row.mean_residual = ParseOptional(f[8]);
    if (!f[9].empty()) row.iterations = std::atoi(f[9].c_str());
    row.runtime_ms = ParseOptional(f[10]);
    row.error = f[11];
    rows.push_back(std::move(row));
  }
  return rows;
}

void WriteJson(const ExperimentResult& result, std::ostream& out) {
  json rows = json::array();
  struct Sums {
    int count = 0;
    double objective = 0.0;
    double lost_flow = 0.0;
    double gain = 0.0;
    int gain_count = 0;
  };
  // Keyed by first appearance so the summary order is stable.
  std::vector<std::pair<std::string, int>> order;
  std::map<std::pair<std::string, int>, Sums> sums;
  for (const ExperimentRow& row : result.rows) {
    json r;
    r["instance"] = row.instance;
    r["seed"] = row.seed;
    r["gamma"] = row.gamma;
    r["approach"] = row.approach;
    r["objective"] = OptionalNumber(row.objective);
    r["lost_flow"] = OptionalNumber(row.lost_flow);
    r["gain_pct"] = OptionalNumber(row.gain_pct);
    r["attacked_mean_flow"] = OptionalNumber(row.attacked_mean_flow);
    r["mean_residual"] = OptionalNumber(row.mean_residual);
    r["iterations"] = row.iterations ? json(*row.iterations) : json(nullptr);
    r["runtime_ms"] = OptionalNumber(row.runtime_ms);
    r["error"] = row.error;
    r["attack"] = row.attack;
    json flow = json::object();
    for (size_t e = 0; e < row.flow.size(); ++e) {
      flow[std::to_string(e)] = Round9(row.flow[e]);
    }
    r["flow"] = std::move(flow);
    rows.push_back(std::move(r));

    if (!row.objective) continue;
    const std::pair<std::string, int> key = {row.approach, row.gamma};
    if (!sums.count(key)) order.push_back(key);
    Sums& s = sums[key];
    ++s.count;
    s.objective += *row.objective;
    s.lost_flow += row.lost_flow.value_or(0.0);
    if (row.gain_pct) {
      s.gain += *row.gain_pct;
      ++s.gain_count;
    }
  }
  json summary = json::array();
  for (const auto& key : order) {
    const Sums& s = sums[key];
    json item;
    item["approach"] = key.first;
    item["gamma"] = key.second;
    item["count"] = s.count;
    item["mean_objective"] = Round9(s.objective / s.count);
    item["mean_lost_flow"] = Round9(s.lost_flow / s.count);
    item["mean_gain_pct"] =
        s.gain_count > 0 ? json(Round9(s.gain / s.gain_count)) : json(nullptr);
    summary.push_back(std::move(item));
  }
  json root;
  root["rows"] = std::move(rows);
  root["summary"] = std::move(summary);
  out << root.dump(2) << "\n";
}

void WriteTraceJson(const std::string& instance, int gamma,
                    const GameTrace& trace, std::ostream& out) {
  json iterations = json::array();
  for (const IterationRecord& it : trace.iterations) {
    json item;
    item["k"] = it.k;
    item["V_U"] = it.upper;
    item["V_L"] = it.lower;
    item["attack"] = it.attack;
    json flow = json::object();
    for (size_t e = 0; e < it.flow.size(); ++e) {
      flow[std::to_string(e)] = it.flow[e];
    }
    item["flow"] = std::move(flow);
    iterations.push_back(std::move(item));
  }
  json root;
  root["instance"] = instance;
  root["gamma"] = gamma;
  root["iterations"] = std::move(iterations);
  root["convergence_reason"] = ConvergenceReasonName(trace.reason);
  root["final_objective"] = trace.final_objective;
  out << root.dump(2) << "\n";
}

}  // namespace robustflow
