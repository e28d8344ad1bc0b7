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

#include "robustflow/instance_io.h"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "random_util.h"

namespace robustflow {

ParseError::ParseError(int line, const std::string& message)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " +
                                        message
                                  : message),
      line_(line) {}

const char* InstanceFormatName(InstanceFormat format) {
  switch (format) {
    case InstanceFormat::kNative:
      return "native";
    case InstanceFormat::kSndlib:
      return "sndlib";
    case InstanceFormat::kDimacs:
      return "dimacs";
  }
  return "unknown";
}

InstanceFormat ParseInstanceFormat(const std::string& name) {
  if (name == "native") return InstanceFormat::kNative;
  if (name == "sndlib") return InstanceFormat::kSndlib;
  if (name == "dimacs") return InstanceFormat::kDimacs;
  throw std::invalid_argument("unknown instance format: " + name);
}

namespace {

std::vector<std::string> Tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> tokens;
  std::string token;
  while (in >> token) tokens.push_back(token);
  return tokens;
}

std::string StripComment(const std::string& line, char marker) {
  const size_t pos = line.find(marker);
  return pos == std::string::npos ? line : line.substr(0, pos);
}

double ToNumber(const std::string& token, int line) {
  errno = 0;
  char* end = nullptr;
  const double value = std::strtod(token.c_str(), &end);
  if (token.empty() || *end != '\0' || errno == ERANGE || std::isnan(value)) {
    throw ParseError(line, "expected a number, got '" + token + "'");
  }
  return value;
}

int64_t ToInteger(const std::string& token, int line) {
  errno = 0;
  char* end = nullptr;
  const long long value = std::strtoll(token.c_str(), &end, 10);
  if (token.empty() || *end != '\0' || errno == ERANGE) {
    throw ParseError(line, "expected an integer, got '" + token + "'");
  }
  return value;
}

NodeIndex RequireNode(const Topology& topology, const std::string& name,
                      int line) {
  const NodeIndex v = topology.FindNode(name);
  if (v < 0) throw ParseError(line, "unknown node '" + name + "'");
  return v;
}

std::vector<NodeIndex> ResolveTerminals(const Topology& topology,
                                        const std::vector<std::string>& names,
                                        const std::vector<NodeIndex>& fallback,
                                        const char* what) {
  if (names.empty()) {
    if (fallback.empty()) {
      throw ParseError(0, std::string("instance declares no ") + what);
    }
    return fallback;
  }
  std::vector<NodeIndex> nodes;
  for (const std::string& name : names) {
    const NodeIndex v = topology.FindNode(name);
    if (v < 0) {
      throw std::invalid_argument(std::string("no ") + what + " node named '" +
                                  name + "'");
    }
    nodes.push_back(v);
  }
  return nodes;
}

struct Draws {
  double capacity_min;
  double capacity_max;
  bool integral;
};

double DrawCapacity(SeededRandom& rng, const Draws& draws) {
  if (draws.integral) {
    return static_cast<double>(
        rng.Int(static_cast<int64_t>(draws.capacity_min),
                static_cast<int64_t>(draws.capacity_max)));
  }
  return RoundTo(rng.Real(draws.capacity_min, draws.capacity_max), 1e-2);
}

double DrawCost(SeededRandom& rng) {
  return RoundTo(rng.Real(0.01, 0.1), 1e-4);
}

// Builds the network, repairs connectivity and applies the m_e override.
// Edges from index `first_repair` on are given drawn capacities and costs.
Instance Assemble(std::string name, const Topology& topology,
                  const std::vector<NodeIndex>& sources,
                  const std::vector<NodeIndex>& sinks,
                  const ParseOptions& options, bool repair,
                  SeededRandom* rng, const Draws& draws) {
  Instance instance;
  instance.name = std::move(name);
  Network net = TransformMultiTerminal(topology, sources, sinks);
  if (repair) {
    Topology repaired = net.ToTopology();
    const size_t before = repaired.edges.size();
    instance.repair_edges = RepairConnectivity(
        &repaired, net.source(), net.terminal(),
        options.seed ^ 0x5DEECE66DULL);
    for (size_t i = before; i < repaired.edges.size(); ++i) {
      repaired.edges[i].capacity = DrawCapacity(*rng, draws);
      repaired.edges[i].cost = DrawCost(*rng);
    }
    const NodeIndex s = net.source();
    const NodeIndex t = net.terminal();
    std::vector<std::string> notes = net.metadata();
    net = Network(std::move(repaired), s, t);
    net.metadata() = std::move(notes);
    if (instance.repair_edges > 0) {
      net.metadata().push_back("repair edges: " +
                               std::to_string(instance.repair_edges));
    }
  }
  if (options.post_attack_capacity) {
    net.SetPostAttackCapacity(*options.post_attack_capacity);
  }
  instance.net = std::move(net);
  return instance;
}

}  // namespace

InstanceFormat SniffFormat(const std::string& path, const std::string& text) {
  const std::string ext = std::filesystem::path(path).extension().string();
  if (ext == ".max" || ext == ".dimacs" || ext == ".dim") {
    return InstanceFormat::kDimacs;
  }
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("?SNDlib", 0) == 0) return InstanceFormat::kSndlib;
    const std::vector<std::string> tokens = Tokens(line);
    if (tokens.empty()) continue;
    const std::string& head = tokens[0];
    if (head == "p" || head == "c" || head == "a" || head == "n") {
      return InstanceFormat::kDimacs;
    }
    if (head == "NODES" || head == "LINKS" || head == "META") {
      return InstanceFormat::kSndlib;
    }
    if (head[0] == '#') continue;
    return InstanceFormat::kNative;
  }
  return InstanceFormat::kNative;
}

Instance ParseNative(const std::string& text, const ParseOptions& options) {
  Topology topology;
  std::string name;
  std::vector<NodeIndex> sources;
  std::vector<NodeIndex> sinks;
  bool in_edges = false;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::vector<std::string> tokens = Tokens(StripComment(raw, '#'));
    if (tokens.empty()) continue;
    const std::string& head = tokens[0];
    if (!in_edges) {
      if (head == "name") {
        if (tokens.size() != 2) throw ParseError(line, "expected 'name <id>'");
        name = tokens[1];
      } else if (head == "nodes") {
        for (size_t i = 1; i < tokens.size(); ++i) {
          if (topology.FindNode(tokens[i]) >= 0) {
            throw ParseError(line, "duplicate node '" + tokens[i] + "'");
          }
          topology.AddNode(tokens[i]);
        }
      } else if (head == "source" || head == "terminal") {
        if (tokens.size() < 2) throw ParseError(line, "missing node name");
        for (size_t i = 1; i < tokens.size(); ++i) {
          const NodeIndex v = RequireNode(topology, tokens[i], line);
          (head == "source" ? sources : sinks).push_back(v);
        }
      } else if (head == "edges") {
        in_edges = true;
      } else {
        throw ParseError(line, "unknown directive '" + head + "'");
      }
      continue;
    }
    if (tokens.size() < 5) {
      throw ParseError(line,
                       "expected 'tail head capacity cost post_attack'");
    }
    const NodeIndex u = RequireNode(topology, tokens[0], line);
    const NodeIndex v = RequireNode(topology, tokens[1], line);
    const double capacity = ToNumber(tokens[2], line);
    const double cost = ToNumber(tokens[3], line);
    const double m = ToNumber(tokens[4], line);
    if (capacity < 0 || cost < 0 || m < 0) {
      throw ParseError(line, "negative capacity, cost or post-attack value");
    }
    bool attackable = true;
    std::string label;
    for (size_t i = 5; i < tokens.size(); ++i) {
      if (tokens[i] == "protected") {
        attackable = false;
      } else if (tokens[i].rfind("label=", 0) == 0) {
        label = tokens[i].substr(6);
      } else {
        throw ParseError(line, "unexpected token '" + tokens[i] + "'");
      }
    }
    topology.AddEdge(u, v, capacity, cost, m, attackable);
    topology.edges.back().label = label;
  }
  if (topology.node_names.empty()) throw ParseError(0, "no nodes declared");
  SeededRandom rng(options.seed);
  try {
    return Assemble(name, topology,
                    ResolveTerminals(topology, options.sources, sources,
                                     "source"),
                    ResolveTerminals(topology, options.sinks, sinks,
                                     "terminal"),
                    options, false, &rng, {0, 0, true});
  } catch (const std::invalid_argument& e) {
    throw ParseError(0, e.what());
  }
}

Instance ParseSndlib(const std::string& text, const ParseOptions& options) {
  Topology topology;
  enum class Section { kNone, kNodes, kLinks, kOther };
  Section section = Section::kNone;
  bool saw_nodes = false;
  bool saw_links = false;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string stripped = StripComment(raw, '#');
    if (stripped.rfind("?", 0) == 0) continue;
    // Parentheses become separate tokens.
    std::string spaced;
    for (char c : stripped) {
      if (c == '(' || c == ')') {
        spaced += ' ';
        spaced += c;
        spaced += ' ';
      } else {
        spaced += c;
      }
    }
    const std::vector<std::string> tokens = Tokens(spaced);
    if (tokens.empty()) continue;
    if (section == Section::kNone) {
      if (tokens.size() != 2 || tokens[1] != "(") {
        throw ParseError(line, "expected a section header");
      }
      if (tokens[0] == "NODES") {
        section = Section::kNodes;
        saw_nodes = true;
      } else if (tokens[0] == "LINKS") {
        section = Section::kLinks;
        saw_links = true;
      } else {
        section = Section::kOther;
      }
      continue;
    }
    if (tokens.size() == 1 && tokens[0] == ")") {
      section = Section::kNone;
      continue;
    }
    if (section == Section::kNodes) {
      if (topology.FindNode(tokens[0]) >= 0) {
        throw ParseError(line, "duplicate node '" + tokens[0] + "'");
      }
      topology.AddNode(tokens[0]);
    } else if (section == Section::kLinks) {
      // id ( source target ) pre_cap pre_cost routing setup ( modules )
      if (tokens.size() < 9 || tokens[1] != "(" || tokens[4] != ")") {
        throw ParseError(line, "malformed link");
      }
      const NodeIndex u = RequireNode(topology, tokens[2], line);
      const NodeIndex v = RequireNode(topology, tokens[3], line);
      double capacity = ToNumber(tokens[5], line);
      for (int i = 6; i <= 8; ++i) ToNumber(tokens[i], line);
      if (capacity <= 0 && tokens.size() >= 11 && tokens[9] == "(" &&
          tokens[10] != ")") {
        capacity = ToNumber(tokens[10], line);
      }
      if (capacity < 0) throw ParseError(line, "negative capacity");
      topology.AddEdge(u, v, capacity, 0.0, 0.0);
      topology.edges.back().label = tokens[0];
    }
  }
  if (section != Section::kNone) throw ParseError(line, "unclosed section");
  if (!saw_nodes || topology.node_names.empty()) {
    throw ParseError(0, "missing or empty NODES section");
  }
  if (!saw_links || topology.edges.empty()) {
    throw ParseError(0, "missing or empty LINKS section");
  }

  SeededRandom rng(options.seed);
  bool all_zero = true;
  double lo = kInfinity;
  double hi = 0.0;
  for (const Edge& e : topology.edges) {
    if (e.capacity > 0) {
      all_zero = false;
      lo = std::min(lo, e.capacity);
      hi = std::max(hi, e.capacity);
    }
  }
  Draws draws = {500, 1000, true};
  if (!all_zero) draws = {lo, hi, false};
  for (Edge& e : topology.edges) {
    if (all_zero) e.capacity = DrawCapacity(rng, draws);
    e.cost = DrawCost(rng);
  }
  const NodeIndex last = static_cast<NodeIndex>(topology.node_names.size()) - 1;
  try {
    return Assemble("", topology,
                    ResolveTerminals(topology, options.sources, {0}, "source"),
                    ResolveTerminals(topology, options.sinks, {last},
                                     "terminal"),
                    options, options.repair, &rng, draws);
  } catch (const std::invalid_argument& e) {
    throw ParseError(0, e.what());
  }
}

Instance ParseDimacs(const std::string& text, const ParseOptions& options) {
  Topology topology;
  int64_t declared_arcs = -1;
  std::vector<NodeIndex> sources;
  std::vector<NodeIndex> sinks;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  auto node = [&](const std::string& token) {
    const int64_t id = ToInteger(token, line);
    if (id < 1 || id > static_cast<int64_t>(topology.node_names.size())) {
      throw ParseError(line, "node " + token + " is not declared");
    }
    return static_cast<NodeIndex>(id - 1);
  };
  while (std::getline(in, raw)) {
    ++line;
    const std::vector<std::string> tokens = Tokens(raw);
    if (tokens.empty() || tokens[0] == "c") continue;
    if (tokens[0] == "p") {
      if (declared_arcs >= 0) throw ParseError(line, "second problem line");
      if (tokens.size() != 4 || tokens[1] != "max") {
        throw ParseError(line, "expected 'p max <nodes> <arcs>'");
      }
      const int64_t n = ToInteger(tokens[2], line);
      declared_arcs = ToInteger(tokens[3], line);
      if (n < 2 || declared_arcs < 0) {
        throw ParseError(line, "invalid problem size");
      }
      for (int64_t i = 1; i <= n; ++i) topology.AddNode(std::to_string(i));
      continue;
    }
    if (declared_arcs < 0) throw ParseError(line, "missing problem line");
    if (tokens[0] == "n") {
      if (tokens.size() != 3 || (tokens[2] != "s" && tokens[2] != "t")) {
        throw ParseError(line, "expected 'n <id> s|t'");
      }
      (tokens[2] == "s" ? sources : sinks).push_back(node(tokens[1]));
    } else if (tokens[0] == "a") {
      if (tokens.size() != 4) throw ParseError(line, "expected 'a u v cap'");
      const NodeIndex u = node(tokens[1]);
      const NodeIndex v = node(tokens[2]);
      const double cap = ToNumber(tokens[3], line);
      if (cap < 0) throw ParseError(line, "negative capacity");
      topology.AddEdge(u, v, cap, 0.0, 0.0);
    } else {
      throw ParseError(line, "unknown line type '" + tokens[0] + "'");
    }
  }
  if (declared_arcs < 0) throw ParseError(0, "missing problem line");
  if (static_cast<int64_t>(topology.edges.size()) != declared_arcs) {
    throw ParseError(0, "problem line declares " +
                            std::to_string(declared_arcs) + " arcs, found " +
                            std::to_string(topology.edges.size()));
  }
  if (options.sources.empty() && sources.empty()) {
    throw ParseError(0, "missing source designation");
  }
  if (options.sinks.empty() && sinks.empty()) {
    throw ParseError(0, "missing sink designation");
  }
  SeededRandom rng(options.seed);
  const Draws draws = {10, 50, true};
  for (Edge& e : topology.edges) {
    e.capacity = DrawCapacity(rng, draws);
    e.cost = DrawCost(rng);
  }
  try {
    return Assemble("", topology,
                    ResolveTerminals(topology, options.sources, sources,
                                     "source"),
                    ResolveTerminals(topology, options.sinks, sinks, "sink"),
                    options, options.repair, &rng, draws);
  } catch (const std::invalid_argument& e) {
    throw ParseError(0, e.what());
  }
}

Instance ParseInstance(const std::string& text, InstanceFormat format,
                       const ParseOptions& options) {
  switch (format) {
    case InstanceFormat::kNative:
      return ParseNative(text, options);
    case InstanceFormat::kSndlib:
      return ParseSndlib(text, options);
    case InstanceFormat::kDimacs:
      return ParseDimacs(text, options);
  }
  throw std::invalid_argument("unknown instance format");
}

Instance LoadInstance(const std::string& path,
                      std::optional<InstanceFormat> format,
                      const ParseOptions& options) {
  std::ifstream file(path);
  if (!file) throw std::runtime_error("cannot open " + path);
  std::stringstream buffer;
  buffer << file.rdbuf();
  const std::string text = buffer.str();
  Instance instance =
      ParseInstance(text, format ? *format : SniffFormat(path, text), options);
  if (instance.name.empty()) {
    instance.name = std::filesystem::path(path).stem().string();
  }
  return instance;
}

void WriteNative(const Network& net, const std::string& name,
                 std::ostream& out) {
  auto number = [](double v) {
    if (std::isinf(v)) return std::string("inf");
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.17g", v);
    return std::string(buffer);
  };
  if (!name.empty()) out << "name " << name << "\n";
  out << "nodes";
  for (const std::string& n : net.node_names()) out << " " << n;
  out << "\nsource " << net.node_name(net.source()) << "\n";
  out << "terminal " << net.node_name(net.terminal()) << "\n";
  out << "edges\n";
  for (EdgeIndex e = 0; e < net.num_real_edges(); ++e) {
    const Edge& edge = net.edge(e);
    out << net.node_name(edge.tail) << " " << net.node_name(edge.head) << " "
        << number(edge.capacity) << " " << number(edge.cost) << " "
        << number(edge.post_attack_capacity);
    if (!edge.attackable) out << " protected";
    if (edge.label != "e" + std::to_string(e + 1)) {
      out << " label=" << edge.label;
    }
    out << "\n";
  }
}

}  // namespace robustflow
