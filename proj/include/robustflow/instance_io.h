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

// Instance readers and writers.
//
// Native format, one directive per line, '#' starts a comment:
//
//   name d1
//   nodes s a b t
//   source s
//   terminal t
//   edges
//   s a 10 0.01 0
//   a t 6 0.01 0 protected
//
// Edge lines are `tail head capacity cost post_attack_capacity`, optionally
// followed by `protected` (not attackable) and `label=<text>`. Capacities may
// be `inf`.

#ifndef ROBUSTFLOW_INSTANCE_IO_H_
#define ROBUSTFLOW_INSTANCE_IO_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "robustflow/network.h"

namespace robustflow {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message);
  // 1-based line number, 0 when the error is not tied to a line.
  int line() const { return line_; }

 private:
  int line_;
};

enum class InstanceFormat { kNative, kSndlib, kDimacs };

const char* InstanceFormatName(InstanceFormat format);
// Accepts "native", "sndlib" and "dimacs".
InstanceFormat ParseInstanceFormat(const std::string& name);
// Uses the extension (.net/.txt native unless SNDlib header, .max/.dimacs
// DIMACS) and falls back to looking at the first directive.
InstanceFormat SniffFormat(const std::string& path, const std::string& text);

struct ParseOptions {
  // Seeds capacity and cost draws and connectivity repair.
  uint64_t seed = 1;
  // Overrides m_e on every attackable edge (clamped to U_e).
  std::optional<double> post_attack_capacity;
  // Node names overriding the instance's terminals. Several names build a
  // super source or super terminal.
  std::vector<std::string> sources;
  std::vector<std::string> sinks;
  // SNDlib and DIMACS only: adds seeded edges so that every node lies on an
  // s->t walk. Added edges get capacities and costs from the same draws.
  bool repair = true;
};

struct Instance {
  std::string name;
  Network net;
  int repair_edges = 0;
};

Instance ParseNative(const std::string& text, const ParseOptions& options = {});

// SNDlib native text. One directed edge per link, in listed order. Capacity
// is the pre-installed capacity, else the first module capacity; if every
// capacity is zero all are drawn from [500, 1000]. Costs are drawn from
// [0.01, 0.1]. Terminals default to the first and last declared node.
Instance ParseSndlib(const std::string& text, const ParseOptions& options = {});

// DIMACS max-flow. Capacities are replaced by integers drawn from [10, 50]
// and costs by draws from [0.01, 0.1].
Instance ParseDimacs(const std::string& text, const ParseOptions& options = {});

Instance ParseInstance(const std::string& text, InstanceFormat format,
                       const ParseOptions& options = {});

// Reads a file; `format` defaults to sniffing. The instance name defaults to
// the file stem.
Instance LoadInstance(const std::string& path,
                      std::optional<InstanceFormat> format = std::nullopt,
                      const ParseOptions& options = {});

// Writes the native format. Parsing the output gives back the same network.
void WriteNative(const Network& net, const std::string& name,
                 std::ostream& out);

}  // namespace robustflow

#endif  // ROBUSTFLOW_INSTANCE_IO_H_
