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

// Seeded draws with a fixed mapping from engine output to values. The
// std distributions are implementation defined, so they are avoided to keep
// generated instances identical across standard libraries.

#ifndef ROBUSTFLOW_SRC_RANDOM_UTIL_H_
#define ROBUSTFLOW_SRC_RANDOM_UTIL_H_

#include <cmath>
#include <cstdint>
#include <random>

namespace robustflow {

class SeededRandom {
 public:
  explicit SeededRandom(uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1).
  double Unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform integer in [lo, hi].
  int64_t Int(int64_t lo, int64_t hi) {
    const uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
    return lo + static_cast<int64_t>(engine_() % span);
  }

  double Real(double lo, double hi) { return lo + (hi - lo) * Unit(); }

  bool Bernoulli(double p) { return Unit() < p; }

 private:
  std::mt19937_64 engine_;
};

inline double RoundTo(double value, double granularity) {
  return std::round(value / granularity) * granularity;
}

}  // namespace robustflow

#endif  // ROBUSTFLOW_SRC_RANDOM_UTIL_H_
