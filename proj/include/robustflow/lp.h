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

// A small linear programming layer: a problem builder and a bounded-variable
// revised primal simplex solver. Problems are always maximized.

#ifndef ROBUSTFLOW_LP_H_
#define ROBUSTFLOW_LP_H_

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace robustflow {

class LpProblem {
 public:
  enum class Relation { kLessOrEqual, kEqual, kGreaterOrEqual };

  struct Variable {
    double lower = 0.0;
    double upper = 0.0;
    double objective = 0.0;
    std::string name;
  };

  struct Constraint {
    std::vector<std::pair<int, double>> terms;
    Relation relation = Relation::kLessOrEqual;
    double rhs = 0.0;
    std::string name;
  };

  // Returns the variable index. `upper` may be +infinity and `lower` may be
  // -infinity.
  int AddVariable(double lower, double upper, double objective,
                  std::string name = "");
  // Duplicate variable indices in `terms` are summed.
  int AddConstraint(std::vector<std::pair<int, double>> terms,
                    Relation relation, double rhs, std::string name = "");

  void SetObjective(int var, double coefficient) {
    variables_[var].objective = coefficient;
  }

  int num_variables() const { return static_cast<int>(variables_.size()); }
  int num_constraints() const { return static_cast<int>(constraints_.size()); }
  const std::vector<Variable>& variables() const { return variables_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }

  double EvaluateObjective(const std::vector<double>& values) const;
  // Largest bound or row violation of `values`.
  double MaxViolation(const std::vector<double>& values) const;

  // Writes the problem in CPLEX LP text format.
  void WriteLpFormat(std::ostream& out) const;

 private:
  std::vector<Variable> variables_;
  std::vector<Constraint> constraints_;
};

enum class LpStatus {
  kOptimal,
  kInfeasible,
  kUnbounded,
  kIterationLimit,
  kNumericalFailure,
};

const char* LpStatusName(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::kNumericalFailure;
  std::vector<double> values;
  double objective = 0.0;
  int iterations = 0;
};

struct LpOptions {
  double feasibility_tolerance = 1e-9;
  double optimality_tolerance = 1e-9;
  double pivot_tolerance = 1e-9;
  // Final acceptance threshold for row and bound violations.
  double solution_tolerance = 1e-7;
  // Pivots between fresh LU factorizations of the basis.
  int refactor_period = 64;
  // 0 selects 50 * (m + n) + 10000.
  int iteration_limit = 0;
};

LpSolution SolveLp(const LpProblem& problem, const LpOptions& options = {});

}  // namespace robustflow

#endif  // ROBUSTFLOW_LP_H_
