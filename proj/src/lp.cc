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

#include "robustflow/lp.h"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>

namespace robustflow {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

int LpProblem::AddVariable(double lower, double upper, double objective,
                           std::string name) {
  Variable v;
  v.lower = lower;
  v.upper = upper;
  v.objective = objective;
  v.name = std::move(name);
  variables_.push_back(std::move(v));
  return num_variables() - 1;
}

int LpProblem::AddConstraint(std::vector<std::pair<int, double>> terms,
                             Relation relation, double rhs, std::string name) {
  std::map<int, double> merged;
  for (const auto& [var, coef] : terms) merged[var] += coef;
  Constraint c;
  for (const auto& [var, coef] : merged) {
    if (coef != 0.0) c.terms.push_back({var, coef});
  }
  c.relation = relation;
  c.rhs = rhs;
  c.name = std::move(name);
  constraints_.push_back(std::move(c));
  return num_constraints() - 1;
}

double LpProblem::EvaluateObjective(const std::vector<double>& values) const {
  double total = 0.0;
  for (int j = 0; j < num_variables(); ++j) {
    total += variables_[j].objective * values[j];
  }
  return total;
}

double LpProblem::MaxViolation(const std::vector<double>& values) const {
  double worst = 0.0;
  for (int j = 0; j < num_variables(); ++j) {
    worst = std::max(worst, variables_[j].lower - values[j]);
    worst = std::max(worst, values[j] - variables_[j].upper);
  }
  for (const Constraint& c : constraints_) {
    double lhs = 0.0;
    for (const auto& [var, coef] : c.terms) lhs += coef * values[var];
    if (c.relation != Relation::kGreaterOrEqual) {
      worst = std::max(worst, lhs - c.rhs);
    }
    if (c.relation != Relation::kLessOrEqual) {
      worst = std::max(worst, c.rhs - lhs);
    }
  }
  return worst;
}

void LpProblem::WriteLpFormat(std::ostream& out) const {
  auto name = [&](int j) {
    return variables_[j].name.empty() ? "x" + std::to_string(j)
                                      : variables_[j].name;
  };
  auto term = [&](double coef, int j) {
    out << (coef < 0 ? " - " : " + ") << std::fabs(coef) << " " << name(j);
  };
  out.precision(17);
  out << "Maximize\n obj:";
  bool any = false;
  for (int j = 0; j < num_variables(); ++j) {
    if (variables_[j].objective != 0.0) {
      term(variables_[j].objective, j);
      any = true;
    }
  }
  if (!any) out << " 0 " << (num_variables() > 0 ? name(0) : "x0");
  out << "\nSubject To\n";
  for (int i = 0; i < num_constraints(); ++i) {
    const Constraint& c = constraints_[i];
    out << " " << (c.name.empty() ? "c" + std::to_string(i) : c.name) << ":";
    if (c.terms.empty()) out << " 0 " << (num_variables() > 0 ? name(0) : "x0");
    for (const auto& [var, coef] : c.terms) term(coef, var);
    switch (c.relation) {
      case Relation::kLessOrEqual:
        out << " <= ";
        break;
      case Relation::kEqual:
        out << " = ";
        break;
      case Relation::kGreaterOrEqual:
        out << " >= ";
        break;
    }
    out << c.rhs << "\n";
  }
  out << "Bounds\n";
  for (int j = 0; j < num_variables(); ++j) {
    const Variable& v = variables_[j];
    if (std::isinf(v.lower) && std::isinf(v.upper)) {
      out << " " << name(j) << " free\n";
      continue;
    }
    out << " ";
    if (std::isinf(v.lower)) {
      out << "-inf";
    } else {
      out << v.lower;
    }
    out << " <= " << name(j) << " <= ";
    if (std::isinf(v.upper)) {
      out << "+inf";
    } else {
      out << v.upper;
    }
    out << "\n";
  }
  out << "End\n";
}

const char* LpStatusName(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
    case LpStatus::kIterationLimit:
      return "iteration_limit";
    case LpStatus::kNumericalFailure:
      return "numerical_failure";
  }
  return "unknown";
}

namespace {

typedef Eigen::SparseMatrix<double, Eigen::ColMajor, int> SparseMatrix;
typedef Eigen::VectorXd Vector;

// Bounded-variable revised primal simplex.
//
// Every row i gets a slack column with coefficient +1 so that A x + s = b.
// The slack bounds encode the relation. Rows whose slack cannot absorb the
// starting residual get an artificial column, removed by a phase-one
// objective. The basis inverse is an LU factorization followed by a product
// of eta matrices, rebuilt every `refactor_period` pivots.
class SimplexSolver {
 public:
  SimplexSolver(const LpProblem& problem, const LpOptions& options)
      : problem_(problem),
        options_(options),
        m_(problem.num_constraints()),
        n_(problem.num_variables()) {}

  LpSolution Solve();

 private:
  enum class State { kBasic, kAtLower, kAtUpper, kFree };
  enum class Outcome { kOptimal, kUnbounded, kIterationLimit, kNumerical };

  int num_columns() const { return static_cast<int>(lower_.size()); }

  void Setup();
  bool Refactor();
  void ComputeBasicValues();
  Vector Ftran(const Vector& a) const;
  Vector Btran(const Vector& c) const;
  Vector Column(int j) const;
  double DotColumn(const Vector& y, int j) const;
  Outcome RunPhase();
  double ArtificialSum() const;

  const LpProblem& problem_;
  const LpOptions options_;
  const int m_;
  const int n_;

  // Structural columns in compressed form.
  std::vector<std::vector<std::pair<int, double>>> columns_;
  // For slack and artificial columns: row and coefficient.
  std::vector<int> unit_row_;
  std::vector<double> unit_sign_;

  std::vector<double> lower_, upper_, cost_, x_;
  std::vector<State> state_;
  std::vector<int> basis_;  // basis_[i] = column basic in position i
  std::vector<double> rhs_;

  std::unique_ptr<Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>>>
      lu_;
  struct Eta {
    int row;
    double pivot;
    std::vector<std::pair<int, double>> others;
  };
  std::vector<Eta> etas_;

  int iterations_ = 0;
  int iteration_limit_ = 0;
  int first_artificial_ = 0;
};

Vector SimplexSolver::Column(int j) const {
  Vector a = Vector::Zero(m_);
  if (j < n_) {
    for (const auto& [row, coef] : columns_[j]) a[row] = coef;
  } else {
    a[unit_row_[j - n_]] = unit_sign_[j - n_];
  }
  return a;
}

double SimplexSolver::DotColumn(const Vector& y, int j) const {
  if (j >= n_) return y[unit_row_[j - n_]] * unit_sign_[j - n_];
  double total = 0.0;
  for (const auto& [row, coef] : columns_[j]) total += y[row] * coef;
  return total;
}

Vector SimplexSolver::Ftran(const Vector& a) const {
  Vector v = lu_->solve(a);
  for (const Eta& eta : etas_) {
    const double vr = v[eta.row] / eta.pivot;
    if (vr != 0.0) {
      for (const auto& [i, alpha] : eta.others) v[i] -= alpha * vr;
    }
    v[eta.row] = vr;
  }
  return v;
}

Vector SimplexSolver::Btran(const Vector& c) const {
  Vector w = c;
  for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
    double value = w[it->row];
    for (const auto& [i, alpha] : it->others) value -= alpha * w[i];
    w[it->row] = value / it->pivot;
  }
  return lu_->transpose().solve(w);
}

void SimplexSolver::Setup() {
  columns_.assign(n_, {});
  for (int i = 0; i < m_; ++i) {
    for (const auto& [var, coef] : problem_.constraints()[i].terms) {
      columns_[var].push_back({i, coef});
    }
  }
  rhs_.resize(m_);
  for (int i = 0; i < m_; ++i) rhs_[i] = problem_.constraints()[i].rhs;

  const int total = n_ + m_;
  lower_.resize(total);
  upper_.resize(total);
  cost_.assign(total, 0.0);
  x_.assign(total, 0.0);
  state_.resize(total);
  for (int j = 0; j < n_; ++j) {
    const LpProblem::Variable& v = problem_.variables()[j];
    lower_[j] = v.lower;
    upper_[j] = v.upper;
    if (std::isfinite(v.lower)) {
      x_[j] = v.lower;
      state_[j] = State::kAtLower;
    } else if (std::isfinite(v.upper)) {
      x_[j] = v.upper;
      state_[j] = State::kAtUpper;
    } else {
      x_[j] = 0.0;
      state_[j] = State::kFree;
    }
  }
  std::vector<double> residual = rhs_;
  for (int j = 0; j < n_; ++j) {
    for (const auto& [row, coef] : columns_[j]) residual[row] -= coef * x_[j];
  }
  basis_.resize(m_);
  first_artificial_ = total;
  for (int i = 0; i < m_; ++i) {
    const int s = n_ + i;
    unit_row_.push_back(i);
    unit_sign_.push_back(1.0);
    switch (problem_.constraints()[i].relation) {
      case LpProblem::Relation::kLessOrEqual:
        lower_[s] = 0.0;
        upper_[s] = kInf;
        break;
      case LpProblem::Relation::kEqual:
        lower_[s] = 0.0;
        upper_[s] = 0.0;
        break;
      case LpProblem::Relation::kGreaterOrEqual:
        lower_[s] = -kInf;
        upper_[s] = 0.0;
        break;
    }
  }
  for (int i = 0; i < m_; ++i) {
    const int s = n_ + i;
    const double r = residual[i];
    if (r >= lower_[s] - options_.feasibility_tolerance &&
        r <= upper_[s] + options_.feasibility_tolerance) {
      x_[s] = r;
      state_[s] = State::kBasic;
      basis_[i] = s;
      continue;
    }
    const bool below = r < lower_[s];
    x_[s] = below ? lower_[s] : upper_[s];
    state_[s] = below ? State::kAtLower : State::kAtUpper;
    const double gap = r - x_[s];
    const int a = static_cast<int>(lower_.size());
    unit_row_.push_back(i);
    unit_sign_.push_back(gap > 0 ? 1.0 : -1.0);
    lower_.push_back(0.0);
    upper_.push_back(kInf);
    cost_.push_back(0.0);
    x_.push_back(std::fabs(gap));
    state_.push_back(State::kBasic);
    basis_[i] = a;
  }
  for (int j = 0; j < num_columns(); ++j) {
    if (state_[j] != State::kBasic && lower_[j] == upper_[j]) {
      state_[j] = State::kAtLower;
    }
  }
}

bool SimplexSolver::Refactor() {
  etas_.clear();
  if (m_ == 0) return true;
  std::vector<Eigen::Triplet<double, int>> triplets;
  for (int pos = 0; pos < m_; ++pos) {
    const int j = basis_[pos];
    if (j < n_) {
      for (const auto& [row, coef] : columns_[j]) {
        triplets.emplace_back(row, pos, coef);
      }
    } else {
      triplets.emplace_back(unit_row_[j - n_], pos, unit_sign_[j - n_]);
    }
  }
  SparseMatrix b(m_, m_);
  b.setFromTriplets(triplets.begin(), triplets.end());
  b.makeCompressed();
  lu_ = std::make_unique<
      Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>>>();
  lu_->analyzePattern(b);
  lu_->factorize(b);
  return lu_->info() == Eigen::Success;
}

void SimplexSolver::ComputeBasicValues() {
  if (m_ == 0) return;
  Vector r(m_);
  for (int i = 0; i < m_; ++i) r[i] = rhs_[i];
  for (int j = 0; j < num_columns(); ++j) {
    if (state_[j] == State::kBasic || x_[j] == 0.0) continue;
    if (j < n_) {
      for (const auto& [row, coef] : columns_[j]) r[row] -= coef * x_[j];
    } else {
      r[unit_row_[j - n_]] -= unit_sign_[j - n_] * x_[j];
    }
  }
  const Vector xb = Ftran(r);
  for (int i = 0; i < m_; ++i) x_[basis_[i]] = xb[i];
}

double SimplexSolver::ArtificialSum() const {
  double total = 0.0;
  for (int j = first_artificial_; j < num_columns(); ++j) total += x_[j];
  return total;
}

SimplexSolver::Outcome SimplexSolver::RunPhase() {
  const double dual_tol = options_.optimality_tolerance;
  const double primal_tol = options_.feasibility_tolerance;
  const double pivot_tol = options_.pivot_tolerance;
  const bool phase_one = first_artificial_ < num_columns() &&
                         cost_[first_artificial_] != 0.0;
  const long degenerate_limit = 10L * (m_ + n_);
  long degenerate_streak = 0;
  bool bland = false;

  while (true) {
    if (iterations_ >= iteration_limit_) return Outcome::kIterationLimit;
    if (phase_one && ArtificialSum() <= primal_tol) return Outcome::kOptimal;

    Vector cb(m_);
    for (int i = 0; i < m_; ++i) cb[i] = cost_[basis_[i]];
    const Vector y = m_ > 0 ? Btran(cb) : Vector();

    int entering = -1;
    double best_score = 0.0;
    double entering_d = 0.0;
    for (int j = 0; j < num_columns(); ++j) {
      const State st = state_[j];
      if (st == State::kBasic || lower_[j] == upper_[j]) continue;
      const double d = cost_[j] - (m_ > 0 ? DotColumn(y, j) : 0.0);
      bool eligible = false;
      if (st == State::kAtLower) eligible = d > dual_tol;
      if (st == State::kAtUpper) eligible = d < -dual_tol;
      if (st == State::kFree) eligible = std::fabs(d) > dual_tol;
      if (!eligible) continue;
      if (bland) {
        entering = j;
        entering_d = d;
        break;
      }
      if (std::fabs(d) > best_score) {
        best_score = std::fabs(d);
        entering = j;
        entering_d = d;
      }
    }
    if (entering < 0) return Outcome::kOptimal;

    const double dir = entering_d > 0 ? 1.0 : -1.0;
    const Vector alpha = m_ > 0 ? Ftran(Column(entering)) : Vector();

    // Ratio test. A basic variable moves by -theta * dir * alpha_i.
    int leave = -1;
    double theta = kInf;
    if (bland) {
      for (int i = 0; i < m_; ++i) {
        const double delta = dir * alpha[i];
        const int j = basis_[i];
        double ratio;
        if (delta > pivot_tol && std::isfinite(lower_[j])) {
          ratio = std::max(0.0, (x_[j] - lower_[j]) / delta);
        } else if (delta < -pivot_tol && std::isfinite(upper_[j])) {
          ratio = std::max(0.0, (upper_[j] - x_[j]) / -delta);
        } else {
          continue;
        }
        if (ratio < theta - 1e-12 ||
            (ratio <= theta + 1e-12 && leave >= 0 && j < basis_[leave])) {
          theta = std::min(theta, ratio);
          leave = i;
        }
      }
    } else {
      // Harris two-pass test.
      double relaxed = kInf;
      for (int i = 0; i < m_; ++i) {
        const double delta = dir * alpha[i];
        const int j = basis_[i];
        if (delta > pivot_tol && std::isfinite(lower_[j])) {
          relaxed = std::min(relaxed, (x_[j] - lower_[j] + primal_tol) / delta);
        } else if (delta < -pivot_tol && std::isfinite(upper_[j])) {
          relaxed =
              std::min(relaxed, (upper_[j] - x_[j] + primal_tol) / -delta);
        }
      }
      if (std::isfinite(relaxed)) {
        double best_pivot = 0.0;
        for (int i = 0; i < m_; ++i) {
          const double delta = dir * alpha[i];
          const int j = basis_[i];
          double ratio;
          if (delta > pivot_tol && std::isfinite(lower_[j])) {
            ratio = (x_[j] - lower_[j]) / delta;
          } else if (delta < -pivot_tol && std::isfinite(upper_[j])) {
            ratio = (upper_[j] - x_[j]) / -delta;
          } else {
            continue;
          }
          if (ratio <= relaxed && std::fabs(delta) > best_pivot) {
            best_pivot = std::fabs(delta);
            leave = i;
            theta = std::max(0.0, ratio);
          }
        }
      }
    }

    const double span = upper_[entering] - lower_[entering];
    const bool flip = std::isfinite(span) && span <= theta;
    if (leave < 0 && !flip) return Outcome::kUnbounded;
    if (flip) theta = span;

    ++iterations_;
    if (theta > 1e-12) {
      degenerate_streak = 0;
      bland = false;
    } else if (++degenerate_streak > degenerate_limit) {
      bland = true;
    }

    if (theta > 0.0) {
      x_[entering] += dir * theta;
      for (int i = 0; i < m_; ++i) x_[basis_[i]] -= theta * dir * alpha[i];
    }
    if (flip) {
      if (dir > 0) {
        x_[entering] = upper_[entering];
        state_[entering] = State::kAtUpper;
      } else {
        x_[entering] = lower_[entering];
        state_[entering] = State::kAtLower;
      }
      continue;
    }

    const int leaving = basis_[leave];
    if (dir * alpha[leave] > 0) {
      x_[leaving] = lower_[leaving];
      state_[leaving] = State::kAtLower;
    } else {
      x_[leaving] = upper_[leaving];
      state_[leaving] = State::kAtUpper;
    }
    basis_[leave] = entering;
    state_[entering] = State::kBasic;

    Eta eta;
    eta.row = leave;
    eta.pivot = alpha[leave];
    for (int i = 0; i < m_; ++i) {
      if (i != leave && alpha[i] != 0.0) eta.others.push_back({i, alpha[i]});
    }
    etas_.push_back(std::move(eta));
    if (static_cast<int>(etas_.size()) >= options_.refactor_period) {
      if (!Refactor()) return Outcome::kNumerical;
      ComputeBasicValues();
    }
  }
}

LpSolution SimplexSolver::Solve() {
  LpSolution solution;
  for (const LpProblem::Variable& v : problem_.variables()) {
    if (v.lower > v.upper || std::isnan(v.lower) || std::isnan(v.upper) ||
        v.lower == kInf || v.upper == -kInf) {
      solution.status = LpStatus::kInfeasible;
      return solution;
    }
  }
  iteration_limit_ = options_.iteration_limit > 0
                         ? options_.iteration_limit
                         : 50 * (m_ + n_) + 10000;
  Setup();
  if (!Refactor()) return solution;

  double rhs_scale = 1.0;
  for (double b : rhs_) rhs_scale = std::max(rhs_scale, std::fabs(b));

  if (first_artificial_ < num_columns()) {
    for (int j = first_artificial_; j < num_columns(); ++j) cost_[j] = -1.0;
    const Outcome outcome = RunPhase();
    solution.iterations = iterations_;
    if (outcome == Outcome::kIterationLimit) {
      solution.status = LpStatus::kIterationLimit;
      return solution;
    }
    if (outcome != Outcome::kOptimal) return solution;
    if (!Refactor()) return solution;
    ComputeBasicValues();
    if (ArtificialSum() > 1e-6 * rhs_scale) {
      solution.status = LpStatus::kInfeasible;
      return solution;
    }
    for (int j = first_artificial_; j < num_columns(); ++j) {
      cost_[j] = 0.0;
      upper_[j] = 0.0;
      if (state_[j] != State::kBasic) {
        x_[j] = 0.0;
        state_[j] = State::kAtLower;
      }
    }
  }
  for (int j = 0; j < n_; ++j) cost_[j] = problem_.variables()[j].objective;

  for (int attempt = 0; attempt < 3; ++attempt) {
    const Outcome outcome = RunPhase();
    solution.iterations = iterations_;
    if (outcome == Outcome::kUnbounded) {
      solution.status = LpStatus::kUnbounded;
      return solution;
    }
    if (outcome == Outcome::kIterationLimit) {
      solution.status = LpStatus::kIterationLimit;
      return solution;
    }
    if (outcome == Outcome::kNumerical) return solution;
    if (!Refactor()) return solution;
    ComputeBasicValues();
    solution.values.assign(x_.begin(), x_.begin() + n_);
    for (int j = 0; j < n_; ++j) {
      solution.values[j] =
          std::clamp(solution.values[j], lower_[j], upper_[j]);
    }
    if (problem_.MaxViolation(solution.values) <=
        options_.solution_tolerance * rhs_scale) {
      solution.status = LpStatus::kOptimal;
      solution.objective = problem_.EvaluateObjective(solution.values);
      return solution;
    }
  }
  solution.status = LpStatus::kNumericalFailure;
  return solution;
}

}  // namespace

LpSolution SolveLp(const LpProblem& problem, const LpOptions& options) {
  SimplexSolver solver(problem, options);
  return solver.Solve();
}

}  // namespace robustflow
