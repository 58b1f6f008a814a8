// Copyright 2026 The paroforge Authors
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

// Dense linear and binary programming.
//
// Every LP/MILP posed elsewhere in the library goes through solve_lp or
// solve_milp. Problems are stated as
//
//   minimize    c'x
//   subject to  A x <= b
//               lower <= x <= upper      (either side may be infinite)
//               x_j in {0, 1}            for j with binary[j] set
//
// Row multipliers follow the minimization convention: the dual of a <=-row is
// non-positive, so for an LP without finite variable bounds b'lambda equals
// the optimal value and A'lambda = c.

#ifndef PAROFORGE_LP_HPP_
#define PAROFORGE_LP_HPP_

#include <Eigen/Dense>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace paro {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct LpProblem {
  Eigen::VectorXd objective;
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
  std::vector<bool> binary;  // empty means "no binaries"

  int num_vars() const { return static_cast<int>(objective.size()); }
  int num_rows() const { return static_cast<int>(b.size()); }
  bool has_binaries() const;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

const char* to_string(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  Eigen::VectorXd x;
  double objective = 0.0;
  // Row multipliers, <= 0 under the minimization convention.
  Eigen::VectorXd duals;
  Eigen::VectorXd reduced_costs;
  // Sorted indices of basic columns; structural columns are [0, n), the slack
  // of row i is n + i.
  std::vector<int> basis;
  long pivots = 0;
  long nodes = 0;

  bool optimal() const { return status == LpStatus::kOptimal; }
};

struct LpOptions {
  double feasibility_tol = 1e-7;
  double optimality_tol = 1e-9;
  double integrality_tol = 1e-6;
  double pivot_tol = 1e-9;
  // <= 0 selects the default cap of 10 * (rows + cols)^2 pivots.
  long max_pivots = 0;
  long max_nodes = 1'000'000;
  // Memory budget for warm-start snapshots kept by branch-and-bound.
  std::size_t snapshot_budget_bytes = std::size_t{192} << 20;
};

LpSolution solve_lp(const LpProblem& problem, const LpOptions& options = {});

// Best-first branch-and-bound over the binary columns; falls back to solve_lp
// when no column is binary.
LpSolution solve_milp(const LpProblem& problem, const LpOptions& options = {});

// Worst primal violation of x (rows and bounds).
double primal_residual(const LpProblem& problem, const Eigen::VectorXd& x);

// Incremental construction of an LpProblem with sparse rows.
class LpBuilder {
 public:
  int add_variable(double lower, double upper, double cost = 0.0,
                   bool binary = false);
  // Adds `count` variables sharing the same bounds; returns the first index.
  int add_variables(int count, double lower, double upper);
  void set_cost(int var, double cost) { costs_[var] = cost; }
  void add_cost(int var, double cost) { costs_[var] += cost; }
  void set_bounds(int var, double lower, double upper);
  void set_binary(int var, bool binary) { binary_[var] = binary; }

  using Row = std::vector<std::pair<int, double>>;
  // Adds sum(coef * x[var]) <= rhs and returns the row index.
  int add_row(const Row& row, double rhs);

  int num_vars() const { return static_cast<int>(costs_.size()); }
  int num_rows() const { return static_cast<int>(rhs_.size()); }

  LpProblem build() const;

 private:
  std::vector<double> costs_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<bool> binary_;
  std::vector<Row> rows_;
  std::vector<double> rhs_;
};

}  // namespace paro

#endif  // PAROFORGE_LP_HPP_
