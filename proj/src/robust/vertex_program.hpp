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

// Shared plumbing for LPs that enforce the two-stage system at a list of
// scenarios. Decisions enter as affine expressions in LP columns, so the
// same code serves per-vertex recourse copies and linear decision rules.

#ifndef PAROFORGE_SRC_ROBUST_VERTEX_PROGRAM_HPP_
#define PAROFORGE_SRC_ROBUST_VERTEX_PROGRAM_HPP_

#include <map>
#include <vector>

#include "paroforge/lp.hpp"
#include "paroforge/model.hpp"
#include "paroforge/robust.hpp"

namespace paro::internal {

struct Affine {
  double constant = 0.0;
  std::map<int, double> terms;

  Affine() = default;
  explicit Affine(double c) : constant(c) {}
  static Affine var(int index, double coef = 1.0);

  Affine& add(int index, double coef);
  Affine& add(const Affine& other, double scale = 1.0);
  double value(const Eigen::VectorXd& solution) const;
};

using AffineVec = std::vector<Affine>;

AffineVec constants(const Eigen::VectorXd& v);
AffineVec columns(int first, int count);

// Adds lhs <= rhs; returns the row index.
int add_le(LpBuilder& builder, const Affine& lhs, double rhs);

// c(z)'x + d'y.
Affine objective_expr(const TwoStageProblem& p, const Scenario& z, const AffineVec& x, const AffineVec& y);

// A(z) x + B y <= r(z), skipping rows flagged in `skip`. Returns the row
// index of each added constraint (-1 when skipped).
std::vector<int> add_system(LpBuilder& builder, const TwoStageProblem& p, const Scenario& z, const AffineVec& x,
                            const AffineVec& y, const std::vector<bool>& skip = {});

// Parameter-free single-variable rows, split by the stage they bound.
struct BoundRows {
  ExplicitBounds bounds;
  std::vector<bool> x_rows;
  std::vector<bool> y_rows;
};

BoundRows bound_rows(const TwoStageProblem& p);

// Stage-1 columns with explicit bounds and integrality applied.
int add_stage_one(LpBuilder& builder, const TwoStageProblem& p, const BoundRows& rows, bool integral = true);

Eigen::VectorXd read(const Eigen::VectorXd& solution, int first, int count);

// Stage-1 columns plus one recourse copy per scenario, with the system
// enforced at each scenario. With an epigraph, a column tau (cost 1) bounds
// every scenario objective: c(z)'x + d'y^i - tau <= 0.
struct ScenarioProgram {
  LpBuilder builder;
  int x0 = 0;
  int tau = -1;
  std::vector<int> y0;
};

ScenarioProgram scenario_program(const TwoStageProblem& p, const std::vector<Scenario>& scenarios, bool epigraph);

// Stage-1 columns and a linear rule y = w + W z (W restricted to a mask),
// with the system enforced at each scenario. objective[v] holds
// c(z^v)'x + d'y(z^v) as an expression in the columns.
struct RuleProgram {
  LpBuilder builder;
  int x0 = 0;
  int w0 = 0;
  Eigen::MatrixXi W_col;  // -1 where the mask forbids a dependency
  std::vector<Affine> objective;

  AffineVec rule_at(const Scenario& z) const;
  LinearRule read_rule(const Eigen::VectorXd& solution) const;
};

RuleProgram rule_program(const TwoStageProblem& p, const Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>& mask,
                         const std::vector<Scenario>& scenarios);

}  // namespace paro::internal

#endif  // PAROFORGE_SRC_ROBUST_VERTEX_PROGRAM_HPP_
