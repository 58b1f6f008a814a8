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

// Worst-case evaluation and vertex-wise robust solves.

#ifndef PAROFORGE_ROBUST_HPP_
#define PAROFORGE_ROBUST_HPP_

#include <memory>
#include <variant>
#include <vector>

#include "paroforge/fme.hpp"
#include "paroforge/lp.hpp"
#include "paroforge/model.hpp"

namespace paro {

// Exact adaptive solve: one Stage-2 copy per vertex of U.
struct AroSolveResult {
  LpStatus status = LpStatus::kInfeasible;
  Eigen::VectorXd x;
  std::vector<Scenario> vertices;
  std::vector<Eigen::VectorXd> per_vertex_y;  // parallel to vertices
  double opt = 0.0;
  long nodes = 0;
};

// Throws kInfeasible when no Stage-1 decision is adaptively feasible.
AroSolveResult solve_aro_vertices(const TwoStageProblem& problem, const LpOptions& options = {});

struct RecourseResult {
  Eigen::VectorXd y;
  double objective = 0.0;  // c(z)'x + d'y
  std::vector<int> basis;  // basic columns; slack of row i is n_y + i
  Eigen::VectorXd duals;   // one per row, <= 0
};

// min d'y s.t. B y <= r(z) - A(z) x. Throws kInfeasible or kUnbounded.
RecourseResult optimal_recourse(const TwoStageProblem& problem, const Eigen::VectorXd& x, const Scenario& z,
                                const LpOptions& options = {});

struct StaticRule {
  Eigen::VectorXd y;
};

// y(z) = w + W z.
struct LinearRule {
  Eigen::VectorXd w;
  Eigen::MatrixXd W;

  Eigen::VectorXd at(const Scenario& z) const { return w + W * z; }
};

struct BackSubstitutionRule {
  std::shared_ptr<const EliminationResult> elimination;
  RecoursePolicy policy = RecoursePolicy::kObjectiveGreedy;
};

struct OptimalRecourseRule {};

using DecisionRule = std::variant<StaticRule, LinearRule, BackSubstitutionRule, OptimalRecourseRule>;

Eigen::VectorXd evaluate_rule(const TwoStageProblem& problem, const Eigen::VectorXd& x, const Scenario& z,
                              const DecisionRule& rule);

struct WorstCase {
  double value = 0.0;
  int vertex = -1;  // first vertex attaining the value
  Scenario z;
  std::vector<double> per_vertex;
};

// Max over the vertices of c(z)'x + d'y(z). OptimalRecourse needs uncertainty
// in r only (kPrecondition otherwise). A rule violating a row at some vertex
// raises kInfeasible naming the vertex.
WorstCase worst_case(const TwoStageProblem& problem, const Eigen::VectorXd& x, const DecisionRule& rule);
WorstCase worst_case(const TwoStageProblem& problem, const Eigen::VectorXd& x, const DecisionRule& rule,
                     const std::vector<Scenario>& vertices);

// mask(k, l) allows y_k to depend on z_l.
using RuleMask = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

RuleMask static_mask(const TwoStageProblem& problem);
RuleMask full_mask(const TwoStageProblem& problem);

struct LdrSolveResult {
  Eigen::VectorXd x;
  LinearRule rule;
  double worst_case = 0.0;
};

// Worst-case optimal (x, w, W) with W restricted to the mask, constraints
// enforced at every vertex. Throws kInfeasible when the structure is too
// restrictive for the instance.
LdrSolveResult solve_static_ldr(const TwoStageProblem& problem, const RuleMask& mask,
                                const LpOptions& options = {});

}  // namespace paro

#endif  // PAROFORGE_ROBUST_HPP_
