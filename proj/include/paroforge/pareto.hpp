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

// Pareto refinement of worst-case optimal solutions.
//
// Everything here assumes U is a polytope with enumerable vertices. The
// improvement machinery further assumes that only r depends on z.

#ifndef PAROFORGE_PARETO_HPP_
#define PAROFORGE_PARETO_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "paroforge/lp.hpp"
#include "paroforge/model.hpp"
#include "paroforge/robust.hpp"

namespace paro {

struct ExtensionCheck {
  double bound = 0.0;  // <= 1e-7 certifies the rule
  Scenario z;          // witness scenario
  Eigen::VectorXd y;   // best recourse at the witness
  bool certified = true;  // false for the vertex-sampled fallback
};

// max over z in U and feasible y of d'(rule(z) - y) for the fixed x.
// Static and linear rules give one LP; other rules fall back to comparing
// against optimal recourse at the vertices (certified = false).
ExtensionCheck check_extension(const TwoStageProblem& problem, const Eigen::VectorXd& x, const DecisionRule& rule,
                               const LpOptions& options = {});

// With d = 0: min c(z_bar)'x over x that are feasible and within opt at every
// vertex. z_bar defaults to the interior point of U.
Eigen::VectorXd refine_d0(const TwoStageProblem& problem, double opt, std::optional<Scenario> z_bar = {},
                          const LpOptions& options = {});

struct UniquenessCertificate {
  Eigen::VectorXd x;
  double finite_opt = 0.0;
  std::vector<double> lower, upper;  // range of each x_j over the optimal face
  bool unique = false;
  bool robust_feasible = false;  // x admits recourse at every vertex of U
  bool pareto = false;           // unique, robust feasible and finite_opt = OPT
};

// Min-max over the scenario list, then coordinate ranges on its optimal face.
UniquenessCertificate certify_unique(const TwoStageProblem& problem, const std::vector<Scenario>& scenarios,
                                     const LpOptions& options = {});

struct ProResult {
  Eigen::VectorXd x;
  LinearRule rule;
  double worst_case = 0.0;       // of the rule, equal to the first step's
  double nominal_value = 0.0;    // c(z_bar)'x + d'rule(z_bar)
  double nominal_before = 0.0;   // same quantity after the first step
  LdrSolveResult first_step;
};

// Worst-case LDR solve followed by a re-optimisation at z_bar that may not
// lose anything at any vertex. mask defaults to the full rule.
ProResult pro_ldr(const TwoStageProblem& problem, std::optional<Scenario> z_bar = {},
                  std::optional<RuleMask> mask = {}, const LpOptions& options = {});

struct DrParoResult {
  Eigen::VectorXd x;
  LinearRule rule;
  double worst_case = 0.0;
  std::string branch;  // constraintwise, hybrid, block or simplex
  RuleMask mask;
};

// Requires d = 0. Picks the rule structure from detect_structure and is_simplex.
DrParoResult dr_paro(const TwoStageProblem& problem, std::optional<Scenario> z_bar = {},
                     const LpOptions& options = {});

// Scenarios paired with the objective value each must still attain.
struct ValueLedger {
  std::vector<Scenario> scenarios;
  std::vector<double> values;

  void add(const Scenario& z, double v) {
    scenarios.push_back(z);
    values.push_back(v);
  }
  int size() const { return static_cast<int>(values.size()); }
  static ValueLedger at_vertices(const std::vector<Scenario>& vertices, double opt);
};

enum class ImprovementMethod { kMountain, kBilinear };

const char* to_string(ImprovementMethod method);

struct ImprovementOptions {
  ImprovementMethod method = ImprovementMethod::kMountain;
  int samples = 4;  // sampled warm starts in addition to the interior point
  std::uint64_t seed = 1;
  std::vector<Scenario> warm_starts;  // replaces the default starts when set
  double tol = 1e-7;
  int max_iters = 100;
  LpOptions lp;
};

struct ImprovementResult {
  double p = 0.0;
  Scenario z_bar;
  Eigen::VectorXd x_bar;
  Eigen::VectorXd y_bar;
  std::vector<Eigen::VectorXd> ledger_recourse;  // one per ledger entry
  Eigen::VectorXd y_hat;   // adversarial recourse of x_hat at z_bar
  Eigen::VectorXd lambda;  // bilinear method: final dual, <= 0
  ImprovementMethod method = ImprovementMethod::kMountain;
  int iterations = 0;
  bool converged = false;
  bool certified = false;  // both methods are local
  int warm_start = 0;      // index of the start that produced the result
  std::vector<double> start_values;  // best p per warm start
};

// Heuristic for the largest loss of x_hat against another solution that
// keeps every ledger value. p <= 0 always.
ImprovementResult improvement(const TwoStageProblem& problem, const Eigen::VectorXd& x_hat, const ValueLedger& ledger,
                              const ImprovementOptions& options = {});

struct Algorithm1Step {
  double p = 0.0;
  Scenario z;
  Eigen::VectorXd x;  // solution of this improvement call
  double value = 0.0; // c'x + d'y at z
  int ledger_size = 0;
};

struct Algorithm1Result {
  Eigen::VectorXd x;
  double opt = 0.0;
  std::vector<Algorithm1Step> trace;
  bool certified = false;
  bool hit_iteration_cap = false;
};

// Repeated improvement. Starts from x0, or from the vertex solve when absent,
// and stops once p >= -tol, returning the last tested iterate.
Algorithm1Result algorithm1(const TwoStageProblem& problem, std::optional<Eigen::VectorXd> x0 = {},
                            const ImprovementOptions& options = {}, int max_rounds = 100);

struct MaxDifference {
  Scenario z;
  double gap = 0.0;  // value of x_a minus value of x_b at z
  double value_a = 0.0;
  double value_b = 0.0;
};

// Scenario where x_b beats x_a by the most, both under optimal recourse.
MaxDifference max_difference_scenario(const TwoStageProblem& problem, const Eigen::VectorXd& x_a,
                                      const Eigen::VectorXd& x_b, const ImprovementOptions& options = {});

// Same with x_a following a linear rule; the problem is then a single LP.
MaxDifference max_difference_scenario(const TwoStageProblem& problem, const Eigen::VectorXd& x_a,
                                      const LinearRule& rule_a, const Eigen::VectorXd& x_b,
                                      const LpOptions& options = {});

}  // namespace paro

#endif  // PAROFORGE_PARETO_HPP_
