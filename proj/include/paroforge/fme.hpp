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

// Fourier-Motzkin elimination of Stage-2 variables.
//
// Every derived row is a nonnegative combination of the original rows; the
// multipliers are carried along so that each eliminated variable keeps a
// ledger of its lower and upper bounds in terms of the original slacks
//   phi_p(x, z) = r_p(z) - a_p(z)'x
// and of the variables eliminated after it.

#ifndef PAROFORGE_FME_HPP_
#define PAROFORGE_FME_HPP_

#include <map>
#include <optional>
#include <vector>

#include "paroforge/model.hpp"

namespace paro {

inline constexpr long kMaxFmeRows = 200000;

enum class BoundKind { kLower, kUpper };

// y_k  >=  (lower) or  <=  (upper)
//   sum_p alpha[p] * phi_p(x, z) + sum_l beta[l] * y_l.
// alpha is negative on lower bounds and positive on upper bounds.
struct BoundRecord {
  BoundKind kind = BoundKind::kLower;
  std::map<int, double> alpha;
  std::map<int, double> beta;

  double value(const Eigen::VectorXd& phi, const Eigen::VectorXd& y) const;
};

struct EliminationResult {
  std::vector<int> order;                        // eliminated Stage-2 indices
  std::vector<std::vector<BoundRecord>> ledger;  // parallel to order

  // Remaining system  G(z) x + Y y <= f(z),  G(z) = G0 + sum_l z_l G[l],
  // f(z) = f0 + F z. Y is zero unless the elimination was partial.
  Eigen::MatrixXd G0;
  std::vector<Eigen::MatrixXd> G;
  Eigen::MatrixXd Y;
  Eigen::VectorXd f0;
  Eigen::MatrixXd F;
  std::vector<std::map<int, double>> multipliers;  // per remaining row

  int rows_before = 0;
  int rows_after = 0;

  int num_rows() const { return static_cast<int>(f0.size()); }
  bool complete(int n_y) const { return static_cast<int>(order.size()) == n_y; }
  Eigen::MatrixXd G_at(const Scenario& z) const;
  Eigen::VectorXd f_at(const Scenario& z) const;
};

// Eliminates `count` Stage-2 variables in `order` (default 0, 1, ...).
// Throws kGuardExceeded once more than 200000 rows would be produced.
EliminationResult eliminate(const TwoStageProblem& problem, int count,
                            const std::vector<int>& order = {});

enum class RedundancyLevel { kNone, kSyntactic, kLp };

struct FilterOptions {
  // Bounding box for x in the lp level. When absent it is read off the
  // single-variable, parameter-free rows of the system; coordinates without
  // such rows stay free.
  std::optional<std::pair<Eigen::VectorXd, Eigen::VectorXd>> x_box;
  double tol = 1e-9;
};

// kLp requires a complete elimination.
EliminationResult filter_redundant(const TwoStageProblem& problem, const EliminationResult& result,
                                   RedundancyLevel level, const FilterOptions& options = {});

enum class RecoursePolicy { kLower, kUpper, kMidpoint, kObjectiveGreedy };

const char* to_string(RecoursePolicy policy);

struct Interval {
  double lower = 0.0;
  double upper = 0.0;
};

// Back-substitution: assigns the eliminated variables in reverse order.
// `intervals`, when given, receives the interval seen by each variable.
// Throws kInfeasible if x violates the static system at z and
// kEmptyInterval if an interval is empty.
Eigen::VectorXd reconstruct_recourse(const TwoStageProblem& problem, const EliminationResult& result,
                                     const Eigen::VectorXd& x, const Scenario& z, RecoursePolicy policy,
                                     std::vector<Interval>* intervals = nullptr, double tol = 1e-7);

}  // namespace paro

#endif  // PAROFORGE_FME_HPP_
