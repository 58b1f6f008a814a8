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

// Two-stage adaptive robust linear problems with affine parameter dependence:
//
//   min_{x, y(.)} max_{z in U}  c(z)'x + d'y(z)
//   s.t.  A(z) x + B y(z) <= r(z)   for all z in U,
//
// with c(z) = c0 + C z, A(z) = A0 + sum_l z_l A[l], r(z) = r0 + R z and
// U = {z : H z <= h}. Stage-1 entries flagged in `integrality` are binary.

#ifndef PAROFORGE_MODEL_HPP_
#define PAROFORGE_MODEL_HPP_

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

namespace paro {

using Scenario = Eigen::VectorXd;

struct UncertaintySet {
  Eigen::MatrixXd H;
  Eigen::VectorXd h;
  std::optional<std::vector<Scenario>> vertices;
  std::optional<Scenario> nominal;

  int dim() const { return static_cast<int>(H.cols()); }
  int num_rows() const { return static_cast<int>(H.rows()); }
  bool contains(const Scenario& z, double tol = 1e-7) const;
};

// Box [lo, hi] in R^L as an H-representation.
UncertaintySet make_box(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi);

struct TwoStageProblem {
  int n_x = 0;
  int n_y = 0;
  int m = 0;
  int L = 0;
  Eigen::VectorXd c0;
  Eigen::MatrixXd C;  // n_x x L
  Eigen::VectorXd d;
  Eigen::MatrixXd A0;             // m x n_x
  std::vector<Eigen::MatrixXd> A;  // L matrices, m x n_x
  Eigen::MatrixXd B;              // m x n_y
  Eigen::VectorXd r0;
  Eigen::MatrixXd R;  // m x L
  std::vector<bool> integrality;
  UncertaintySet uncertainty;

  // Zero-initialised problem of the given shape, box-free uncertainty.
  static TwoStageProblem zeros(int n_x, int n_y, int m, int L);

  Eigen::VectorXd c_at(const Scenario& z) const;
  Eigen::MatrixXd A_at(const Scenario& z) const;
  Eigen::VectorXd r_at(const Scenario& z) const;
  // True when only r depends on z.
  bool rhs_only() const;
  bool has_integers() const;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate(const TwoStageProblem& problem);

struct Evaluation {
  double objective = 0.0;
  Eigen::VectorXd slack;  // r(z) - A(z) x - B y
  bool feasible(double tol = 1e-7) const;
};

Evaluation evaluate(const TwoStageProblem& problem, const Eigen::VectorXd& x,
                    const Eigen::VectorXd& y, const Scenario& z);

enum class StructureKind { kConstraintwise, kHybrid, kBlock, kSimplex, kGeneral };

const char* to_string(StructureKind kind);

struct StructureBlock {
  std::vector<int> rows;  // -1 denotes the objective
  std::vector<int> params;
  std::vector<int> stage2;
};

struct StructureReport {
  StructureKind kind = StructureKind::kGeneral;
  std::vector<StructureKind> applicable;  // most specific first
  std::vector<int> shared_params;         // parameters in two or more rows
  // private_params[i + 1] lists parameters occurring only in row i; entry 0
  // belongs to the objective.
  std::vector<std::vector<int>> private_params;
  std::vector<int> unused_params;
  std::vector<StructureBlock> blocks;
  bool factorizes = false;
  std::vector<std::string> notes;
};

StructureReport detect_structure(const TwoStageProblem& problem);

// Single-variable, parameter-free rows turned into plain variable bounds.
struct ExplicitBounds {
  Eigen::VectorXd x_lower, x_upper;
  Eigen::VectorXd y_lower, y_upper;
  std::vector<bool> is_bound_row;
};

ExplicitBounds explicit_bounds(const TwoStageProblem& problem);

}  // namespace paro

#endif  // PAROFORGE_MODEL_HPP_
