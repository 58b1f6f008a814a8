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

// Bounded-variable tableau simplex. Internal to the lp module.

#ifndef PAROFORGE_SRC_LP_SIMPLEX_HPP_
#define PAROFORGE_SRC_LP_SIMPLEX_HPP_

#include <cstddef>
#include <vector>

#include "paroforge/lp.hpp"

namespace paro::internal {

// Column layout: structural [0, n), slack of row i at n + i, artificials after
// that while phase 1 runs. Artificials that stay basic in redundant rows are
// kept as fixed [0, 0] columns.
class DenseSimplex {
 public:
  DenseSimplex(const LpProblem& problem, const LpOptions& options);

  // Two-phase primal simplex from the slack/artificial basis.
  LpStatus solve();

  // Tightens the bounds of a structural column. Keeps the tableau; call
  // reoptimize() afterwards.
  void set_bounds(int column, double lower, double upper);

  // Dual simplex from a dual-feasible basis, then a primal clean-up pass.
  LpStatus reoptimize();

  LpSolution extract() const;

  double objective_value() const;
  double structural_value(int column) const;
  long pivots() const { return pivots_; }
  std::size_t bytes() const { return tableau_.size() * sizeof(double); }

 private:
  enum class VarState : unsigned char { kBasic, kAtLower, kAtUpper, kFree };

  double* row(int i) { return tableau_.data() + static_cast<std::size_t>(i) * width_; }
  const double* row(int i) const {
    return tableau_.data() + static_cast<std::size_t>(i) * width_;
  }

  void build_initial_basis();
  void set_phase_costs(bool phase_one);
  void recompute_reduced_costs();
  LpStatus primal_loop();
  LpStatus dual_loop();
  void pivot(int r, int j);
  void drive_out_artificials();
  void drop_artificial_columns();
  bool is_fixed(int j) const { return upper_[j] - lower_[j] <= 0.0; }
  double value_of(int j) const;
  double primal_infeasibility() const;
  void refactor();
  long pivot_cap() const;

  LpOptions options_;
  int n_ = 0;          // structural columns
  int m_ = 0;          // rows
  int width_ = 0;      // current tableau width
  int artificial_begin_ = 0;
  std::vector<double> a_;  // original rows, row-major n_ wide, for refactor
  std::vector<double> b_;
  std::vector<double> objective_;

  std::vector<double> tableau_;  // m_ x width_, B^-1 [A I Art]
  std::vector<double> beta_;     // basic values
  std::vector<double> reduced_;  // reduced costs, width_
  std::vector<double> cost_;     // current phase costs, width_
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<double> value_;    // nonbasic values
  std::vector<VarState> state_;
  std::vector<int> basis_;       // basis_[i] = column basic in row i
  std::vector<int> art_row_;     // for artificial columns: their row
  long pivots_ = 0;
  bool phase_one_ = false;
  bool dual_feasible_ = false;
};

}  // namespace paro::internal

#endif  // PAROFORGE_SRC_LP_SIMPLEX_HPP_
