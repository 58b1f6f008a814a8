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

#include "simplex.hpp"

#include <algorithm>
#include <cmath>

namespace paro::internal {
namespace {

constexpr double kTiny = 1e-14;
constexpr double kDegenerateStep = 1e-12;
constexpr int kMaxRefreshes = 20;
// Width of the Harris tolerance band; tighter than the solver tolerances so
// returned points stay close to their rows.
constexpr double kHarrisBand = 1e-9;

}  // namespace

DenseSimplex::DenseSimplex(const LpProblem& problem, const LpOptions& options)
    : options_(options), n_(problem.num_vars()), m_(problem.num_rows()) {
  a_.resize(static_cast<std::size_t>(m_) * n_);
  for (int i = 0; i < m_; ++i)
    for (int j = 0; j < n_; ++j) a_[static_cast<std::size_t>(i) * n_ + j] = problem.A(i, j);
  b_.assign(problem.b.data(), problem.b.data() + m_);
  objective_.assign(problem.objective.data(), problem.objective.data() + n_);
  lower_.assign(n_ + m_, 0.0);
  upper_.assign(n_ + m_, kInf);
  for (int j = 0; j < n_; ++j) {
    lower_[j] = problem.lower(j);
    upper_[j] = problem.upper(j);
  }
}

long DenseSimplex::pivot_cap() const {
  if (options_.max_pivots > 0) return options_.max_pivots;
  const long size = static_cast<long>(m_) + n_;
  return 10 * size * size + 1000;
}

void DenseSimplex::build_initial_basis() {
  value_.assign(n_ + m_, 0.0);
  state_.assign(n_ + m_, VarState::kAtLower);
  for (int j = 0; j < n_; ++j) {
    if (std::isfinite(lower_[j])) {
      value_[j] = lower_[j];
      state_[j] = VarState::kAtLower;
    } else if (std::isfinite(upper_[j])) {
      value_[j] = upper_[j];
      state_[j] = VarState::kAtUpper;
    } else {
      value_[j] = 0.0;
      state_[j] = VarState::kFree;
    }
  }
  std::vector<double> residual(m_);
  int artificials = 0;
  for (int i = 0; i < m_; ++i) {
    double lhs = 0.0;
    const double* ai = a_.data() + static_cast<std::size_t>(i) * n_;
    for (int j = 0; j < n_; ++j)
      if (ai[j] != 0.0) lhs += ai[j] * value_[j];
    residual[i] = b_[i] - lhs;
    if (residual[i] < -options_.feasibility_tol) ++artificials;
  }

  artificial_begin_ = n_ + m_;
  width_ = n_ + m_ + artificials;
  lower_.resize(width_, 0.0);
  upper_.resize(width_, kInf);
  value_.resize(width_, 0.0);
  state_.resize(width_, VarState::kAtLower);
  art_row_.assign(artificials, -1);
  tableau_.assign(static_cast<std::size_t>(m_) * width_, 0.0);
  beta_.assign(m_, 0.0);
  basis_.assign(m_, -1);

  int next_art = 0;
  for (int i = 0; i < m_; ++i) {
    double* ti = row(i);
    const double* ai = a_.data() + static_cast<std::size_t>(i) * n_;
    if (residual[i] >= -options_.feasibility_tol) {
      std::copy(ai, ai + n_, ti);
      ti[n_ + i] = 1.0;
      basis_[i] = n_ + i;
      state_[n_ + i] = VarState::kBasic;
      beta_[i] = residual[i];
    } else {
      const int k = artificial_begin_ + next_art;
      art_row_[next_art++] = i;
      for (int j = 0; j < n_; ++j) ti[j] = -ai[j];
      ti[n_ + i] = -1.0;
      ti[k] = 1.0;
      basis_[i] = k;
      state_[k] = VarState::kBasic;
      beta_[i] = -residual[i];
    }
  }
  phase_one_ = artificials > 0;
}

void DenseSimplex::set_phase_costs(bool phase_one) {
  cost_.assign(width_, 0.0);
  if (phase_one) {
    for (int j = artificial_begin_; j < width_; ++j) cost_[j] = 1.0;
  } else {
    for (int j = 0; j < n_; ++j) cost_[j] = objective_[j];
  }
  recompute_reduced_costs();
}

void DenseSimplex::recompute_reduced_costs() {
  reduced_ = cost_;
  for (int i = 0; i < m_; ++i) {
    const double cb = cost_[basis_[i]];
    if (cb == 0.0) continue;
    const double* ti = row(i);
    for (int j = 0; j < width_; ++j)
      if (ti[j] != 0.0) reduced_[j] -= cb * ti[j];
  }
  for (int i = 0; i < m_; ++i) reduced_[basis_[i]] = 0.0;
}

void DenseSimplex::pivot(int r, int j) {
  double* pr = row(r);
  const double inv = 1.0 / pr[j];
  thread_local std::vector<int> nz;
  nz.clear();
  for (int k = 0; k < width_; ++k) {
    if (pr[k] == 0.0) continue;
    pr[k] *= inv;
    if (std::abs(pr[k]) < kTiny) {
      pr[k] = 0.0;
    } else {
      nz.push_back(k);
    }
  }
  pr[j] = 1.0;
  if (std::find(nz.begin(), nz.end(), j) == nz.end()) nz.push_back(j);

  for (int i = 0; i < m_; ++i) {
    if (i == r) continue;
    double* pi = row(i);
    const double f = pi[j];
    if (f == 0.0) continue;
    for (int k : nz) {
      const double v = pi[k] - f * pr[k];
      pi[k] = std::abs(v) < kTiny ? 0.0 : v;
    }
    pi[j] = 0.0;
  }
  const double f = reduced_[j];
  if (f != 0.0) {
    for (int k : nz) reduced_[k] -= f * pr[k];
  }
  reduced_[j] = 0.0;
  basis_[r] = j;
}

LpStatus DenseSimplex::primal_loop() {
  const long cap = pivot_cap();
  int degenerate_run = 0;
  bool bland = false;
  for (int refresh = 0;; ) {
    if (pivots_ >= cap) return LpStatus::kIterationLimit;

    int enter = -1;
    int dir = 0;
    double best = 0.0;
    for (int j = 0; j < width_; ++j) {
      const VarState s = state_[j];
      if (s == VarState::kBasic || is_fixed(j)) continue;
      if (!phase_one_ && j >= artificial_begin_) continue;
      const double dj = reduced_[j];
      int jdir = 0;
      if (s == VarState::kAtLower) {
        if (dj < -options_.optimality_tol) jdir = 1;
      } else if (s == VarState::kAtUpper) {
        if (dj > options_.optimality_tol) jdir = -1;
      } else {
        if (dj < -options_.optimality_tol) jdir = 1;
        else if (dj > options_.optimality_tol) jdir = -1;
      }
      if (jdir == 0) continue;
      if (bland) {
        enter = j;
        dir = jdir;
        break;
      }
      if (std::abs(dj) > best) {
        best = std::abs(dj);
        enter = j;
        dir = jdir;
      }
    }

    if (enter < 0) {
      // Confirm against freshly computed reduced costs before declaring
      // optimality; incremental updates drift on long runs.
      if (refresh++ >= kMaxRefreshes) return LpStatus::kOptimal;
      std::vector<double> before = reduced_;
      recompute_reduced_costs();
      bool changed = false;
      for (int j = 0; j < width_ && !changed; ++j)
        changed = std::abs(before[j] - reduced_[j]) > options_.optimality_tol;
      if (!changed) return LpStatus::kOptimal;
      continue;
    }

    double range = kInf;
    if (std::isfinite(lower_[enter]) && std::isfinite(upper_[enter])) range = upper_[enter] - lower_[enter];
    // Ratio test. Harris' two passes: find the largest step that keeps every
    // basic variable within its bound plus the feasibility tolerance, then
    // take the largest pivot element among the rows blocking before it.
    // Under Bland's rule the smallest basic index wins ties instead.
    auto limit_of = [&](int i, double alpha, double slack_tol, bool& up) {
      const double move = dir * alpha;
      const int bcol = basis_[i];
      if (move > 0.0) {
        up = false;
        return std::isfinite(lower_[bcol]) ? (beta_[i] - lower_[bcol] + slack_tol) / move : kInf;
      }
      up = true;
      return std::isfinite(upper_[bcol]) ? (upper_[bcol] - beta_[i] + slack_tol) / (-move) : kInf;
    };
    double theta = range;
    int leave = -1;
    bool to_upper = false;
    if (bland) {
      for (int i = 0; i < m_; ++i) {
        const double alpha = row(i)[enter];
        if (std::abs(alpha) <= options_.pivot_tol) continue;
        bool up;
        const double limit = std::max(0.0, limit_of(i, alpha, 0.0, up));
        if (!std::isfinite(limit)) continue;
        bool take = false;
        if (limit < theta - kDegenerateStep) {
          take = true;
        } else if (leave >= 0 && limit <= theta + kDegenerateStep) {
          take = basis_[i] < basis_[leave];
        }
        if (take) {
          theta = std::min(theta, limit);
          leave = i;
          to_upper = up;
        }
      }
    } else {
      double bound = kInf;
      double exact_min = kInf;
      for (int i = 0; i < m_; ++i) {
        const double alpha = row(i)[enter];
        if (std::abs(alpha) <= options_.pivot_tol) continue;
        bool up;
        bound = std::min(bound, limit_of(i, alpha, kHarrisBand, up));
        exact_min = std::min(exact_min, std::max(0.0, limit_of(i, alpha, 0.0, up)));
      }
      // A basic variable already past its bound by more than the band would
      // make the bound negative and leave no row to pick.
      bound = std::max(bound, 0.0);
      if (range <= exact_min) {
        theta = range;
      } else {
        double best_alpha = 0.0;
        for (int i = 0; i < m_; ++i) {
          const double alpha = row(i)[enter];
          if (std::abs(alpha) <= options_.pivot_tol) continue;
          bool up;
          const double limit = std::max(0.0, limit_of(i, alpha, 0.0, up));
          if (limit > bound || std::abs(alpha) <= std::abs(best_alpha)) continue;
          best_alpha = alpha;
          leave = i;
          to_upper = up;
          theta = limit;
        }
      }
    }
    if (!std::isfinite(theta)) return LpStatus::kUnbounded;

    if (theta <= kDegenerateStep) {
      if (++degenerate_run > m_) bland = true;
    } else {
      degenerate_run = 0;
      bland = false;
    }

    const double step = dir * theta;
    if (step != 0.0) {
      for (int i = 0; i < m_; ++i) {
        const double alpha = row(i)[enter];
        if (alpha != 0.0) beta_[i] -= alpha * step;
      }
    }
    if (leave < 0) {
      value_[enter] = dir > 0 ? upper_[enter] : lower_[enter];
      state_[enter] = dir > 0 ? VarState::kAtUpper : VarState::kAtLower;
    } else {
      const double enter_value = value_[enter] + step;
      const int out = basis_[leave];
      value_[out] = to_upper ? upper_[out] : lower_[out];
      state_[out] = to_upper ? VarState::kAtUpper : VarState::kAtLower;
      pivot(leave, enter);
      beta_[leave] = enter_value;
      state_[enter] = VarState::kBasic;
    }
    ++pivots_;
  }
}

LpStatus DenseSimplex::dual_loop() {
  const long cap = pivot_cap();
  while (true) {
    if (pivots_ >= cap) return LpStatus::kIterationLimit;
    // Dual steepest edge: the slack block of the tableau is the basis
    // inverse, so the norm of each candidate row is at hand.
    int r = -1;
    double best_score = 0.0;
    bool below = false;
    const double tol = options_.feasibility_tol;
    for (int i = 0; i < m_; ++i) {
      const int bcol = basis_[i];
      double infeasibility;
      bool low;
      if (beta_[i] < lower_[bcol] - tol) {
        infeasibility = lower_[bcol] - beta_[i];
        low = true;
      } else if (beta_[i] > upper_[bcol] + tol) {
        infeasibility = beta_[i] - upper_[bcol];
        low = false;
      } else {
        continue;
      }
      const double* ri = row(i) + n_;
      double weight = 0.0;
      for (int k = 0; k < m_; ++k) weight += ri[k] * ri[k];
      const double score = infeasibility * infeasibility / std::max(weight, 1e-12);
      if (score > best_score) {
        best_score = score;
        r = i;
        below = low;
      }
    }
    if (r < 0) return LpStatus::kOptimal;

    const double* pr = row(r);
    auto eligible = [&](int j) {
      const VarState s = state_[j];
      if (s == VarState::kBasic || is_fixed(j) || j >= artificial_begin_) return false;
      const double alpha = pr[j];
      if (std::abs(alpha) <= options_.pivot_tol) return false;
      if (s == VarState::kFree) return true;
      if (below) return (s == VarState::kAtLower) ? alpha < 0.0 : alpha > 0.0;
      return (s == VarState::kAtLower) ? alpha > 0.0 : alpha < 0.0;
    };
    // Harris' two passes on the dual side: bound the step with the
    // optimality tolerance, then prefer the largest pivot element.
    double bound = kInf;
    for (int j = 0; j < width_; ++j)
      if (eligible(j)) bound = std::min(bound, (std::abs(reduced_[j]) + kHarrisBand) / std::abs(pr[j]));
    int enter = -1;
    double best_alpha = 0.0;
    for (int j = 0; j < width_; ++j) {
      if (!eligible(j)) continue;
      const double alpha = pr[j];
      if (std::abs(reduced_[j]) / std::abs(alpha) > bound) continue;
      if (std::abs(alpha) > std::abs(best_alpha)) {
        best_alpha = alpha;
        enter = j;
      }
    }
    if (enter < 0) return LpStatus::kInfeasible;

    const int out = basis_[r];
    const double target = below ? lower_[out] : upper_[out];
    const double delta = (beta_[r] - target) / pr[enter];
    for (int i = 0; i < m_; ++i) {
      const double alpha = row(i)[enter];
      if (alpha != 0.0) beta_[i] -= alpha * delta;
    }
    const double enter_value = value_[enter] + delta;
    value_[out] = target;
    state_[out] = below ? VarState::kAtLower : VarState::kAtUpper;
    pivot(r, enter);
    beta_[r] = enter_value;
    state_[enter] = VarState::kBasic;
    ++pivots_;
  }
}

void DenseSimplex::drive_out_artificials() {
  for (int i = 0; i < m_; ++i) {
    const int bcol = basis_[i];
    if (bcol < artificial_begin_) continue;
    const double* ti = row(i);
    int enter = -1;
    double best = 1e-7;
    for (int j = 0; j < artificial_begin_; ++j) {
      if (state_[j] == VarState::kBasic) continue;
      if (std::abs(ti[j]) > best) {
        best = std::abs(ti[j]);
        enter = j;
      }
    }
    if (enter < 0) {
      // Redundant row: the artificial stays basic, pinned at zero.
      lower_[bcol] = 0.0;
      upper_[bcol] = 0.0;
      continue;
    }
    const double delta = beta_[i] / ti[enter];
    for (int k = 0; k < m_; ++k) {
      const double alpha = row(k)[enter];
      if (alpha != 0.0) beta_[k] -= alpha * delta;
    }
    const double enter_value = value_[enter] + delta;
    value_[bcol] = 0.0;
    state_[bcol] = VarState::kAtLower;
    pivot(i, enter);
    beta_[i] = enter_value;
    state_[enter] = VarState::kBasic;
    ++pivots_;
  }
}

void DenseSimplex::drop_artificial_columns() {
  std::vector<int> keep;
  keep.reserve(width_);
  for (int j = 0; j < artificial_begin_; ++j) keep.push_back(j);
  std::vector<int> kept_rows;
  for (int j = artificial_begin_; j < width_; ++j) {
    if (state_[j] == VarState::kBasic) {
      keep.push_back(j);
      kept_rows.push_back(art_row_[j - artificial_begin_]);
    }
  }
  const int new_width = static_cast<int>(keep.size());
  if (new_width == width_) return;
  std::vector<int> remap(width_, -1);
  for (int k = 0; k < new_width; ++k) remap[keep[k]] = k;

  std::vector<double> t(static_cast<std::size_t>(m_) * new_width);
  for (int i = 0; i < m_; ++i) {
    const double* src = row(i);
    double* dst = t.data() + static_cast<std::size_t>(i) * new_width;
    for (int k = 0; k < new_width; ++k) dst[k] = src[keep[k]];
  }
  auto compact = [&](auto& v) {
    std::decay_t<decltype(v)> out(new_width);
    for (int k = 0; k < new_width; ++k) out[k] = v[keep[k]];
    v = std::move(out);
  };
  compact(lower_);
  compact(upper_);
  compact(value_);
  compact(state_);
  compact(cost_);
  compact(reduced_);
  for (int& bcol : basis_) bcol = remap[bcol];
  tableau_ = std::move(t);
  width_ = new_width;
  art_row_ = kept_rows;
}

double DenseSimplex::value_of(int j) const {
  if (state_[j] != VarState::kBasic) return value_[j];
  for (int i = 0; i < m_; ++i)
    if (basis_[i] == j) return beta_[i];
  return 0.0;
}

double DenseSimplex::structural_value(int column) const { return value_of(column); }

double DenseSimplex::primal_infeasibility() const {
  std::vector<double> x(n_);
  for (int j = 0; j < n_; ++j) x[j] = state_[j] == VarState::kBasic ? 0.0 : value_[j];
  for (int i = 0; i < m_; ++i)
    if (basis_[i] < n_) x[basis_[i]] = beta_[i];
  double worst = 0.0;
  for (int j = 0; j < n_; ++j) {
    worst = std::max(worst, lower_[j] - x[j]);
    worst = std::max(worst, x[j] - upper_[j]);
  }
  for (int i = 0; i < m_; ++i) {
    double lhs = 0.0;
    const double* ai = a_.data() + static_cast<std::size_t>(i) * n_;
    for (int j = 0; j < n_; ++j)
      if (ai[j] != 0.0) lhs += ai[j] * x[j];
    worst = std::max(worst, (lhs - b_[i]) / (1.0 + std::abs(b_[i])));
  }
  return worst;
}

void DenseSimplex::refactor() {
  Eigen::MatrixXd basis_matrix = Eigen::MatrixXd::Zero(m_, m_);
  Eigen::MatrixXd full = Eigen::MatrixXd::Zero(m_, width_);
  for (int i = 0; i < m_; ++i) {
    for (int j = 0; j < n_; ++j) full(i, j) = a_[static_cast<std::size_t>(i) * n_ + j];
    full(i, n_ + i) = 1.0;
  }
  for (int j = artificial_begin_; j < width_; ++j) full(art_row_[j - artificial_begin_], j) = -1.0;
  for (int i = 0; i < m_; ++i) basis_matrix.col(i) = full.col(basis_[i]);
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(basis_matrix);
  if (!(std::abs(lu.determinant()) > 1e-300)) return;

  Eigen::VectorXd rhs(m_);
  for (int i = 0; i < m_; ++i) rhs(i) = b_[i];
  for (int j = 0; j < width_; ++j) {
    if (state_[j] == VarState::kBasic || value_[j] == 0.0) continue;
    rhs -= full.col(j) * value_[j];
  }
  const Eigen::MatrixXd t = lu.solve(full);
  const Eigen::VectorXd beta = lu.solve(rhs);
  for (int i = 0; i < m_; ++i) {
    double* ti = row(i);
    for (int j = 0; j < width_; ++j) ti[j] = std::abs(t(i, j)) < kTiny ? 0.0 : t(i, j);
    beta_[i] = beta(i);
  }
  recompute_reduced_costs();
}

LpStatus DenseSimplex::solve() {
  build_initial_basis();
  if (phase_one_) {
    set_phase_costs(true);
    const LpStatus status = primal_loop();
    if (status == LpStatus::kIterationLimit) return status;
    double infeasibility = 0.0;
    double scale = 1.0;
    for (double v : b_) scale = std::max(scale, std::abs(v));
    for (int i = 0; i < m_; ++i)
      if (basis_[i] >= artificial_begin_) infeasibility += std::max(0.0, beta_[i]);
    if (infeasibility > options_.feasibility_tol * scale) return LpStatus::kInfeasible;
    drive_out_artificials();
    drop_artificial_columns();
    phase_one_ = false;
  }
  set_phase_costs(false);
  LpStatus status = primal_loop();
  if (status == LpStatus::kOptimal && primal_infeasibility() > options_.feasibility_tol) {
    refactor();
    status = dual_loop();
    if (status == LpStatus::kOptimal) status = primal_loop();
  }
  dual_feasible_ = status == LpStatus::kOptimal;
  return status;
}

void DenseSimplex::set_bounds(int column, double lower, double upper) {
  lower_[column] = lower;
  upper_[column] = upper;
  if (state_[column] == VarState::kBasic) return;
  const double old = value_[column];
  double next;
  if (state_[column] == VarState::kAtUpper && std::isfinite(upper)) {
    next = upper;
  } else if (std::isfinite(lower)) {
    next = lower;
    state_[column] = VarState::kAtLower;
  } else if (std::isfinite(upper)) {
    next = upper;
    state_[column] = VarState::kAtUpper;
  } else {
    next = 0.0;
    state_[column] = VarState::kFree;
  }
  value_[column] = next;
  const double delta = next - old;
  if (delta == 0.0) return;
  for (int i = 0; i < m_; ++i) {
    const double alpha = row(i)[column];
    if (alpha != 0.0) beta_[i] -= alpha * delta;
  }
}

LpStatus DenseSimplex::reoptimize() {
  LpStatus status = dual_loop();
  if (status != LpStatus::kOptimal) return status;
  status = primal_loop();
  if (status == LpStatus::kOptimal && primal_infeasibility() > options_.feasibility_tol) {
    refactor();
    status = dual_loop();
    if (status == LpStatus::kOptimal) status = primal_loop();
  }
  return status;
}

double DenseSimplex::objective_value() const {
  double obj = 0.0;
  for (int j = 0; j < n_; ++j)
    if (objective_[j] != 0.0) obj += objective_[j] * value_of(j);
  return obj;
}

LpSolution DenseSimplex::extract() const {
  LpSolution sol;
  sol.status = LpStatus::kOptimal;
  sol.x = Eigen::VectorXd::Zero(n_);
  for (int j = 0; j < n_; ++j)
    if (state_[j] != VarState::kBasic) sol.x(j) = value_[j];
  for (int i = 0; i < m_; ++i)
    if (basis_[i] < n_) sol.x(basis_[i]) = beta_[i];
  sol.objective = 0.0;
  for (int j = 0; j < n_; ++j) sol.objective += objective_[j] * sol.x(j);
  sol.duals = Eigen::VectorXd::Zero(m_);
  for (int i = 0; i < m_; ++i) sol.duals(i) = -reduced_[n_ + i];
  sol.reduced_costs = Eigen::VectorXd::Zero(n_);
  for (int j = 0; j < n_; ++j) sol.reduced_costs(j) = reduced_[j];
  for (int i = 0; i < m_; ++i) {
    const int bcol = basis_[i];
    sol.basis.push_back(bcol < artificial_begin_ ? bcol : n_ + m_ + art_row_[bcol - artificial_begin_]);
  }
  std::sort(sol.basis.begin(), sol.basis.end());
  sol.pivots = pivots_;
  return sol;
}

}  // namespace paro::internal
