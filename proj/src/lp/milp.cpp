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

#include <algorithm>
#include <cmath>
#include <memory>
#include <queue>
#include <string>

#include "paroforge/error.hpp"
#include "paroforge/lp.hpp"
#include "simplex.hpp"

namespace paro {
namespace {

void check_shapes(const LpProblem& p) {
  const int n = p.num_vars();
  const int m = p.num_rows();
  if (p.A.rows() != m || p.A.cols() != n || p.lower.size() != n || p.upper.size() != n ||
      (!p.binary.empty() && static_cast<int>(p.binary.size()) != n)) {
    throw Error(ErrorKind::kDimensionMismatch,
                "lp: inconsistent shapes (n=" + std::to_string(n) + ", m=" + std::to_string(m) + ")");
  }
  if (!p.A.allFinite() || !p.b.allFinite() || !p.objective.allFinite())
    throw Error(ErrorKind::kInvalidArgument, "lp: non-finite coefficient");
}

bool bounds_consistent(const LpProblem& p) {
  for (int j = 0; j < p.num_vars(); ++j)
    if (p.lower(j) > p.upper(j)) return false;
  return true;
}

LpSolution failed(LpStatus status) {
  LpSolution sol;
  sol.status = status;
  return sol;
}

struct Node {
  std::vector<std::pair<int, double>> fixes;
  double bound = -kInf;
  long order = 0;
  std::shared_ptr<const internal::DenseSimplex> snapshot;
};

struct WorseBound {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.order > b.order;
  }
};

// Most fractional binary column, or -1 when all are integral.
int branching_column(const LpProblem& p, const internal::DenseSimplex& s, double tol) {
  int best = -1;
  double best_frac = tol;
  for (int j = 0; j < p.num_vars(); ++j) {
    if (!p.binary[j]) continue;
    const double v = s.structural_value(j);
    const double frac = std::min(v - std::floor(v), std::ceil(v) - v);
    if (frac > best_frac + 1e-12) {
      best_frac = frac;
      best = j;
    }
  }
  return best;
}

}  // namespace

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
    case LpStatus::kIterationLimit: return "iteration_limit";
  }
  return "unknown";
}

bool LpProblem::has_binaries() const {
  return std::any_of(binary.begin(), binary.end(), [](bool b) { return b; });
}

LpSolution solve_lp(const LpProblem& problem, const LpOptions& options) {
  check_shapes(problem);
  if (!bounds_consistent(problem)) return failed(LpStatus::kInfeasible);
  internal::DenseSimplex simplex(problem, options);
  const LpStatus status = simplex.solve();
  if (status != LpStatus::kOptimal) {
    LpSolution sol = failed(status);
    sol.pivots = simplex.pivots();
    return sol;
  }
  return simplex.extract();
}

LpSolution solve_milp(const LpProblem& problem, const LpOptions& options) {
  check_shapes(problem);
  if (!problem.has_binaries()) return solve_lp(problem, options);

  LpProblem base = problem;
  for (int j = 0; j < base.num_vars(); ++j) {
    if (!base.binary[j]) continue;
    base.lower(j) = std::max(base.lower(j), 0.0);
    base.upper(j) = std::min(base.upper(j), 1.0);
    if (base.lower(j) > 0.0) base.lower(j) = 1.0;
    if (base.upper(j) < 1.0) base.upper(j) = 0.0;
  }
  if (!bounds_consistent(base)) return failed(LpStatus::kInfeasible);

  long nodes = 0;
  long pivots = 0;
  long order = 0;
  double incumbent = kInf;
  LpSolution best;
  best.status = LpStatus::kInfeasible;
  std::size_t snapshot_bytes = 0;
  std::priority_queue<Node, std::vector<Node>, WorseBound> open;

  auto prune_limit = [&]() { return incumbent - 1e-9 * (1.0 + std::abs(incumbent)); };

  // Solves one node; returns nullptr when the node is closed.
  auto evaluate = [&](const Node& node) -> std::unique_ptr<internal::DenseSimplex> {
    std::unique_ptr<internal::DenseSimplex> s;
    LpStatus status;
    if (node.snapshot) {
      s = std::make_unique<internal::DenseSimplex>(*node.snapshot);
      const auto& [col, value] = node.fixes.back();
      s->set_bounds(col, value, value);
      status = s->reoptimize();
    } else {
      LpProblem fixed = base;
      for (const auto& [col, value] : node.fixes) {
        fixed.lower(col) = value;
        fixed.upper(col) = value;
      }
      s = std::make_unique<internal::DenseSimplex>(fixed, options);
      status = s->solve();
    }
    ++nodes;
    pivots += s->pivots();
    if (status == LpStatus::kUnbounded && nodes == 1)
      throw Error(ErrorKind::kUnbounded, "milp: relaxation unbounded");
    if (status == LpStatus::kIterationLimit)
      throw Error(ErrorKind::kIterationLimit, "milp: pivot cap reached in a node");
    if (status != LpStatus::kOptimal) return nullptr;
    if (s->objective_value() >= prune_limit()) return nullptr;
    return s;
  };

  Node root;
  open.push(root);
  try {
    while (!open.empty()) {
      Node node = open.top();
      open.pop();
      if (node.snapshot) snapshot_bytes -= node.snapshot->bytes();
      if (node.bound >= prune_limit()) continue;
      auto current = evaluate(node);
      node.snapshot.reset();
      // Depth-first dive from this node; siblings wait in the best-bound heap.
      while (current) {
        if (nodes >= options.max_nodes) {
          best.status = LpStatus::kIterationLimit;
          best.nodes = nodes;
          best.pivots = pivots;
          return best;
        }
        const int col = branching_column(base, *current, options.integrality_tol);
        const double obj = current->objective_value();
        if (col < 0) {
          incumbent = obj;
          best = current->extract();
          break;
        }
        const double v = current->structural_value(col);
        const double first = v >= 0.5 ? 1.0 : 0.0;
        Node sibling;
        sibling.fixes = node.fixes;
        sibling.fixes.emplace_back(col, 1.0 - first);
        sibling.bound = obj;
        sibling.order = ++order;
        if (snapshot_bytes + current->bytes() <= options.snapshot_budget_bytes) {
          sibling.snapshot = std::make_shared<const internal::DenseSimplex>(*current);
          snapshot_bytes += current->bytes();
        }
        open.push(std::move(sibling));

        node.fixes.emplace_back(col, first);
        current->set_bounds(col, first, first);
        const LpStatus status = current->reoptimize();
        ++nodes;
        if (status == LpStatus::kIterationLimit)
          throw Error(ErrorKind::kIterationLimit, "milp: pivot cap reached in a node");
        if (status != LpStatus::kOptimal || current->objective_value() >= prune_limit()) break;
      }
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kUnbounded) return failed(LpStatus::kUnbounded);
    if (e.kind() == ErrorKind::kIterationLimit) return failed(LpStatus::kIterationLimit);
    throw;
  }

  if (!std::isfinite(incumbent)) {
    LpSolution sol = failed(LpStatus::kInfeasible);
    sol.nodes = nodes;
    return sol;
  }
  for (int j = 0; j < base.num_vars(); ++j)
    if (base.binary[j]) best.x(j) = std::round(best.x(j));
  best.objective = base.objective.dot(best.x);
  best.status = LpStatus::kOptimal;
  best.nodes = nodes;
  best.pivots = pivots;
  return best;
}

double primal_residual(const LpProblem& problem, const Eigen::VectorXd& x) {
  double worst = 0.0;
  if (problem.num_rows() > 0)
    worst = std::max(worst, (problem.A * x - problem.b).maxCoeff());
  for (int j = 0; j < problem.num_vars(); ++j) {
    worst = std::max(worst, problem.lower(j) - x(j));
    worst = std::max(worst, x(j) - problem.upper(j));
  }
  return worst;
}

int LpBuilder::add_variable(double lower, double upper, double cost, bool binary) {
  costs_.push_back(cost);
  lower_.push_back(lower);
  upper_.push_back(upper);
  binary_.push_back(binary);
  return num_vars() - 1;
}

int LpBuilder::add_variables(int count, double lower, double upper) {
  const int first = num_vars();
  for (int k = 0; k < count; ++k) add_variable(lower, upper);
  return first;
}

void LpBuilder::set_bounds(int var, double lower, double upper) {
  lower_[var] = lower;
  upper_[var] = upper;
}

int LpBuilder::add_row(const Row& row, double rhs) {
  rows_.push_back(row);
  rhs_.push_back(rhs);
  return num_rows() - 1;
}

LpProblem LpBuilder::build() const {
  LpProblem p;
  const int n = num_vars();
  const int m = num_rows();
  p.objective = Eigen::Map<const Eigen::VectorXd>(costs_.data(), n);
  p.lower = Eigen::Map<const Eigen::VectorXd>(lower_.data(), n);
  p.upper = Eigen::Map<const Eigen::VectorXd>(upper_.data(), n);
  p.b = Eigen::Map<const Eigen::VectorXd>(rhs_.data(), m);
  p.A = Eigen::MatrixXd::Zero(m, n);
  for (int i = 0; i < m; ++i)
    for (const auto& [var, coef] : rows_[i]) p.A(i, var) += coef;
  p.binary = binary_;
  return p;
}

}  // namespace paro
