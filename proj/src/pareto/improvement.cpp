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

// Improvement problem for right-hand-side uncertainty, solved by two local
// alternating schemes, and the iterative refinement built on top of it.

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "paroforge/error.hpp"
#include "paroforge/geometry.hpp"
#include "paroforge/pareto.hpp"
#include "robust/vertex_program.hpp"

namespace paro {

using internal::Affine;

namespace {

// What is held fixed in one block solve.
struct BlockSpec {
  const Scenario* fixed_z = nullptr;
  const Eigen::VectorXd* fixed_x = nullptr;
  const Eigen::VectorXd* y_hat = nullptr;   // keep A x_hat + B y_hat <= r(z) admissible
  const Eigen::VectorXd* lambda = nullptr;  // add -lambda' R z to the cost
};

struct BlockSolution {
  Scenario z;
  Eigen::VectorXd x, y;
  std::vector<Eigen::VectorXd> y_ledger;
  double cost = 0.0;  // c'x + d'y
  double lp_value = 0.0;
};

class BlockSolver {
 public:
  BlockSolver(const TwoStageProblem& p, const Eigen::VectorXd& x_hat, const ValueLedger& ledger,
              const LpOptions& options)
      : p_(p), x_hat_(x_hat), ledger_(ledger), options_(options), rows_(internal::bound_rows(p)) {
    skip_.resize(p.m);
    for (int i = 0; i < p.m; ++i) skip_[i] = rows_.x_rows[i] || rows_.y_rows[i];
  }

  // Alternating schemes revisit the same block problem (a repeated adversary
  // or dual vector, or warm starts that meet), and the solve is
  // deterministic, so results are memoized on the inputs.
  BlockSolution solve(const BlockSpec& spec) const {
    std::vector<double> key;
    auto append = [&key](const Eigen::VectorXd* v) {
      key.push_back(v ? static_cast<double>(v->size()) : -1.0);
      if (v) key.insert(key.end(), v->data(), v->data() + v->size());
    };
    append(spec.fixed_z);
    append(spec.fixed_x);
    append(spec.y_hat);
    append(spec.lambda);
    const auto hit = cache_.find(key);
    if (hit != cache_.end()) return hit->second;
    BlockSolution out = solve_fresh(spec);
    cache_.emplace(std::move(key), out);
    return out;
  }

 private:
  BlockSolution solve_fresh(const BlockSpec& spec) const {
    const auto& p = p_;
    LpBuilder b;
    const int z0 = b.add_variables(p.L, -kInf, kInf);
    if (spec.fixed_z)
      for (int l = 0; l < p.L; ++l) b.set_bounds(z0 + l, (*spec.fixed_z)(l), (*spec.fixed_z)(l));
    const int x0 = internal::add_stage_one(b, p, rows_);
    if (spec.fixed_x)
      for (int j = 0; j < p.n_x; ++j) {
        b.set_bounds(x0 + j, (*spec.fixed_x)(j), (*spec.fixed_x)(j));
        b.set_binary(x0 + j, false);
      }
    const int y0 = add_recourse(b);
    for (int j = 0; j < p.n_x; ++j) b.set_cost(x0 + j, p.c0(j));
    for (int k = 0; k < p.n_y; ++k) b.set_cost(y0 + k, p.d(k));
    if (spec.lambda) {
      const Eigen::VectorXd lr = p.R.transpose() * *spec.lambda;
      for (int l = 0; l < p.L; ++l) b.add_cost(z0 + l, -lr(l));
    }

    const auto& U = p.uncertainty;
    for (int j = 0; j < U.num_rows(); ++j) {
      LpBuilder::Row row;
      for (int l = 0; l < p.L; ++l)
        if (U.H(j, l) != 0.0) row.emplace_back(z0 + l, U.H(j, l));
      b.add_row(row, U.h(j));
    }
    const auto xs = internal::columns(x0, p.n_x);
    // Feasibility at z_bar: A x + B y - R z <= r0.
    for (int i = 0; i < p.m; ++i) {
      if (skip_[i]) continue;
      Affine lhs;
      for (int j = 0; j < p.n_x; ++j) lhs.add(x0 + j, p.A0(i, j));
      for (int k = 0; k < p.n_y; ++k) lhs.add(y0 + k, p.B(i, k));
      for (int l = 0; l < p.L; ++l) lhs.add(z0 + l, -p.R(i, l));
      internal::add_le(b, lhs, p.r0(i));
    }
    // Every ledger entry keeps its value.
    std::vector<int> yl;
    for (int e = 0; e < ledger_.size(); ++e) {
      const int ye = add_recourse(b);
      yl.push_back(ye);
      const auto ys = internal::columns(ye, p.n_y);
      internal::add_system(b, p, ledger_.scenarios[e], xs, ys, skip_);
      const double v = ledger_.values[e];
      internal::add_le(b, internal::objective_expr(p, ledger_.scenarios[e], xs, ys), v + 1e-9 * (1.0 + std::abs(v)));
    }
    if (spec.y_hat) {
      const Eigen::VectorXd base = p.r0 - p.A0 * x_hat_ - p.B * *spec.y_hat;
      for (int i = 0; i < p.m; ++i) {
        if (p.L == 0 || p.R.row(i).cwiseAbs().maxCoeff() == 0.0) continue;
        Affine lhs;
        for (int l = 0; l < p.L; ++l) lhs.add(z0 + l, -p.R(i, l));
        internal::add_le(b, lhs, base(i) + 1e-9 * (1.0 + std::abs(p.r0(i))));
      }
    }

    const LpSolution sol = solve_milp(b.build(), options_);
    if (sol.status == LpStatus::kInfeasible)
      throw Error(ErrorKind::kInfeasible, "improvement: block problem infeasible (is x_hat worst-case optimal?)");
    if (sol.status == LpStatus::kUnbounded)
      throw Error(ErrorKind::kUnbounded, "improvement: block problem unbounded");
    if (!sol.optimal()) throw Error(ErrorKind::kIterationLimit, "improvement: block problem hit a limit");
    BlockSolution out;
    out.z = internal::read(sol.x, z0, p.L);
    if (spec.fixed_z) out.z = *spec.fixed_z;
    out.x = internal::read(sol.x, x0, p.n_x);
    if (spec.fixed_x) out.x = *spec.fixed_x;
    out.y = internal::read(sol.x, y0, p.n_y);
    for (int ye : yl) out.y_ledger.push_back(internal::read(sol.x, ye, p.n_y));
    out.cost = p.c0.dot(out.x) + p.d.dot(out.y);
    out.lp_value = sol.objective;
    return out;
  }

  int add_recourse(LpBuilder& b) const {
    const int first = b.num_vars();
    for (int k = 0; k < p_.n_y; ++k) b.add_variable(rows_.bounds.y_lower(k), rows_.bounds.y_upper(k));
    return first;
  }

  const TwoStageProblem& p_;
  const Eigen::VectorXd& x_hat_;
  const ValueLedger& ledger_;
  LpOptions options_;
  internal::BoundRows rows_;
  std::vector<bool> skip_;
  mutable std::map<std::vector<double>, BlockSolution> cache_;
};

// Re-evaluates the block's x at its scenario with an exact recourse solve.
// The block LP meets its rows only to solver tolerance, so its own y can
// undercut the attainable cost by that much; comparing two exact solves at
// the same scenario keeps p free of that noise.
void settle(const TwoStageProblem& p, BlockSolution& blk, const LpOptions& lp) {
  try {
    const RecourseResult own = optimal_recourse(p, blk.x, blk.z, lp);
    blk.y = own.y;
    blk.cost = own.objective;
  } catch (const Error&) {
    // Keep the block's own completion.
  }
}

void record(ImprovementResult& r, const BlockSolution& blk, const RecourseResult& rec) {
  r.p = blk.cost - rec.objective;
  r.z_bar = blk.z;
  r.x_bar = blk.x;
  r.y_bar = blk.y;
  r.ledger_recourse = blk.y_ledger;
  r.y_hat = rec.y;
}

ImprovementResult run_mountain(const TwoStageProblem& p, const Eigen::VectorXd& x_hat, const BlockSolver& solver,
                               const Scenario& start, const Eigen::VectorXd* fixed_x, const ImprovementOptions& opt) {
  ImprovementResult best;
  best.method = ImprovementMethod::kMountain;
  BlockSpec spec;
  spec.fixed_z = &start;
  spec.fixed_x = fixed_x;
  BlockSolution blk = solver.solve(spec);
  settle(p, blk, opt.lp);
  RecourseResult rec = optimal_recourse(p, x_hat, blk.z, opt.lp);
  record(best, blk, rec);
  double previous = best.p;
  const double base = p.c0.dot(x_hat);
  for (int it = 1; it <= opt.max_iters; ++it) {
    BlockSpec step;
    step.fixed_x = fixed_x;
    const Eigen::VectorXd y_hat = rec.y;
    step.y_hat = &y_hat;
    blk = solver.solve(step);
    const double value = blk.cost - base - p.d.dot(y_hat);
    settle(p, blk, opt.lp);
    rec = optimal_recourse(p, x_hat, blk.z, opt.lp);
    best.iterations = it;
    if (blk.cost - rec.objective < best.p) record(best, blk, rec);
    if (std::abs(value - previous) <= opt.tol) {
      best.converged = true;
      break;
    }
    previous = value;
  }
  return best;
}

ImprovementResult run_bilinear(const TwoStageProblem& p, const Eigen::VectorXd& x_hat, const BlockSolver& solver,
                               const Scenario& start, const Eigen::VectorXd* fixed_x, const ImprovementOptions& opt) {
  ImprovementResult best;
  best.method = ImprovementMethod::kBilinear;
  best.p = kInf;
  RecourseResult rec = optimal_recourse(p, x_hat, start, opt.lp);
  Eigen::VectorXd lambda = rec.duals;
  double previous = kInf;
  const Eigen::VectorXd slack_base = p.r0 - p.A0 * x_hat;
  for (int it = 1; it <= opt.max_iters; ++it) {
    BlockSpec step;
    step.fixed_x = fixed_x;
    step.lambda = &lambda;
    BlockSolution blk = solver.solve(step);
    // Joint objective of the bilinear form at (block, lambda).
    const double value = blk.cost - p.c0.dot(x_hat) - lambda.dot(slack_base + p.R * blk.z);
    settle(p, blk, opt.lp);
    rec = optimal_recourse(p, x_hat, blk.z, opt.lp);
    lambda = rec.duals;
    best.iterations = it;
    if (blk.cost - rec.objective < best.p) {
      record(best, blk, rec);
      best.lambda = lambda;
    }
    if (std::abs(value - previous) <= opt.tol) {
      best.converged = true;
      break;
    }
    previous = value;
  }
  return best;
}

ImprovementResult improve(const TwoStageProblem& p, const Eigen::VectorXd& x_hat, const ValueLedger& ledger,
                          const ImprovementOptions& opt, const Eigen::VectorXd* fixed_x) {
  if (!p.rhs_only())
    throw Error(ErrorKind::kPrecondition, "improvement: only right-hand-side uncertainty is supported");
  if (x_hat.size() != p.n_x) throw Error(ErrorKind::kDimensionMismatch, "improvement: x_hat has the wrong size");
  std::vector<Scenario> starts = opt.warm_starts;
  if (starts.empty()) {
    starts.push_back(interior_point(p.uncertainty).z);
    if (opt.samples > 0)
      for (auto& z : sample_uniform(p.uncertainty, opt.samples, opt.seed)) starts.push_back(z);
  }
  // x_hat must admit recourse wherever the block may move.
  for (const auto& z : vertices_of(p.uncertainty)) {
    try {
      optimal_recourse(p, x_hat, z, opt.lp);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::kInfeasible)
        throw Error(ErrorKind::kInfeasible, "improvement: x_hat has no recourse at some vertex of U");
      throw;
    }
  }
  const BlockSolver solver(p, x_hat, ledger, opt.lp);
  ImprovementResult best;
  best.p = kInf;
  std::vector<double> values;
  for (std::size_t s = 0; s < starts.size(); ++s) {
    auto r = opt.method == ImprovementMethod::kMountain ? run_mountain(p, x_hat, solver, starts[s], fixed_x, opt)
                                                        : run_bilinear(p, x_hat, solver, starts[s], fixed_x, opt);
    values.push_back(r.p);
    if (r.p < best.p) {
      best = std::move(r);
      best.warm_start = static_cast<int>(s);
    }
  }
  best.start_values = values;
  best.certified = false;
  return best;
}

}  // namespace

const char* to_string(ImprovementMethod method) {
  return method == ImprovementMethod::kMountain ? "mountain" : "bilinear";
}

ValueLedger ValueLedger::at_vertices(const std::vector<Scenario>& vertices, double opt) {
  ValueLedger v;
  for (const auto& z : vertices) v.add(z, opt);
  return v;
}

ImprovementResult improvement(const TwoStageProblem& p, const Eigen::VectorXd& x_hat, const ValueLedger& ledger,
                              const ImprovementOptions& options) {
  return improve(p, x_hat, ledger, options, nullptr);
}

Algorithm1Result algorithm1(const TwoStageProblem& p, std::optional<Eigen::VectorXd> x0,
                            const ImprovementOptions& options, int max_rounds) {
  const auto aro = solve_aro_vertices(p, options.lp);
  Algorithm1Result out;
  out.opt = aro.opt;
  Eigen::VectorXd x = x0 ? *x0 : aro.x;
  ValueLedger ledger = ValueLedger::at_vertices(aro.vertices, aro.opt);
  for (int round = 0; round < max_rounds; ++round) {
    const auto r = improvement(p, x, ledger, options);
    Algorithm1Step step;
    step.p = r.p;
    step.z = r.z_bar;
    step.x = r.x_bar;
    step.value = p.c0.dot(r.x_bar) + p.d.dot(r.y_bar);
    step.ledger_size = ledger.size();
    out.trace.push_back(step);
    if (r.p >= -options.tol) {
      out.x = x;
      return out;
    }
    ledger.add(r.z_bar, step.value);
    x = r.x_bar;
  }
  out.x = x;
  out.hit_iteration_cap = true;
  return out;
}

MaxDifference max_difference_scenario(const TwoStageProblem& p, const Eigen::VectorXd& x_a,
                                      const Eigen::VectorXd& x_b, const ImprovementOptions& options) {
  const auto r = improve(p, x_a, ValueLedger{}, options, &x_b);
  MaxDifference out;
  out.z = r.z_bar;
  out.gap = -r.p;
  out.value_a = optimal_recourse(p, x_a, out.z, options.lp).objective;
  out.value_b = optimal_recourse(p, x_b, out.z, options.lp).objective;
  return out;
}

MaxDifference max_difference_scenario(const TwoStageProblem& p, const Eigen::VectorXd& x_a, const LinearRule& rule_a,
                                      const Eigen::VectorXd& x_b, const LpOptions& options) {
  if (!p.rhs_only())
    throw Error(ErrorKind::kPrecondition, "max_difference_scenario: only right-hand-side uncertainty is supported");
  const auto ext = check_extension(p, x_b, rule_a, options);
  MaxDifference out;
  out.z = ext.z;
  out.value_a = p.c0.dot(x_a) + p.d.dot(rule_a.at(ext.z));
  out.value_b = optimal_recourse(p, x_b, ext.z, options).objective;
  out.gap = out.value_a - out.value_b;
  return out;
}

}  // namespace paro
