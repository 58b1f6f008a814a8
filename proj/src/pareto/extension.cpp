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

// Certificates around a fixed worst-case optimal solution: extension check,
// interior-scenario refinement for d = 0, and finite-subset uniqueness.

#include <cmath>
#include <string>

#include "paroforge/error.hpp"
#include "paroforge/geometry.hpp"
#include "paroforge/pareto.hpp"
#include "robust/vertex_program.hpp"

namespace paro {

namespace {

ExtensionCheck sampled_extension(const TwoStageProblem& p, const Eigen::VectorXd& x, const DecisionRule& rule) {
  ExtensionCheck out;
  out.certified = false;
  out.bound = -kInf;
  for (const auto& z : vertices_of(p.uncertainty)) {
    const auto best = optimal_recourse(p, x, z);
    const double gap = p.d.dot(evaluate_rule(p, x, z, rule) - best.y);
    if (gap > out.bound) {
      out.bound = gap;
      out.z = z;
      out.y = best.y;
    }
  }
  return out;
}

}  // namespace

ExtensionCheck check_extension(const TwoStageProblem& p, const Eigen::VectorXd& x, const DecisionRule& rule,
                               const LpOptions& options) {
  if (x.size() != p.n_x) throw Error(ErrorKind::kDimensionMismatch, "check_extension: x has the wrong size");
  LinearRule lin;
  if (const auto* s = std::get_if<StaticRule>(&rule)) {
    lin.w = s->y;
    lin.W = Eigen::MatrixXd::Zero(p.n_y, p.L);
  } else if (const auto* l = std::get_if<LinearRule>(&rule)) {
    lin = *l;
  } else {
    return sampled_extension(p, x, rule);
  }
  if (lin.w.size() != p.n_y || lin.W.rows() != p.n_y || lin.W.cols() != p.L)
    throw Error(ErrorKind::kDimensionMismatch, "check_extension: rule has the wrong shape");

  // Columns: z (L), then y (n_y). Minimise d'y - d'W z.
  LpBuilder b;
  const int z0 = b.add_variables(p.L, -kInf, kInf);
  const int y0 = b.add_variables(p.n_y, -kInf, kInf);
  const Eigen::VectorXd dW = lin.W.transpose() * p.d;
  for (int l = 0; l < p.L; ++l) b.set_cost(z0 + l, -dW(l));
  for (int k = 0; k < p.n_y; ++k) b.set_cost(y0 + k, p.d(k));
  const Eigen::VectorXd base = p.r0 - p.A0 * x;
  for (int i = 0; i < p.m; ++i) {
    LpBuilder::Row row;
    for (int l = 0; l < p.L; ++l) {
      const double coef = p.A[l].row(i).dot(x) - p.R(i, l);
      if (coef != 0.0) row.emplace_back(z0 + l, coef);
    }
    for (int k = 0; k < p.n_y; ++k)
      if (p.B(i, k) != 0.0) row.emplace_back(y0 + k, p.B(i, k));
    b.add_row(row, base(i));
  }
  const auto& U = p.uncertainty;
  for (int j = 0; j < U.num_rows(); ++j) {
    LpBuilder::Row row;
    for (int l = 0; l < p.L; ++l)
      if (U.H(j, l) != 0.0) row.emplace_back(z0 + l, U.H(j, l));
    b.add_row(row, U.h(j));
  }
  const LpSolution sol = solve_lp(b.build(), options);
  if (sol.status == LpStatus::kInfeasible)
    throw Error(ErrorKind::kInfeasible, "check_extension: x admits no recourse anywhere in U");
  if (sol.status == LpStatus::kUnbounded)
    throw Error(ErrorKind::kUnbounded, "check_extension: recourse objective unbounded");
  if (!sol.optimal()) throw Error(ErrorKind::kIterationLimit, "check_extension: LP did not finish");
  ExtensionCheck out;
  out.z = internal::read(sol.x, z0, p.L);
  out.y = internal::read(sol.x, y0, p.n_y);
  out.bound = p.d.dot(lin.at(out.z) - out.y);
  return out;
}

Eigen::VectorXd refine_d0(const TwoStageProblem& p, double opt, std::optional<Scenario> z_bar,
                          const LpOptions& options) {
  if (p.d.size() && p.d.cwiseAbs().maxCoeff() != 0.0)
    throw Error(ErrorKind::kPrecondition, "refine_d0: requires d = 0");
  const Scenario zb = z_bar ? *z_bar : interior_point(p.uncertainty).z;
  if (zb.size() != p.L) throw Error(ErrorKind::kDimensionMismatch, "refine_d0: z_bar has the wrong size");
  const auto vertices = vertices_of(p.uncertainty);
  auto prog = internal::scenario_program(p, vertices, false);
  LpBuilder& b = prog.builder;
  const Eigen::VectorXd cz = p.c_at(zb);
  for (int j = 0; j < p.n_x; ++j) b.set_cost(prog.x0 + j, cz(j));
  const auto xs = internal::columns(prog.x0, p.n_x);
  const double cap = opt + 1e-9 * (1.0 + std::abs(opt));
  for (std::size_t v = 0; v < vertices.size(); ++v)
    internal::add_le(b, internal::objective_expr(p, vertices[v], xs, internal::columns(prog.y0[v], p.n_y)), cap);
  const LpSolution sol = solve_milp(b.build(), options);
  if (sol.status == LpStatus::kInfeasible)
    throw Error(ErrorKind::kInfeasible, "refine_d0: no solution attains the given worst-case value");
  if (!sol.optimal()) throw Error(ErrorKind::kIterationLimit, std::string("refine_d0: ") + to_string(sol.status));
  return internal::read(sol.x, prog.x0, p.n_x);
}

UniquenessCertificate certify_unique(const TwoStageProblem& p, const std::vector<Scenario>& scenarios,
                                     const LpOptions& options) {
  if (scenarios.empty()) throw Error(ErrorKind::kInvalidArgument, "certify_unique: empty scenario list");
  auto prog = internal::scenario_program(p, scenarios, true);
  const LpSolution sol = solve_milp(prog.builder.build(), options);
  if (sol.status == LpStatus::kInfeasible) throw Error(ErrorKind::kInfeasible, "certify_unique: infeasible");
  if (!sol.optimal()) throw Error(ErrorKind::kIterationLimit, std::string("certify_unique: ") + to_string(sol.status));

  UniquenessCertificate out;
  out.x = internal::read(sol.x, prog.x0, p.n_x);
  out.finite_opt = sol.x(prog.tau);
  prog.builder.add_row({{prog.tau, 1.0}}, out.finite_opt + 1e-9 * (1.0 + std::abs(out.finite_opt)));
  LpProblem face = prog.builder.build();
  out.unique = true;
  for (int j = 0; j < p.n_x; ++j) {
    double range[2];
    for (int side = 0; side < 2; ++side) {
      face.objective.setZero();
      face.objective(prog.x0 + j) = side == 0 ? 1.0 : -1.0;
      const LpSolution r = solve_milp(face, options);
      if (!r.optimal()) throw Error(ErrorKind::kIterationLimit, "certify_unique: range LP failed");
      range[side] = r.x(prog.x0 + j);
    }
    out.lower.push_back(range[0]);
    out.upper.push_back(range[1]);
    if (range[1] - range[0] > 1e-6) out.unique = false;
  }

  out.robust_feasible = true;
  for (const auto& z : vertices_of(p.uncertainty)) {
    try {
      optimal_recourse(p, out.x, z, options);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::kInfeasible) out.robust_feasible = false;
    }
  }
  if (out.unique && out.robust_feasible) {
    const double opt = solve_aro_vertices(p, options).opt;
    out.pareto = std::abs(out.finite_opt - opt) <= 1e-7 * (1.0 + std::abs(opt));
  }
  return out;
}

}  // namespace paro
