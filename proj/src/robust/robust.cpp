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

#include "paroforge/robust.hpp"

#include <cmath>
#include <string>

#include "paroforge/error.hpp"
#include "paroforge/geometry.hpp"
#include "robust/vertex_program.hpp"

namespace paro {

using internal::Affine;
using internal::AffineVec;

namespace {

constexpr double kRuleTol = 1e-6;

void require_optimal(const LpSolution& sol, const char* what) {
  switch (sol.status) {
    case LpStatus::kOptimal: return;
    case LpStatus::kInfeasible: throw Error(ErrorKind::kInfeasible, std::string(what) + ": infeasible");
    case LpStatus::kUnbounded: throw Error(ErrorKind::kUnbounded, std::string(what) + ": unbounded");
    case LpStatus::kIterationLimit: throw Error(ErrorKind::kIterationLimit, std::string(what) + ": iteration limit");
  }
}

}  // namespace

AroSolveResult solve_aro_vertices(const TwoStageProblem& p, const LpOptions& options) {
  AroSolveResult out;
  out.vertices = vertices_of(p.uncertainty);
  auto prog = internal::scenario_program(p, out.vertices, true);
  const int x0 = prog.x0;
  const auto& y_first = prog.y0;
  LpBuilder& b = prog.builder;
  const LpSolution sol = solve_milp(b.build(), options);
  out.status = sol.status;
  out.nodes = sol.nodes;
  require_optimal(sol, "solve_aro_vertices");
  out.x = internal::read(sol.x, x0, p.n_x);
  for (int y0 : y_first) out.per_vertex_y.push_back(internal::read(sol.x, y0, p.n_y));
  // Report the realised maximum rather than the epigraph column.
  out.opt = -kInf;
  for (std::size_t v = 0; v < out.vertices.size(); ++v)
    out.opt = std::max(out.opt, p.c_at(out.vertices[v]).dot(out.x) + p.d.dot(out.per_vertex_y[v]));
  return out;
}

RecourseResult optimal_recourse(const TwoStageProblem& p, const Eigen::VectorXd& x, const Scenario& z,
                                const LpOptions& options) {
  if (x.size() != p.n_x || z.size() != p.L)
    throw Error(ErrorKind::kDimensionMismatch, "optimal_recourse: vector sizes do not match");
  LpProblem lp;
  lp.objective = p.d;
  lp.A = p.B;
  lp.b = p.r_at(z) - p.A_at(z) * x;
  lp.lower = Eigen::VectorXd::Constant(p.n_y, -kInf);
  lp.upper = Eigen::VectorXd::Constant(p.n_y, kInf);
  const LpSolution sol = solve_lp(lp, options);
  if (sol.status == LpStatus::kInfeasible)
    throw Error(ErrorKind::kInfeasible, "optimal_recourse: no feasible recourse at this scenario");
  if (sol.status == LpStatus::kUnbounded)
    throw Error(ErrorKind::kUnbounded, "optimal_recourse: recourse objective unbounded below");
  require_optimal(sol, "optimal_recourse");
  RecourseResult out;
  out.y = sol.x;
  out.objective = p.c_at(z).dot(x) + p.d.dot(sol.x);
  out.basis = sol.basis;
  out.duals = sol.duals;
  return out;
}

Eigen::VectorXd evaluate_rule(const TwoStageProblem& p, const Eigen::VectorXd& x, const Scenario& z,
                              const DecisionRule& rule) {
  if (const auto* s = std::get_if<StaticRule>(&rule)) return s->y;
  if (const auto* l = std::get_if<LinearRule>(&rule)) return l->at(z);
  if (const auto* b = std::get_if<BackSubstitutionRule>(&rule)) {
    if (!b->elimination) throw Error(ErrorKind::kInvalidArgument, "evaluate_rule: missing elimination");
    return reconstruct_recourse(p, *b->elimination, x, z, b->policy);
  }
  return optimal_recourse(p, x, z).y;
}

WorstCase worst_case(const TwoStageProblem& p, const Eigen::VectorXd& x, const DecisionRule& rule) {
  return worst_case(p, x, rule, vertices_of(p.uncertainty));
}

WorstCase worst_case(const TwoStageProblem& p, const Eigen::VectorXd& x, const DecisionRule& rule,
                     const std::vector<Scenario>& vertices) {
  if (std::holds_alternative<OptimalRecourseRule>(rule) && !p.rhs_only())
    throw Error(ErrorKind::kPrecondition,
                "worst_case: optimal recourse needs uncertainty in the right-hand side only");
  WorstCase out;
  out.value = -kInf;
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    const Scenario& z = vertices[v];
    Eigen::VectorXd y;
    try {
      y = evaluate_rule(p, x, z, rule);
    } catch (const Error& e) {
      throw Error(e.kind(), "worst_case: vertex " + std::to_string(v) + ": " + e.what());
    }
    const Eigen::VectorXd r = p.r_at(z);
    const Eigen::VectorXd slack = r - p.A_at(z) * x - p.B * y;
    for (int i = 0; i < p.m; ++i)
      if (slack(i) < -kRuleTol * (1.0 + std::abs(r(i))))
        throw Error(ErrorKind::kInfeasible, "worst_case: rule violates row " + std::to_string(i) + " at vertex " +
                                                std::to_string(v));
    const double value = p.c_at(z).dot(x) + p.d.dot(y);
    out.per_vertex.push_back(value);
    if (value > out.value) {
      out.value = value;
      out.vertex = static_cast<int>(v);
      out.z = z;
    }
  }
  return out;
}

RuleMask static_mask(const TwoStageProblem& p) { return RuleMask::Constant(p.n_y, p.L, false); }
RuleMask full_mask(const TwoStageProblem& p) { return RuleMask::Constant(p.n_y, p.L, true); }

LdrSolveResult solve_static_ldr(const TwoStageProblem& p, const RuleMask& mask, const LpOptions& options) {
  if (mask.rows() != p.n_y || mask.cols() != p.L)
    throw Error(ErrorKind::kDimensionMismatch, "solve_static_ldr: mask must be n_y x L");
  const auto vertices = vertices_of(p.uncertainty);
  auto prog = internal::rule_program(p, mask, vertices);
  LpBuilder& b = prog.builder;
  const int tau = b.add_variable(-kInf, kInf, 1.0);
  for (const auto& obj : prog.objective) {
    Affine row = obj;
    row.add(tau, -1.0);
    internal::add_le(b, row, 0.0);
  }
  const LpSolution sol = solve_milp(b.build(), options);
  if (sol.status == LpStatus::kInfeasible)
    throw Error(ErrorKind::kInfeasible, "solve_static_ldr: no decision rule with this structure is feasible");
  require_optimal(sol, "solve_static_ldr");

  LdrSolveResult out;
  out.x = internal::read(sol.x, prog.x0, p.n_x);
  out.rule = prog.read_rule(sol.x);
  out.worst_case = -kInf;
  for (const auto& z : vertices)
    out.worst_case = std::max(out.worst_case, p.c_at(z).dot(out.x) + p.d.dot(out.rule.at(z)));
  return out;
}

}  // namespace paro
