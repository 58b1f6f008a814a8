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

#include <cmath>
#include <string>

#include "paroforge/error.hpp"
#include "paroforge/geometry.hpp"
#include "paroforge/pareto.hpp"
#include "robust/vertex_program.hpp"

namespace paro {

namespace {

Scenario default_nominal(const TwoStageProblem& p) {
  if (p.uncertainty.nominal) return *p.uncertainty.nominal;
  return interior_point(p.uncertainty).z;
}

}  // namespace

ProResult pro_ldr(const TwoStageProblem& p, std::optional<Scenario> z_bar, std::optional<RuleMask> mask,
                  const LpOptions& options) {
  const Scenario zb = z_bar ? *z_bar : default_nominal(p);
  if (zb.size() != p.L) throw Error(ErrorKind::kDimensionMismatch, "pro_ldr: z_bar has the wrong size");
  const RuleMask m = mask ? *mask : full_mask(p);

  ProResult out;
  out.first_step = solve_static_ldr(p, m, options);
  const auto& first = out.first_step;
  out.nominal_before = p.c_at(zb).dot(first.x) + p.d.dot(first.rule.at(zb));

  const auto vertices = vertices_of(p.uncertainty);
  auto prog = internal::rule_program(p, m, vertices);
  LpBuilder& b = prog.builder;
  const auto xs = internal::columns(prog.x0, p.n_x);
  const auto nominal = internal::objective_expr(p, zb, xs, prog.rule_at(zb));
  for (const auto& [col, coef] : nominal.terms) b.set_cost(col, coef);
  // No vertex may lose against the first-step rule.
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    const double before = p.c_at(vertices[v]).dot(first.x) + p.d.dot(first.rule.at(vertices[v]));
    internal::add_le(b, prog.objective[v], before + 1e-9 * (1.0 + std::abs(before)));
  }
  const LpSolution sol = solve_milp(b.build(), options);
  if (!sol.optimal()) {
    // The first-step solution is feasible here, so only numerical trouble lands here.
    throw Error(ErrorKind::kIterationLimit, std::string("pro_ldr: second step ") + to_string(sol.status));
  }
  out.x = internal::read(sol.x, prog.x0, p.n_x);
  out.rule = prog.read_rule(sol.x);
  out.nominal_value = p.c_at(zb).dot(out.x) + p.d.dot(out.rule.at(zb));
  out.worst_case = -kInf;
  for (const auto& z : vertices) out.worst_case = std::max(out.worst_case, p.c_at(z).dot(out.x) + p.d.dot(out.rule.at(z)));
  return out;
}

DrParoResult dr_paro(const TwoStageProblem& p, std::optional<Scenario> z_bar, const LpOptions& options) {
  if (p.d.size() && p.d.cwiseAbs().maxCoeff() != 0.0)
    throw Error(ErrorKind::kPrecondition, "dr_paro: requires no Stage-2 variables in the objective (d = 0)");
  const auto report = detect_structure(p);
  DrParoResult out;
  out.mask = static_mask(p);
  switch (report.kind) {
    case StructureKind::kConstraintwise:
      out.branch = "constraintwise";
      break;
    case StructureKind::kHybrid:
      out.branch = "hybrid";
      for (int l : report.shared_params) out.mask.col(l).setConstant(true);
      break;
    case StructureKind::kBlock:
      out.branch = "block";
      for (const auto& block : report.blocks)
        for (int k : block.stage2)
          for (int l : block.params) out.mask(k, l) = true;
      break;
    case StructureKind::kSimplex:
    case StructureKind::kGeneral:
      if (report.kind == StructureKind::kGeneral && !is_simplex(p.uncertainty).simplex)
        throw Error(ErrorKind::kNoStructure, "dr_paro: no applicable structure");
      out.branch = "simplex";
      out.mask = full_mask(p);
      break;
  }
  const auto pro = pro_ldr(p, z_bar, out.mask, options);
  out.x = pro.x;
  out.rule = pro.rule;
  out.worst_case = pro.worst_case;
  return out;
}

}  // namespace paro
