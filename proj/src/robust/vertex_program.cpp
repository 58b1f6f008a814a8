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

#include "robust/vertex_program.hpp"

#include <cmath>

namespace paro::internal {

Affine Affine::var(int index, double coef) {
  Affine a;
  a.add(index, coef);
  return a;
}

Affine& Affine::add(int index, double coef) {
  if (coef != 0.0) terms[index] += coef;
  return *this;
}

Affine& Affine::add(const Affine& other, double scale) {
  if (scale == 0.0) return *this;
  constant += scale * other.constant;
  for (const auto& [i, c] : other.terms) terms[i] += scale * c;
  return *this;
}

double Affine::value(const Eigen::VectorXd& solution) const {
  double v = constant;
  for (const auto& [i, c] : terms) v += c * solution(i);
  return v;
}

AffineVec constants(const Eigen::VectorXd& v) {
  AffineVec out;
  for (int i = 0; i < v.size(); ++i) out.emplace_back(v(i));
  return out;
}

AffineVec columns(int first, int count) {
  AffineVec out;
  for (int i = 0; i < count; ++i) out.push_back(Affine::var(first + i));
  return out;
}

int add_le(LpBuilder& builder, const Affine& lhs, double rhs) {
  LpBuilder::Row row;
  for (const auto& [i, c] : lhs.terms)
    if (c != 0.0) row.emplace_back(i, c);
  return builder.add_row(row, rhs - lhs.constant);
}

Affine objective_expr(const TwoStageProblem& p, const Scenario& z, const AffineVec& x, const AffineVec& y) {
  const Eigen::VectorXd c = p.c_at(z);
  Affine obj;
  for (int j = 0; j < p.n_x; ++j) obj.add(x[j], c(j));
  for (int k = 0; k < p.n_y; ++k) obj.add(y[k], p.d(k));
  return obj;
}

std::vector<int> add_system(LpBuilder& builder, const TwoStageProblem& p, const Scenario& z, const AffineVec& x,
                            const AffineVec& y, const std::vector<bool>& skip) {
  const Eigen::MatrixXd A = p.A_at(z);
  const Eigen::VectorXd r = p.r_at(z);
  std::vector<int> ids(p.m, -1);
  for (int i = 0; i < p.m; ++i) {
    if (!skip.empty() && skip[i]) continue;
    Affine lhs;
    for (int j = 0; j < p.n_x; ++j) lhs.add(x[j], A(i, j));
    for (int k = 0; k < p.n_y; ++k) lhs.add(y[k], p.B(i, k));
    ids[i] = add_le(builder, lhs, r(i));
  }
  return ids;
}

BoundRows bound_rows(const TwoStageProblem& p) {
  BoundRows out;
  out.bounds = explicit_bounds(p);
  out.x_rows.assign(p.m, false);
  out.y_rows.assign(p.m, false);
  for (int i = 0; i < p.m; ++i) {
    if (!out.bounds.is_bound_row[i]) continue;
    const bool on_x = p.n_x > 0 && p.A0.row(i).cwiseAbs().maxCoeff() > 0.0;
    (on_x ? out.x_rows : out.y_rows)[i] = true;
  }
  return out;
}

int add_stage_one(LpBuilder& builder, const TwoStageProblem& p, const BoundRows& rows, bool integral) {
  const int first = builder.num_vars();
  for (int j = 0; j < p.n_x; ++j) {
    const bool binary = integral && !p.integrality.empty() && p.integrality[j];
    double lo = rows.bounds.x_lower(j), up = rows.bounds.x_upper(j);
    if (binary) lo = std::max(lo, 0.0), up = std::min(up, 1.0);
    builder.add_variable(lo, up, 0.0, binary);
  }
  return first;
}

Eigen::VectorXd read(const Eigen::VectorXd& solution, int first, int count) {
  return solution.segment(first, count);
}

ScenarioProgram scenario_program(const TwoStageProblem& p, const std::vector<Scenario>& scenarios, bool epigraph) {
  const auto rows = bound_rows(p);
  std::vector<bool> skip(p.m);
  for (int i = 0; i < p.m; ++i) skip[i] = rows.x_rows[i] || rows.y_rows[i];
  ScenarioProgram out;
  LpBuilder& b = out.builder;
  out.x0 = add_stage_one(b, p, rows);
  if (epigraph) out.tau = b.add_variable(-kInf, kInf, 1.0);
  const AffineVec xs = columns(out.x0, p.n_x);
  for (const auto& z : scenarios) {
    const int y0 = b.num_vars();
    for (int k = 0; k < p.n_y; ++k) b.add_variable(rows.bounds.y_lower(k), rows.bounds.y_upper(k));
    out.y0.push_back(y0);
    const AffineVec ys = columns(y0, p.n_y);
    add_system(b, p, z, xs, ys, skip);
    if (epigraph) {
      Affine obj = objective_expr(p, z, xs, ys);
      obj.add(out.tau, -1.0);
      add_le(b, obj, 0.0);
    }
  }
  return out;
}

AffineVec RuleProgram::rule_at(const Scenario& z) const {
  AffineVec ys;
  for (int k = 0; k < W_col.rows(); ++k) {
    Affine y = Affine::var(w0 + k);
    for (int l = 0; l < W_col.cols(); ++l)
      if (W_col(k, l) >= 0) y.add(W_col(k, l), z(l));
    ys.push_back(y);
  }
  return ys;
}

LinearRule RuleProgram::read_rule(const Eigen::VectorXd& solution) const {
  LinearRule rule;
  rule.w = read(solution, w0, static_cast<int>(W_col.rows()));
  rule.W = Eigen::MatrixXd::Zero(W_col.rows(), W_col.cols());
  for (int k = 0; k < W_col.rows(); ++k)
    for (int l = 0; l < W_col.cols(); ++l)
      if (W_col(k, l) >= 0) rule.W(k, l) = solution(W_col(k, l));
  return rule;
}

RuleProgram rule_program(const TwoStageProblem& p, const Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>& mask,
                         const std::vector<Scenario>& scenarios) {
  const auto rows = bound_rows(p);
  RuleProgram out;
  LpBuilder& b = out.builder;
  out.x0 = add_stage_one(b, p, rows);
  out.w0 = b.add_variables(p.n_y, -kInf, kInf);
  out.W_col = Eigen::MatrixXi::Constant(p.n_y, p.L, -1);
  for (int k = 0; k < p.n_y; ++k)
    for (int l = 0; l < p.L; ++l)
      if (mask(k, l)) out.W_col(k, l) = b.add_variable(-kInf, kInf);
  const AffineVec xs = columns(out.x0, p.n_x);
  for (const auto& z : scenarios) {
    const AffineVec ys = out.rule_at(z);
    add_system(b, p, z, xs, ys, rows.x_rows);
    out.objective.push_back(objective_expr(p, z, xs, ys));
  }
  return out;
}

}  // namespace paro::internal
