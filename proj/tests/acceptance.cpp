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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Every tolerance below is fixed here and nowhere else.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "paroforge/bench.hpp"
#include "paroforge/error.hpp"
#include "paroforge/fme.hpp"
#include "paroforge/geometry.hpp"
#include "paroforge/instances.hpp"
#include "paroforge/lp.hpp"
#include "paroforge/pareto.hpp"
#include "paroforge/robust.hpp"

using namespace paro;

namespace {

constexpr double kGoldenTol = 1e-6;
constexpr double kProjectionTol = 1e-6;
constexpr double kLpTol = 1e-7;
constexpr double kVertexTol = 1e-7;
constexpr double kImprovementCap = 1e-9;
constexpr double kInvariantTol = 1e-6;
constexpr double kPwlTol = 1e-7;
constexpr double kBenchTol = 1e-6;

struct Outcome {
  bool pass = true;
  std::ostringstream note;

  // Records a failed check with a short reason; the first few are kept.
  void require(bool ok, const std::string& what) {
    if (ok) return;
    if (pass || failures < 5) note << " [" << what << "]";
    pass = false;
    ++failures;
  }
  int failures = 0;
};

Eigen::VectorXd scalar(double v) { return Eigen::VectorXd::Constant(1, v); }

Scenario pt(double a, double b) {
  Scenario z(2);
  z << a, b;
  return z;
}

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

// ---------------------------------------------------------------------------

void dose_model_golden(Outcome& out) {
  for (double delta : {0.5, 1.0}) {
    const auto aro = solve_aro_vertices(rt_example(delta));
    out.require(near(aro.opt, 60 * delta, kGoldenTol), "OPT at delta " + num(delta) + " is " + num(aro.opt));
  }
  const auto p = rt_example(0.5);
  const std::vector<Scenario> zs{pt(60, 60), pt(50, 55), pt(50, 50)};
  const std::vector<double> adaptive25{30, 27.5, 25}, adaptive35{30, 27.5, 27.5};
  Eigen::VectorXd y35(1);
  y35 << 35;
  for (std::size_t k = 0; k < zs.size(); ++k) {
    const double a = optimal_recourse(p, scalar(25), zs[k]).objective;
    const double b = optimal_recourse(p, scalar(35), zs[k]).objective;
    const double s = p.c_at(zs[k]).dot(scalar(25)) + p.d.dot(evaluate_rule(p, scalar(25), zs[k], StaticRule{y35}));
    out.require(near(a, adaptive25[k], kGoldenTol), "x=25 adaptive scenario " + std::to_string(k) + " " + num(a));
    out.require(near(b, adaptive35[k], kGoldenTol), "x=35 adaptive scenario " + std::to_string(k) + " " + num(b));
    out.require(near(s, 30, kGoldenTol), "x=25 static scenario " + std::to_string(k) + " " + num(s));
  }
  out.note << " OPT = 60 delta, nine table entries checked";
}

void dose_model_pareto_set(Outcome& out) {
  const auto p = rt_example(0.5);
  for (double start : {32.0, 35.0, 40.0}) {
    const auto r = algorithm1(p, scalar(start));
    const double wc = worst_case(p, r.x, OptimalRecourseRule{}).value;
    out.require(r.x(0) <= 30 + kGoldenTol, "start " + num(start) + " ends at " + num(r.x(0)));
    out.require(near(wc, 30, kGoldenTol), "start " + num(start) + " worst case " + num(wc));
    out.note << " " << num(start) << "->" << num(r.x(0));
  }
  const auto aro = solve_aro_vertices(p);
  const auto ledger = ValueLedger::at_vertices(aro.vertices, aro.opt);
  for (double x : {20.0, 25.0, 30.0}) {
    const double gap = improvement(p, scalar(x), ledger).p;
    out.require(std::abs(gap) <= kGoldenTol, "p at " + num(x) + " is " + num(gap));
  }
  for (double x : {32.0, 35.0, 40.0}) {
    const double gap = improvement(p, scalar(x), ledger).p;
    out.require(gap <= -1e-3, "p at " + num(x) + " is " + num(gap));
  }
}

void worked_examples(Outcome& out) {
  {
    const auto p = constraintwise_example();
    const auto aro = solve_aro_vertices(p);
    const auto st = solve_static_ldr(p, static_mask(p));
    Eigen::VectorXd y(2);
    y << 1.0, 1.5;
    const double wc = worst_case(p, scalar(0.5), StaticRule{y}).value;
    out.require(near(aro.x(0), 0.5, kGoldenTol), "constraintwise adaptive x " + num(aro.x(0)));
    out.require(near(st.x(0), 0.5, kGoldenTol), "constraintwise static x " + num(st.x(0)));
    out.require(near(st.worst_case, aro.opt, kGoldenTol), "static rule loses value");
    out.require(near(wc, aro.opt, kGoldenTol), "rule (1, 1.5) worst case " + num(wc));
  }
  {
    const auto p = hybrid_example();
    RuleMask mask = static_mask(p);
    mask.col(0).setConstant(true);
    const auto ldr = solve_static_ldr(p, mask);
    out.require(near(ldr.x(0), 0.5, kGoldenTol), "hybrid x " + num(ldr.x(0)));
    out.require(near(ldr.rule.w(1), 1.5, kGoldenTol) && near(ldr.rule.W(1, 0), 0.5, kGoldenTol),
                "hybrid rule " + num(ldr.rule.w(1)) + " + " + num(ldr.rule.W(1, 0)) + " z");
    for (int l = 1; l < p.L; ++l)
      out.require(ldr.rule.W.col(l).norm() == 0.0, "hybrid rule uses parameter " + std::to_string(l));
  }
  {
    const auto p = simplex_example();
    const auto aro = solve_aro_vertices(p);
    const auto ldr = solve_static_ldr(p, full_mask(p));
    out.require(near(ldr.x(0), 0.5, kGoldenTol), "simplex LDR x " + num(ldr.x(0)));
    LinearRule rule{Eigen::VectorXd::Zero(2), Eigen::MatrixXd::Zero(2, 3)};
    rule.w << 1.0, 1.5;
    rule.W(0, 0) = rule.W(0, 2) = rule.W(1, 0) = rule.W(1, 2) = 0.5;
    // worst_case throws when the rule violates a row at some vertex.
    const double wc = worst_case(p, scalar(0.5), rule).value;
    out.require(near(wc, aro.opt, kGoldenTol), "rule (3 + z1 + z3) / 2 worst case " + num(wc));
  }
  {
    const auto p = pwl_example();
    const auto elim = eliminate(p, 2);
    const Eigen::VectorXd x = scalar(0.5);
    Scenario z0(4), z1(4);
    z0 << 0, 1, 0, 0;
    z1 << 1, 1, 0, 0;
    const auto y0 = reconstruct_recourse(p, elim, x, z0, RecoursePolicy::kObjectiveGreedy);
    const auto y1 = reconstruct_recourse(p, elim, x, z1, RecoursePolicy::kObjectiveGreedy);
    out.require(near(y0(1), 1.5, kGoldenTol) && near(y0(0), 1.0, kGoldenTol), "back-substitution at 0");
    out.require(near(y1(1), 2.0, kGoldenTol) && near(y1(0), 1.5, kGoldenTol), "back-substitution at 1");
  }
  out.note << " four structured examples";
}

// One to three bounded y, at most eight rows, two x and a unit-box U.
TwoStageProblem small_fme_instance(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int n_y = 1 + static_cast<int>(seed % 3);
  const int core = 8 - 2 * n_y;
  auto p = TwoStageProblem::zeros(2, n_y, core + 2 * n_y, 2);
  for (int i = 0; i < core; ++i) {
    for (int j = 0; j < 2; ++j) p.A0(i, j) = fixture::grid_coef(rng);
    for (int l = 0; l < 2; ++l)
      for (int j = 0; j < 2; ++j) p.A[l](i, j) = 0.5 * fixture::grid_coef(rng);
    for (int k = 0; k < n_y; ++k) p.B(i, k) = fixture::grid_coef(rng);
    p.r0(i) = 1.0 + std::abs(fixture::grid_coef(rng));
    for (int l = 0; l < 2; ++l) p.R(i, l) = fixture::grid_coef(rng);
  }
  for (int k = 0; k < n_y; ++k) {
    p.B(core + 2 * k, k) = 1.0;
    p.r0(core + 2 * k) = 5.0;
    p.B(core + 2 * k + 1, k) = -1.0;
    p.r0(core + 2 * k + 1) = 5.0;
  }
  for (int k = 0; k < n_y; ++k) p.d(k) = fixture::grid_coef(rng);
  p.uncertainty = make_box(Eigen::VectorXd::Zero(2), Eigen::VectorXd::Ones(2));
  return p;
}

bool stage2_feasible(const TwoStageProblem& p, const Eigen::VectorXd& x, const Scenario& z) {
  try {
    optimal_recourse(p, x, z);
    return true;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kInfeasible) return false;
    throw;
  }
}

void projection_equivalence(Outcome& out) {
  int checked = 0, skipped = 0, mismatches = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto p = small_fme_instance(seed);
    const auto elim = eliminate(p, p.n_y);
    const auto verts = vertices_of(p.uncertainty);
    std::mt19937_64 rng(seed * 104729 + 3);
    std::uniform_real_distribution<double> ux(-3.0, 3.0);
    for (int t = 0; t < 20; ++t) {
      Eigen::VectorXd x(2);
      x << ux(rng), ux(rng);
      double worst = -1.0;
      for (const auto& v : verts) {
        const Eigen::VectorXd viol = elim.G_at(v) * x - elim.f_at(v);
        if (viol.size()) worst = std::max(worst, viol.maxCoeff());
      }
      if (std::abs(worst) < kProjectionTol) {
        ++skipped;
        continue;
      }
      ++checked;
      bool feasible = true;
      for (const auto& v : verts) feasible = feasible && stage2_feasible(p, x, v);
      if ((worst < 0) != feasible) ++mismatches;
    }
  }
  out.require(mismatches == 0, std::to_string(mismatches) + " mismatches");
  out.note << " " << checked << " points, " << skipped << " on the boundary, " << mismatches << " mismatches";
}

LpProblem random_box_lp(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nd(1, 6), md(1, 10), coef(-5, 5), rhs(-5, 10), lo(-5, 0), up(1, 6);
  const int n = nd(rng);
  const int m = md(rng);
  LpProblem p;
  p.objective.resize(n);
  p.A.resize(m, n);
  p.b.resize(m);
  p.lower.resize(n);
  p.upper.resize(n);
  for (int j = 0; j < n; ++j) {
    p.objective(j) = coef(rng);
    p.lower(j) = lo(rng);
    p.upper(j) = up(rng);
  }
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) p.A(i, j) = coef(rng);
    p.b(i) = rhs(rng);
  }
  return p;
}

void solver_oracles(Outcome& out) {
  std::mt19937_64 rng(424242);
  int infeasible = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto p = random_box_lp(rng);
    const auto expected = oracle::lp_min(p.objective, p.A, p.b, p.lower, p.upper);
    const auto s = solve_lp(p);
    if (!expected) {
      ++infeasible;
      out.require(s.status == LpStatus::kInfeasible, "lp " + std::to_string(trial) + " should be infeasible");
      continue;
    }
    out.require(s.optimal() && std::abs(s.objective - *expected) <= kLpTol, "lp " + std::to_string(trial));
  }
  std::uniform_int_distribution<int> nd(1, 12), wd(1, 20), vd(1, 30);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = nd(rng);
    LpBuilder b;
    LpBuilder::Row row;
    double total = 0;
    for (int j = 0; j < n; ++j) {
      const int v = b.add_variable(0, 1, -vd(rng), true);
      const double w = wd(rng);
      row.emplace_back(v, w);
      total += w;
    }
    b.add_row(row, std::floor(total / 2));
    const auto p = b.build();
    const auto expected = oracle::binary_min(p.objective, p.A, p.b);
    const auto s = solve_milp(p);
    out.require(s.optimal() && s.objective == *expected, "knapsack " + std::to_string(trial));
  }
  out.note << " 200 lps (" << infeasible << " infeasible), 50 knapsacks";
}

UncertaintySet random_polytope(std::mt19937_64& rng, int L, int k) {
  std::uniform_int_distribution<int> coef(-3, 3);
  std::uniform_real_distribution<double> off(0.2, 1.5);
  UncertaintySet u = make_box(Eigen::VectorXd::Constant(L, -2), Eigen::VectorXd::Constant(L, 2));
  const int cuts = std::max(0, k - 2 * L);
  u.H.conservativeResize(2 * L + cuts, L);
  u.h.conservativeResize(2 * L + cuts);
  for (int i = 0; i < cuts; ++i) {
    for (int l = 0; l < L; ++l) u.H(2 * L + i, l) = coef(rng);
    u.h(2 * L + i) = off(rng);
  }
  return u;
}

bool same_points(const std::vector<Scenario>& a, const std::vector<Eigen::VectorXd>& b, double tol) {
  if (a.size() != b.size()) return false;
  std::vector<bool> used(b.size(), false);
  for (const auto& p : a) {
    bool found = false;
    for (std::size_t j = 0; j < b.size() && !found; ++j)
      if (!used[j] && (p - b[j]).cwiseAbs().maxCoeff() <= tol) used[j] = found = true;
    if (!found) return false;
  }
  return true;
}

void vertex_oracle(Outcome& out) {
  std::mt19937_64 rng(31337);
  std::uniform_int_distribution<int> Ld(1, 4);
  for (int trial = 0; trial < 50; ++trial) {
    const int L = Ld(rng);
    std::uniform_int_distribution<int> kd(2 * L, 10);
    const auto u = random_polytope(rng, L, kd(rng));
    const auto expected = oracle::unique_points(oracle::basic_points(u.H, u.h), kVertexTol);
    out.require(same_points(enumerate_vertices(u).vertices, expected, kVertexTol), "polytope " + std::to_string(trial));
  }
  out.note << " 50 polytopes";
}

double improvement_violation(const TwoStageProblem& p, const ValueLedger& ledger, const ImprovementResult& r) {
  double worst = (p.A0 * r.x_bar + p.B * r.y_bar - p.r_at(r.z_bar)).maxCoeff();
  for (int e = 0; e < ledger.size(); ++e) {
    worst = std::max(worst, (p.A0 * r.x_bar + p.B * r.ledger_recourse[e] - p.r_at(ledger.scenarios[e])).maxCoeff());
    worst = std::max(worst, p.c0.dot(r.x_bar) + p.d.dot(r.ledger_recourse[e]) - ledger.values[e]);
  }
  return worst;
}

void pareto_invariants(Outcome& out) {
  int instances = 0, agreements = 0, calls = 0, iterates = 0, refined = 0;
  double worst_duality = 0.0;
  std::mt19937_64 crng(2718);
  std::uniform_int_distribution<int> coef(-4, 4);
  for (std::uint64_t seed = 1; instances < 25 && seed <= 200; ++seed) {
    const auto p = fixture::random_rhs_instance(seed);
    AroSolveResult aro;
    try {
      aro = solve_aro_vertices(p);
    } catch (const Error&) {
      continue;
    }
    ++instances;
    const std::string tag = "seed " + std::to_string(seed);
    const auto ledger = ValueLedger::at_vertices(aro.vertices, aro.opt);
    ImprovementOptions opt;
    opt.seed = seed;
    opt.method = ImprovementMethod::kMountain;
    const auto m = improvement(p, aro.x, ledger, opt);
    opt.method = ImprovementMethod::kBilinear;
    const auto b = improvement(p, aro.x, ledger, opt);
    for (const auto* r : {&m, &b}) {
      ++calls;
      out.require(r->p <= kImprovementCap, tag + " p = " + num(r->p));
      out.require(improvement_violation(p, ledger, *r) <= kInvariantTol, tag + " improvement point infeasible");
    }
    if (m.converged && b.converged) {
      ++agreements;
      out.require(std::abs(m.p - b.p) <= kInvariantTol, tag + " methods disagree " + num(m.p) + " vs " + num(b.p));
    }
    const double dual = b.lambda.dot(p.r_at(b.z_bar) - p.A0 * aro.x);
    const double primal = p.d.dot(optimal_recourse(p, aro.x, b.z_bar).y);
    worst_duality = std::max(worst_duality, std::abs(dual - primal));
    out.require(std::abs(dual - primal) <= kInvariantTol, tag + " duality residual " + num(dual - primal));
    out.require(b.lambda.maxCoeff() <= 0.0, tag + " dual sign");

    opt.method = ImprovementMethod::kMountain;
    const auto alg = algorithm1(p, aro.x, opt);
    for (const auto& step : alg.trace) {
      ++iterates;
      ++calls;
      out.require(step.p <= kImprovementCap, tag + " iterate p = " + num(step.p));
      const auto wc = fixture::adaptive_value(p, step.x, aro.vertices);
      out.require(wc && std::abs(*wc - aro.opt) <= kInvariantTol, tag + " iterate loses OPT");
    }

    // Stage-1-only objective for the interior refinement.
    auto q = p;
    q.d.setZero();
    for (int j = 0; j < 2; ++j)
      for (int l = 0; l < 2; ++l) q.C(j, l) = 0.5 * coef(crng);
    AroSolveResult qa;
    try {
      qa = solve_aro_vertices(q);
    } catch (const Error&) {
      continue;
    }
    ++refined;
    const Scenario zb = interior_point(q.uncertainty).z;
    const auto xr = refine_d0(q, qa.opt, zb);
    for (const auto& z : qa.vertices) {
      const auto v = fixture::recourse_value(q, xr, z);
      out.require(v && *v <= qa.opt + kInvariantTol, tag + " refinement breaks a cap");
    }
  }
  {
    const auto p = rt_example(0.5);
    const auto aro = solve_aro_vertices(p);
    ImprovementOptions opt;
    opt.method = ImprovementMethod::kBilinear;
    const auto b = improvement(p, scalar(35), ValueLedger::at_vertices(aro.vertices, aro.opt), opt);
    ++calls;
    out.require(b.p <= kImprovementCap, "dose model p");
    const double dual = b.lambda.dot(p.r_at(b.z_bar) - p.A0 * scalar(35));
    const double primal = p.d.dot(optimal_recourse(p, scalar(35), b.z_bar).y);
    out.require(std::abs(dual - primal) <= kInvariantTol, "dose model duality residual");
  }
  out.require(instances == 25, "only " + std::to_string(instances) + " instances");
  out.require(agreements > 0, "no instance where both methods converge");
  out.note << " " << instances << " instances, " << calls << " improvement calls, " << iterates << " iterates, "
           << agreements << " method comparisons, " << refined << " refinements, max duality residual "
           << num(worst_duality);
}

void desk_run(Outcome& out) {
  BenchmarkConfig cfg;
  cfg.instances = 30;
  cfg.seed = 1;
  cfg.threads = 0;
  const auto report = run_benchmark(cfg);
  int differing = 0, failed = 0;
  double worst_max = 0.0, worst_wc = 0.0;
  for (const auto& r : report.rows) {
    const std::string tag = "instance " + std::to_string(r.instance);
    if (r.status != "ok") {
      ++failed;
      out.require(false, tag + " " + r.status);
      continue;
    }
    worst_wc = std::max(worst_wc, std::abs(r.wc_aro - r.wc_paro));
    worst_max = std::min(worst_max, r.imp_max_aro);
    out.require(std::abs(r.wc_aro - r.wc_paro) <= kBenchTol, tag + " worst cases differ");
    out.require(r.imp_max_aro >= -kBenchTol, tag + " maximum metric " + num(r.imp_max_aro));
    if (r.l1_paro_aro > 0) ++differing;
  }
  out.require(differing > 0, "no Stage-1 difference with seed " + std::to_string(cfg.seed));
  out.note << " seed " << cfg.seed << ", " << report.rows.size() << " rows, " << failed << " failed, " << differing
           << " with differing Stage-1, max |wc gap| " << num(worst_wc) << ", min maximum metric " << num(worst_max);
}

void pwl_evidence(Outcome& out) {
  std::mt19937_64 rng(8128);
  std::uniform_real_distribution<double> uz(0.0, 1.0);
  int instances = 0, segments = 0, affine = 0;
  double worst_convex = -1e300, worst_affine = 0.0;
  for (std::uint64_t seed = 101; instances < 10 && seed <= 300; ++seed) {
    const auto p = fixture::random_rhs_instance(seed);
    Eigen::VectorXd x;
    try {
      x = solve_aro_vertices(p).x;
    } catch (const Error&) {
      continue;
    }
    ++instances;
    for (int t = 0; t < 20; ++t) {
      const Scenario a = pt(uz(rng), uz(rng)), b = pt(uz(rng), uz(rng));
      const auto ra = optimal_recourse(p, x, a), rb = optimal_recourse(p, x, b);
      const auto rm = optimal_recourse(p, x, 0.5 * (a + b));
      const double chord = 0.5 * (ra.objective + rb.objective);
      ++segments;
      worst_convex = std::max(worst_convex, rm.objective - chord);
      out.require(rm.objective <= chord + kPwlTol, "seed " + std::to_string(seed) + " not convex");
      if (ra.basis == rb.basis && rb.basis == rm.basis) {
        ++affine;
        worst_affine = std::max(worst_affine, std::abs(rm.objective - chord));
        out.require(std::abs(rm.objective - chord) <= kPwlTol, "seed " + std::to_string(seed) + " not affine");
      }
    }
  }
  out.require(instances == 10, "only " + std::to_string(instances) + " instances");
  out.require(affine > 0, "no constant-basis segment");
  out.note << " " << segments << " segments, " << affine << " on a constant basis, max midpoint excess "
           << num(worst_convex) << ", max affine residual " << num(worst_affine);
}

}  // namespace

int main() {
  const std::vector<std::function<void(Outcome&)>> criteria{
      dose_model_golden, dose_model_pareto_set, worked_examples, projection_equivalence, solver_oracles,
      vertex_oracle,     pareto_invariants,     desk_run,        pwl_evidence};
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[k](out);
    } catch (const std::exception& e) {
      out.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!out.pass) ++failures;
    std::printf("Criterion %zu: %s%s (%.1f s)\n", k + 1, out.pass ? "PASS" : "FAIL", out.note.str().c_str(), secs);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
