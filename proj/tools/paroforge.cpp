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

// Command-line front end: problem validation, the solvers, the refinement
// methods, and the facility-location benchmark.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "paroforge/bench.hpp"
#include "paroforge/error.hpp"
#include "paroforge/fme.hpp"
#include "paroforge/geometry.hpp"
#include "paroforge/instances.hpp"
#include "paroforge/json_io.hpp"
#include "paroforge/pareto.hpp"
#include "paroforge/robust.hpp"

using json = nlohmann::json;
using namespace paro;

namespace {

struct Flags {
  std::string input;
  std::string out;
  std::string trace;
  std::string method = "alg1";
  std::string level = "syntactic";
  std::string x;
  std::uint64_t seed = 1;
  double tol = 1e-7;
  int max_iters = 100;
  int samples = 4;
  int instances = 30;
  int threads = 1;
  int n = 10;
  int m = 4;
  double gamma = 45.0;
  double cap = 15.0;
  double delta = 0.5;
  bool deterministic = false;
};

json vec(const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

json mat(const Eigen::MatrixXd& a) {
  json rows = json::array();
  for (int i = 0; i < a.rows(); ++i) rows.push_back(vec(a.row(i).transpose()));
  return rows;
}

json rule_json(const LinearRule& rule) { return {{"w", vec(rule.w)}, {"W", mat(rule.W)}}; }

void emit(const Flags& f, const std::string& text) {
  if (f.out.empty()) {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << "\n";
    return;
  }
  std::ofstream out(f.out);
  if (!out) throw Error(ErrorKind::kInvalidArgument, "cannot write " + f.out);
  out << text;
  if (text.empty() || text.back() != '\n') out << "\n";
}

void emit(const Flags& f, const json& j) { emit(f, j.dump(2)); }

TwoStageProblem input_problem(const Flags& f) {
  if (f.input.empty()) throw Error(ErrorKind::kInvalidArgument, "--input is required");
  return load_problem(f.input);
}

ImprovementOptions improvement_options(const Flags& f) {
  ImprovementOptions o;
  o.tol = f.tol;
  o.max_iters = f.max_iters;
  o.samples = f.samples;
  o.seed = f.seed;
  return o;
}

Eigen::VectorXd parse_x(const std::string& text, int size) {
  std::vector<double> values;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) values.push_back(std::stod(item));
  if (static_cast<int>(values.size()) != size)
    throw Error(ErrorKind::kDimensionMismatch, "--x needs " + std::to_string(size) + " values");
  return Eigen::Map<const Eigen::VectorXd>(values.data(), size);
}

int cmd_validate(const Flags& f) {
  if (f.input.empty()) throw Error(ErrorKind::kInvalidArgument, "--input is required");
  const TwoStageProblem p = load_problem(f.input, false);
  const ValidationReport report = validate(p);
  json j = {{"ok", report.ok()}, {"violations", report.violations}};
  if (report.ok()) {
    const StructureReport s = detect_structure(p);
    json kinds = json::array();
    for (auto k : s.applicable) kinds.push_back(to_string(k));
    j["structure"] = to_string(s.kind);
    j["applicable"] = kinds;
    j["rhs_only"] = p.rhs_only();
    j["simplex_set"] = is_simplex(p.uncertainty).simplex;
  }
  emit(f, j);
  return report.ok() ? 0 : 1;
}

int cmd_solve_aro(const Flags& f) {
  const TwoStageProblem p = input_problem(f);
  const AroSolveResult r = solve_aro_vertices(p);
  json per_vertex = json::array();
  for (std::size_t v = 0; v < r.vertices.size(); ++v)
    per_vertex.push_back({{"z", vec(r.vertices[v])}, {"y", vec(r.per_vertex_y[v])}});
  emit(f, json{{"x", vec(r.x)}, {"opt", r.opt}, {"vertices", per_vertex}, {"nodes", r.nodes}});
  return 0;
}

void write_trace(const Flags& f, const Algorithm1Result& r) {
  if (f.trace.empty()) return;
  json steps = json::array();
  for (const auto& s : r.trace)
    steps.push_back({{"p", s.p}, {"z", vec(s.z)}, {"x", vec(s.x)}, {"value", s.value}, {"ledger_size", s.ledger_size}});
  std::ofstream out(f.trace);
  if (!out) throw Error(ErrorKind::kInvalidArgument, "cannot write " + f.trace);
  out << json{{"opt", r.opt}, {"x", vec(r.x)}, {"certified", r.certified}, {"steps", steps}}.dump(2) << "\n";
}

int cmd_refine(const Flags& f) {
  const TwoStageProblem p = input_problem(f);
  json j = {{"method", f.method}};
  if (f.method == "alg1") {
    std::optional<Eigen::VectorXd> x0;
    if (!f.x.empty()) x0 = parse_x(f.x, p.n_x);
    const Algorithm1Result r = algorithm1(p, x0, improvement_options(f));
    write_trace(f, r);
    j["x"] = vec(r.x);
    j["opt"] = r.opt;
    j["rounds"] = r.trace.size();
    j["final_p"] = r.trace.empty() ? 0.0 : r.trace.back().p;
    j["certified"] = r.certified;
    j["hit_iteration_cap"] = r.hit_iteration_cap;
  } else if (f.method == "d0") {
    const AroSolveResult aro = solve_aro_vertices(p);
    const Eigen::VectorXd x = refine_d0(p, aro.opt);
    j["x"] = vec(x);
    j["opt"] = aro.opt;
  } else if (f.method == "pro-ldr") {
    const ProResult r = pro_ldr(p);
    j["x"] = vec(r.x);
    j["rule"] = rule_json(r.rule);
    j["worst_case"] = r.worst_case;
    j["nominal_before"] = r.nominal_before;
    j["nominal_value"] = r.nominal_value;
  } else if (f.method == "dr-paro") {
    const DrParoResult r = dr_paro(p);
    j["x"] = vec(r.x);
    j["rule"] = rule_json(r.rule);
    j["worst_case"] = r.worst_case;
    j["branch"] = r.branch;
  } else {
    throw Error(ErrorKind::kInvalidArgument, "unknown method " + f.method);
  }
  emit(f, j);
  return 0;
}

int cmd_check_extension(const Flags& f) {
  const TwoStageProblem p = input_problem(f);
  const ProResult pro = pro_ldr(p);
  const Eigen::VectorXd x = f.x.empty() ? pro.x : parse_x(f.x, p.n_x);
  const ExtensionCheck c = check_extension(p, x, pro.rule);
  emit(f, json{{"x", vec(x)},
               {"rule", rule_json(pro.rule)},
               {"bound", c.bound},
               {"z", vec(c.z)},
               {"y", vec(c.y)},
               {"certified", c.certified}});
  return 0;
}

int cmd_fme(const Flags& f) {
  const TwoStageProblem p = input_problem(f);
  RedundancyLevel level;
  if (f.level == "none") level = RedundancyLevel::kNone;
  else if (f.level == "syntactic") level = RedundancyLevel::kSyntactic;
  else if (f.level == "lp") level = RedundancyLevel::kLp;
  else throw Error(ErrorKind::kInvalidArgument, "unknown level " + f.level);
  EliminationResult r = eliminate(p, p.n_y);
  if (level != RedundancyLevel::kNone) r = filter_redundant(p, r, level);
  json ledger = json::array();
  for (std::size_t k = 0; k < r.order.size(); ++k) {
    json records = json::array();
    for (const auto& b : r.ledger[k]) {
      json alpha = json::object(), beta = json::object();
      for (const auto& [row, a] : b.alpha) alpha[std::to_string(row)] = a;
      for (const auto& [var, c] : b.beta) beta[std::to_string(var)] = c;
      records.push_back({{"kind", b.kind == BoundKind::kLower ? "lower" : "upper"}, {"alpha", alpha}, {"beta", beta}});
    }
    ledger.push_back({{"variable", r.order[k]}, {"bounds", records}});
  }
  json G = json::array();
  for (const auto& g : r.G) G.push_back(mat(g));
  emit(f, json{{"order", r.order},
               {"rows_before", r.rows_before},
               {"rows_after", r.rows_after},
               {"G0", mat(r.G0)},
               {"G", G},
               {"f0", vec(r.f0)},
               {"F", mat(r.F)},
               {"ledger", ledger}});
  return 0;
}

int cmd_vertices(const Flags& f) {
  const TwoStageProblem p = input_problem(f);
  const VertexList v = enumerate_vertices(p.uncertainty);
  json list = json::array();
  for (const auto& z : v.vertices) list.push_back(vec(z));
  emit(f, json{{"count", v.vertices.size()}, {"vertices", list}});
  return 0;
}

int cmd_bench(const Flags& f) {
  BenchmarkConfig c;
  c.instance.n = f.n;
  c.instance.m = f.m;
  c.instance.gamma = f.gamma;
  c.instance.capacity = f.cap;
  c.instances = f.instances;
  c.seed = f.seed;
  c.threads = f.threads;
  c.comparison.improvement = improvement_options(f);
  c.comparison.max_rounds = f.max_iters;
  const BenchmarkReport report = run_benchmark(c);
  emit(f, report.to_csv(f.deterministic));
  return 0;
}

int cmd_rt(const Flags& f) {
  const TwoStageProblem p = rt_example(f.delta);
  const AroSolveResult aro = solve_aro_vertices(p);
  Eigen::VectorXd x25(1), x35(1), y35(1);
  x25 << 25.0;
  x35 << 35.0;
  y35 << 35.0;
  json rows = json::array();
  for (const auto& [a, b] : std::vector<std::pair<double, double>>{{60, 60}, {50, 55}, {50, 50}}) {
    Scenario z(2);
    z << a, b;
    rows.push_back({{"z", vec(z)},
                    {"x25_optimal", optimal_recourse(p, x25, z).objective},
                    {"x35_optimal", optimal_recourse(p, x35, z).objective},
                    {"x25_static35", p.c_at(z).dot(x25) + p.d.dot(evaluate_rule(p, x25, z, StaticRule{y35}))}});
  }
  const Algorithm1Result paro = algorithm1(p, x35, improvement_options(f));
  write_trace(f, paro);
  emit(f, json{{"delta", f.delta}, {"opt", aro.opt}, {"table", rows}, {"paro_from_35", vec(paro.x)}});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"paroforge: two-stage adaptive robust optimization with Pareto refinement"};
  app.require_subcommand(1);
  Flags f;
  auto input = [&](CLI::App* c) { c->add_option("--input", f.input, "problem JSON file"); };
  auto out = [&](CLI::App* c) { c->add_option("--out", f.out, "output file (default stdout)"); };
  auto refine_opts = [&](CLI::App* c) {
    c->add_option("--seed", f.seed, "sampling seed");
    c->add_option("--tol", f.tol, "convergence tolerance");
    c->add_option("--max-iters", f.max_iters, "iteration cap");
    c->add_option("--samples", f.samples, "sampled warm starts");
    c->add_option("--trace", f.trace, "write the refinement trace as JSON");
  };

  auto* validate_cmd = app.add_subcommand("validate", "check a problem file and report its structure");
  input(validate_cmd);
  out(validate_cmd);
  auto* aro_cmd = app.add_subcommand("solve-aro", "worst-case optimal Stage-1 decision");
  input(aro_cmd);
  out(aro_cmd);
  auto* refine_cmd = app.add_subcommand("refine", "Pareto refinement of the worst-case optimum");
  input(refine_cmd);
  out(refine_cmd);
  refine_opts(refine_cmd);
  refine_cmd->add_option("--method", f.method, "alg1, d0, pro-ldr or dr-paro")
      ->check(CLI::IsMember({"alg1", "d0", "pro-ldr", "dr-paro"}));
  refine_cmd->add_option("--x", f.x, "comma-separated starting Stage-1 decision (alg1)");
  auto* ext_cmd = app.add_subcommand("check-extension", "bound on the loss of the PRO decision rule");
  input(ext_cmd);
  out(ext_cmd);
  ext_cmd->add_option("--x", f.x, "comma-separated Stage-1 decision to test");
  auto* fme_cmd = app.add_subcommand("fme", "eliminate all Stage-2 variables");
  input(fme_cmd);
  out(fme_cmd);
  fme_cmd->add_option("--level", f.level, "redundancy filter: none, syntactic or lp")
      ->check(CLI::IsMember({"none", "syntactic", "lp"}));
  auto* vert_cmd = app.add_subcommand("vertices", "vertices of the uncertainty set");
  input(vert_cmd);
  out(vert_cmd);
  auto* bench_cmd = app.add_subcommand("bench-fl", "facility-location comparison as CSV");
  out(bench_cmd);
  refine_opts(bench_cmd);
  bench_cmd->add_option("--instances", f.instances, "number of instances");
  bench_cmd->add_option("--n", f.n, "candidate facilities");
  bench_cmd->add_option("--m", f.m, "demand locations");
  bench_cmd->add_option("--gamma", f.gamma, "total demand cap");
  bench_cmd->add_option("--cap", f.cap, "facility capacity");
  bench_cmd->add_option("--threads", f.threads, "worker threads, 0 for all cores");
  bench_cmd->add_flag("--deterministic", f.deterministic, "omit the timestamp and runtimes");
  auto* rt_cmd = app.add_subcommand("rt", "dose-planning example values");
  out(rt_cmd);
  refine_opts(rt_cmd);
  rt_cmd->add_option("--delta", f.delta, "healthy-tissue fraction");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*validate_cmd) return cmd_validate(f);
    if (*aro_cmd) return cmd_solve_aro(f);
    if (*refine_cmd) return cmd_refine(f);
    if (*ext_cmd) return cmd_check_extension(f);
    if (*fme_cmd) return cmd_fme(f);
    if (*vert_cmd) return cmd_vertices(f);
    if (*bench_cmd) return cmd_bench(f);
    if (*rt_cmd) return cmd_rt(f);
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
