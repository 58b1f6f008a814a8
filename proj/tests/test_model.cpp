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
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "paroforge/error.hpp"
#include "paroforge/instances.hpp"
#include "paroforge/json_io.hpp"
#include "paroforge/model.hpp"

using namespace paro;

namespace {

bool has_violation(const ValidationReport& r, const std::string& needle) {
  return std::any_of(r.violations.begin(), r.violations.end(),
                     [&](const std::string& v) { return v.find(needle) != std::string::npos; });
}

bool has_kind(const StructureReport& r, StructureKind k) {
  return std::find(r.applicable.begin(), r.applicable.end(), k) != r.applicable.end();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Swaps parameters a and b everywhere they appear.
TwoStageProblem swap_params(TwoStageProblem p, int a, int b) {
  p.C.col(a).swap(p.C.col(b));
  std::swap(p.A[a], p.A[b]);
  p.R.col(a).swap(p.R.col(b));
  p.uncertainty.H.col(a).swap(p.uncertainty.H.col(b));
  return p;
}

}  // namespace

TEST_CASE("validate accepts the dose model") {
  CHECK(validate(rt_example(0.5)).ok());
  CHECK(validate(gen_facility_location({})).ok());
}

TEST_CASE("validate reports shape errors") {
  auto p = rt_example(0.5);
  p.A0 = Eigen::MatrixXd::Zero(p.m - 1, p.n_x);
  CHECK(has_violation(validate(p), "dimension mismatch"));
}

TEST_CASE("validate reports unbounded and empty sets") {
  auto p = rt_example(0.5);
  p.uncertainty.H = -Eigen::MatrixXd::Identity(2, 2);
  p.uncertainty.h = Eigen::VectorXd::Zero(2);
  CHECK(has_violation(validate(p), "uncertainty set unbounded"));
  p.uncertainty = make_box(Eigen::Vector2d(1, 1), Eigen::Vector2d(0, 0));
  CHECK(has_violation(validate(p), "uncertainty set empty"));
}

TEST_CASE("validate reports NaN") {
  auto p = rt_example(0.5);
  p.r0(0) = std::nan("");
  CHECK(has_violation(validate(p), "NaN"));
}

TEST_CASE("evaluate on the dose model") {
  const auto p = rt_example(0.5);
  Eigen::VectorXd x(1), y(1);
  x << 25;
  y << 30;
  auto e = evaluate(p, x, y, Eigen::Vector2d(50, 55));
  CHECK(e.objective == doctest::Approx(27.5));
  CHECK(e.feasible());
  y << 20;
  e = evaluate(p, x, y, Eigen::Vector2d(60, 60));
  CHECK_FALSE(e.feasible());
  CHECK(e.slack.minCoeff() == doctest::Approx(-15));
}

TEST_CASE("evaluate zero case and shape errors") {
  auto p = TwoStageProblem::zeros(2, 2, 3, 2);
  const auto e = evaluate(p, Eigen::VectorXd::Zero(2), Eigen::VectorXd::Zero(2), Eigen::VectorXd::Zero(2));
  CHECK(e.objective == 0.0);
  CHECK(e.slack.cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(evaluate(p, Eigen::VectorXd::Zero(1), Eigen::VectorXd::Zero(2), Eigen::VectorXd::Zero(2)),
                  Error);
}

TEST_CASE("evaluate is affine in z") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  auto p = TwoStageProblem::zeros(2, 2, 3, 2);
  auto fill = [&](auto& m) {
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j) m(i, j) = u(rng);
  };
  fill(p.c0), fill(p.C), fill(p.d), fill(p.A0), fill(p.A[0]), fill(p.A[1]), fill(p.B), fill(p.r0), fill(p.R);
  for (int t = 0; t < 20; ++t) {
    Eigen::VectorXd x = Eigen::VectorXd::Random(2), y = Eigen::VectorXd::Random(2);
    Eigen::VectorXd z1 = Eigen::VectorXd::Random(2), z2 = Eigen::VectorXd::Random(2);
    const double a = 0.5 * (u(rng) + 1);
    const double mix = evaluate(p, x, y, a * z1 + (1 - a) * z2).objective;
    const double chord = a * evaluate(p, x, y, z1).objective + (1 - a) * evaluate(p, x, y, z2).objective;
    CHECK(std::abs(mix - chord) <= 1e-9);
  }
}

TEST_CASE("structure of the constraintwise problem") {
  const auto r = detect_structure(constraintwise_example());
  CHECK(r.kind == StructureKind::kConstraintwise);
  CHECK(r.shared_params.empty());
  CHECK(r.private_params[1] == std::vector<int>{0});
  CHECK(r.private_params[2] == std::vector<int>{1, 2});
  CHECK(r.factorizes);
}

TEST_CASE("structure of the hybrid problem") {
  const auto r = detect_structure(hybrid_example());
  CHECK(r.kind == StructureKind::kHybrid);
  CHECK(r.shared_params == std::vector<int>{0});
  CHECK(r.private_params[1] == std::vector<int>{1});
  CHECK(r.private_params[2] == std::vector<int>{2, 3});
}

TEST_CASE("structure of the block problem") {
  const auto r = detect_structure(block_example());
  CHECK(r.kind == StructureKind::kBlock);
  CHECK(has_kind(r, StructureKind::kHybrid));
  REQUIRE(r.blocks.size() == 2);
  CHECK(r.blocks[0].stage2 == std::vector<int>{0, 1});
  CHECK(r.blocks[0].params == std::vector<int>{0, 1, 2, 3});
  CHECK(r.blocks[1].stage2 == std::vector<int>{2});
  CHECK(r.blocks[1].params == std::vector<int>{4, 5});
  CHECK(r.blocks[1].rows == std::vector<int>{5, 6});
}

TEST_CASE("structure of the simplex problem") {
  const auto r = detect_structure(simplex_example());
  CHECK(r.kind == StructureKind::kSimplex);
  CHECK_FALSE(r.factorizes);
  CHECK_FALSE(r.notes.empty());
}

TEST_CASE("structure of dose and facility problems") {
  CHECK(detect_structure(rt_example(0.5)).kind == StructureKind::kConstraintwise);
  const auto fl = detect_structure(gen_facility_location({}));
  CHECK(fl.kind == StructureKind::kGeneral);
  CHECK_FALSE(fl.factorizes);
}

TEST_CASE("constraintwise label survives parameter swaps") {
  const auto p = constraintwise_example();
  for (auto [a, b] : {std::pair{0, 1}, std::pair{1, 2}, std::pair{0, 2}})
    CHECK(detect_structure(swap_params(p, a, b)).kind == StructureKind::kConstraintwise);
}

TEST_CASE("bundled dose file parses to the generator output") {
  const auto p = load_problem(std::string(PAROFORGE_DATA_DIR) + "/rt_example.json");
  CHECK(p.L == 2);
  CHECK(p.n_y == 1);
  CHECK(serialize_problem(p) == serialize_problem(rt_example(0.5)));
}

TEST_CASE("schema errors name the field") {
  const std::string text = read_file(std::string(PAROFORGE_DATA_DIR) + "/rt_example.json");
  std::string broken = text;
  const auto pos = broken.find("\"B\"");
  REQUIRE(pos != std::string::npos);
  broken.replace(pos, 3, "\"X\"");
  try {
    parse_problem(broken);
    FAIL("expected a schema error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kSchema);
    CHECK(std::string(e.what()).find("'B'") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_problem("{ not json"), Error);
  const auto pos_h = text.find("[60, -50, 60, -50]");
  std::string short_h = text;
  short_h.replace(pos_h, 18, "[60, -50, 60]");
  try {
    parse_problem(short_h);
    FAIL("expected a schema error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("uncertainty.h") != std::string::npos);
  }
}

TEST_CASE("round trip matches the canonical form") {
  const std::string text = read_file(std::string(PAROFORGE_DATA_DIR) + "/rt_example.json");
  CHECK(serialize_problem(parse_problem(text)) == canonical_form(text));
  for (const auto& p : {constraintwise_example(), simplex_example(), gen_facility_location({})}) {
    const std::string doc = serialize_problem(p);
    CHECK(serialize_problem(parse_problem(doc)) == canonical_form(doc));
    CHECK(serialize_problem(parse_problem(doc)) == doc);
  }
}

TEST_CASE("explicit bounds pick up single-variable rows") {
  const auto b = explicit_bounds(rt_example(0.5));
  CHECK(b.x_lower(0) == 20);
  CHECK(b.x_upper(0) == 40);
  CHECK(b.y_lower(0) == 20);
  CHECK(b.y_upper(0) == 40);
  CHECK(b.is_bound_row == std::vector<bool>{false, false, true, true, true, true});
}
