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

#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "paroforge/error.hpp"
#include "paroforge/geometry.hpp"
#include "paroforge/instances.hpp"
#include "paroforge/lp.hpp"

using namespace paro;

namespace {

bool same_set(const std::vector<Scenario>& a, const std::vector<Scenario>& b, double tol) {
  if (a.size() != b.size()) return false;
  for (const auto& p : a) {
    bool found = false;
    for (const auto& q : b) found = found || (p - q).cwiseAbs().maxCoeff() <= tol;
    if (!found) return false;
  }
  return true;
}

UncertaintySet standard_simplex(int L) {
  UncertaintySet u;
  u.H = Eigen::MatrixXd::Zero(L + 1, L);
  u.h = Eigen::VectorXd::Zero(L + 1);
  u.H.row(0).setOnes();
  u.h(0) = 1;
  u.H.bottomRows(L) = -Eigen::MatrixXd::Identity(L, L);
  return u;
}

// Random bounded polytope: a box plus random cuts through a perturbed centre.
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

}  // namespace

TEST_CASE("box vertices") {
  const auto v = enumerate_vertices(make_box(Eigen::Vector2d(0, 0), Eigen::Vector2d(1, 1))).vertices;
  CHECK(same_set(v, {Eigen::Vector2d(0, 0), Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 1), Eigen::Vector2d(1, 1)},
                 1e-9));
}

TEST_CASE("cut box vertices") {
  UncertaintySet u = make_box(Eigen::Vector2d(0, 0), Eigen::Vector2d(1, 1));
  u.H.conservativeResize(5, 2);
  u.h.conservativeResize(5);
  u.H.row(4) << 1, 1;
  u.h(4) = 1.5;
  const auto v = enumerate_vertices(u).vertices;
  CHECK(same_set(v,
                 {Eigen::Vector2d(0, 0), Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 1), Eigen::Vector2d(1, 0.5),
                  Eigen::Vector2d(0.5, 1)},
                 1e-9));
}

TEST_CASE("standard simplex vertices and test") {
  const auto u = standard_simplex(3);
  const auto v = enumerate_vertices(u).vertices;
  CHECK(v.size() == 4);
  const auto s = is_simplex(u);
  CHECK(s.simplex);
  CHECK(s.rank == 3);
  CHECK_FALSE(is_simplex(make_box(Eigen::Vector2d(0, 0), Eigen::Vector2d(1, 1))).simplex);
}

TEST_CASE("repeated vertex is not a simplex") {
  UncertaintySet u = standard_simplex(2);
  u.vertices = std::vector<Scenario>{Eigen::Vector2d(0, 0), Eigen::Vector2d(1, 0), Eigen::Vector2d(1, 0)};
  const auto s = is_simplex(u);
  CHECK_FALSE(s.simplex);
  CHECK(s.rank == 1);
}

TEST_CASE("guards and unbounded sets") {
  UncertaintySet u;
  u.H = -Eigen::MatrixXd::Identity(2, 2);
  u.h = Eigen::VectorXd::Zero(2);
  CHECK_THROWS_AS(enumerate_vertices(u), Error);
  const auto big = make_box(Eigen::VectorXd::Zero(13), Eigen::VectorXd::Ones(13));
  try {
    enumerate_vertices(big);
    FAIL("expected guard");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kGuardExceeded);
  }
}

TEST_CASE("vertex enumeration matches brute force on random polytopes") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> Ld(1, 4);
  for (int trial = 0; trial < 50; ++trial) {
    const int L = Ld(rng);
    std::uniform_int_distribution<int> kd(2 * L, std::max(2 * L, 10));
    const auto u = random_polytope(rng, L, kd(rng));
    const auto expected = oracle::unique_points(oracle::basic_points(u.H, u.h), 1e-7);
    const auto got = enumerate_vertices(u).vertices;
    CAPTURE(trial);
    CHECK(same_set(got, expected, 1e-7));
  }
}

TEST_CASE("interior points") {
  const auto box = interior_point(make_box(Eigen::Vector2d(0, 0), Eigen::Vector2d(1, 1)));
  CHECK(box.z.isApprox(Eigen::Vector2d(0.5, 0.5)));
  const auto simplex = interior_point(standard_simplex(3));
  CHECK(simplex.z.isApprox(Eigen::Vector3d::Constant(0.25)));
  CHECK(simplex.slack.isApprox(Eigen::Vector4d::Constant(0.25)));
  CHECK(simplex.implicit_equalities.empty());
}

TEST_CASE("facility location nominal is interior") {
  FacilityLocationConfig cfg;
  cfg.n = 2;
  cfg.m = 8;
  cfg.gamma = 90;
  const auto p = gen_facility_location(cfg);
  const Eigen::VectorXd slack = p.uncertainty.h - p.uncertainty.H * *p.uncertainty.nominal;
  CHECK(slack.minCoeff() > 0);
  CHECK(slack(0) == doctest::Approx(10));
}

TEST_CASE("implicit equalities are reported") {
  UncertaintySet u = make_box(Eigen::Vector2d(0, 0), Eigen::Vector2d(1, 0));
  const auto ip = interior_point(u);
  CHECK(ip.implicit_equalities.size() == 2);
  for (const auto& z : sample_uniform(u, 50, 1)) CHECK(std::abs(z(1)) <= 1e-9);
}

TEST_CASE("samples stay feasible and are reproducible") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const auto u = random_polytope(rng, 3, 9);
    const auto a = sample_uniform(u, 100, trial);
    const auto b = sample_uniform(u, 100, trial);
    REQUIRE(a.size() == 100);
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK((u.H * a[i] - u.h).maxCoeff() <= 1e-9);
      CHECK(a[i] == b[i]);
    }
  }
}

TEST_CASE("box samples have the right mean") {
  const auto s = sample_uniform(make_box(Eigen::Vector2d(0, 0), Eigen::Vector2d(1, 1)), 10000, 42);
  Eigen::Vector2d mean = Eigen::Vector2d::Zero();
  for (const auto& z : s) mean += z;
  mean /= s.size();
  CHECK(std::abs(mean(0) - 0.5) <= 0.02);
  CHECK(std::abs(mean(1) - 0.5) <= 0.02);
}

TEST_CASE("linear maximum over vertices equals the lp maximum") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const auto u = random_polytope(rng, 3, 8);
    const Eigen::VectorXd c = Eigen::VectorXd::Random(3);
    LpProblem lp;
    lp.objective = -c;
    lp.A = u.H;
    lp.b = u.h;
    lp.lower = Eigen::VectorXd::Constant(3, -kInf);
    lp.upper = Eigen::VectorXd::Constant(3, kInf);
    const auto s = solve_lp(lp);
    REQUIRE(s.optimal());
    double best = -kInf;
    for (const auto& v : enumerate_vertices(u).vertices) best = std::max(best, c.dot(v));
    CHECK(std::abs(best + s.objective) <= 1e-7);
  }
}
