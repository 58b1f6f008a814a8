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

#include "paroforge/instances.hpp"

#include <random>

#include "paroforge/error.hpp"

namespace paro {
namespace {

// Adds the row  a_x' x + b' y <= r0 + R z  to a problem being assembled.
struct RowWriter {
  TwoStageProblem& p;
  int next = 0;
  void add(std::initializer_list<std::pair<int, double>> x, std::initializer_list<std::pair<int, double>> y,
           double r0, std::initializer_list<std::pair<int, double>> z = {}) {
    for (auto [j, v] : x) p.A0(next, j) = v;
    for (auto [k, v] : y) p.B(next, k) = v;
    p.r0(next) = r0;
    for (auto [l, v] : z) p.R(next, l) = v;
    ++next;
  }
};

// Rows shared by the hybrid-family problems: z = (zhat, z1, z2, z3, ...).
void hybrid_rows(RowWriter& w) {
  w.add({{0, 1}}, {{1, -1}}, 0, {{0, -1}, {1, -0.5}});
  w.add({{0, -1}}, {{0, 1}, {1, 1}}, 2, {{0, 1}, {2, 0.5}, {3, 0.5}});
  w.add({}, {{0, -1}}, -1);
  w.add({}, {{1, -1}}, -1.5);
  w.add({}, {{1, 1}}, 2);
}

}  // namespace

TwoStageProblem rt_example(double delta) {
  if (!(delta > 0)) throw Error(ErrorKind::kInvalidArgument, "rt_example: delta must be positive");
  TwoStageProblem p = TwoStageProblem::zeros(1, 1, 6, 2);
  p.c0(0) = delta;
  p.d(0) = delta;
  RowWriter w{p};
  w.add({{0, -1}}, {{0, -1}}, 0, {{0, -1}});
  w.add({{0, -1}}, {{0, -1}}, 0, {{1, -1}});
  w.add({{0, -1}}, {}, -20);
  w.add({{0, 1}}, {}, 40);
  w.add({}, {{0, -1}}, -20);
  w.add({}, {{0, 1}}, 40);
  p.uncertainty = make_box(Eigen::Vector2d(50, 50), Eigen::Vector2d(60, 60));
  return p;
}

TwoStageProblem rt_epigraph_example(double delta) {
  if (!(delta > 0)) throw Error(ErrorKind::kInvalidArgument, "rt_epigraph_example: delta must be positive");
  TwoStageProblem p = TwoStageProblem::zeros(2, 1, 7, 2);  // x = (x, t)
  p.c0(1) = 1.0;
  RowWriter w{p};
  w.add({{0, -1}}, {}, -20);
  w.add({{0, 1}}, {}, 40);
  w.add({{0, 1}, {1, -1.0 / delta}}, {{0, 1}}, 0);
  w.add({{0, -1}}, {{0, -1}}, 0, {{0, -1}});
  w.add({{0, -1}}, {{0, -1}}, 0, {{1, -1}});
  w.add({}, {{0, -1}}, -20);
  w.add({}, {{0, 1}}, 40);
  p.uncertainty = make_box(Eigen::Vector2d(50, 50), Eigen::Vector2d(60, 60));
  return p;
}

TwoStageProblem constraintwise_example() {
  TwoStageProblem p = TwoStageProblem::zeros(1, 2, 5, 3);
  p.c0(0) = 1.0;
  RowWriter w{p};
  w.add({{0, 1}}, {{1, -1}}, 0, {{0, -0.5}});
  w.add({{0, -1}}, {{0, 1}, {1, 1}}, 2, {{1, 0.5}, {2, 0.5}});
  w.add({}, {{0, -1}}, -1);
  w.add({}, {{1, -1}}, -1.5);
  w.add({}, {{1, 1}}, 2);
  p.uncertainty = make_box(Eigen::Vector3d::Zero(), Eigen::Vector3d::Ones());
  return p;
}

TwoStageProblem hybrid_example() {
  TwoStageProblem p = TwoStageProblem::zeros(1, 2, 5, 4);
  p.c0(0) = 1.0;
  RowWriter w{p};
  hybrid_rows(w);
  p.uncertainty = make_box(Eigen::Vector4d::Zero(), Eigen::Vector4d::Ones());
  return p;
}

TwoStageProblem block_example() {
  TwoStageProblem p = TwoStageProblem::zeros(1, 3, 7, 6);
  p.c0(0) = 1.0;
  RowWriter w{p};
  hybrid_rows(w);
  w.add({{0, 1}}, {{2, 1}}, 1.5, {{4, -0.5}});
  w.add({{0, -2}}, {{2, -1}}, -1, {{5, -0.5}});
  p.uncertainty = make_box(Eigen::VectorXd::Zero(6), Eigen::VectorXd::Ones(6));
  return p;
}

TwoStageProblem simplex_example() {
  TwoStageProblem p = TwoStageProblem::zeros(1, 2, 5, 3);
  p.c0(0) = 1.0;
  RowWriter w{p};
  w.add({{0, 1}}, {{1, -1}}, -0.5, {{0, -1}, {1, -0.5}});
  w.add({{0, -1}}, {{0, 1}, {1, 1}}, 2, {{0, 1}, {2, 1}});
  w.add({}, {{0, -1}}, -1);
  w.add({}, {{1, -1}}, -1.5);
  w.add({}, {{1, 1}}, 2);
  UncertaintySet u;
  u.H.resize(4, 3);
  u.H << 1, 1, 1, -1, 0, 0, 0, -1, 0, 0, 0, -1;
  u.h.resize(4);
  u.h << 1, 0, 0, 0;
  p.uncertainty = u;
  return p;
}

TwoStageProblem pwl_example() {
  TwoStageProblem p = TwoStageProblem::zeros(1, 2, 6, 4);
  p.c0(0) = 1.0;
  p.d << -1.0, 1.0;
  RowWriter w{p};
  hybrid_rows(w);
  w.add({}, {{0, 1}}, 2);
  p.uncertainty = make_box(Eigen::Vector4d::Zero(), Eigen::Vector4d::Ones());
  return p;
}

TwoStageProblem gen_facility_location(const FacilityLocationConfig& cfg) {
  if (cfg.n <= 0 || cfg.m <= 0 || cfg.l > cfg.u || cfg.gamma < cfg.m * cfg.l || cfg.f_lo > cfg.f_hi ||
      cfg.c_lo > cfg.c_hi)
    throw Error(ErrorKind::kInvalidArgument, "facility location: invalid configuration");
  const int n = cfg.n, m = cfg.m;
  const int n_y = n * m;
  const int rows = m + n + n_y + 2 * n;
  TwoStageProblem p = TwoStageProblem::zeros(n, n_y, rows, m);
  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<int> fdist(cfg.f_lo, cfg.f_hi), cdist(cfg.c_lo, cfg.c_hi);
  for (int i = 0; i < n; ++i) p.c0(i) = fdist(rng);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) p.d(i * m + j) = cdist(rng);

  int row = 0;
  for (int j = 0; j < m; ++j, ++row) {
    for (int i = 0; i < n; ++i) p.B(row, i * m + j) = -1.0;
    p.R(row, j) = -1.0;
  }
  for (int i = 0; i < n; ++i, ++row) {
    for (int j = 0; j < m; ++j) p.B(row, i * m + j) = 1.0;
    p.A0(row, i) = -cfg.capacity;
  }
  for (int k = 0; k < n_y; ++k, ++row) p.B(row, k) = -1.0;
  for (int i = 0; i < n; ++i) {
    p.A0(row++, i) = -1.0;
    p.A0(row, i) = 1.0;
    p.r0(row++) = 1.0;
  }
  p.integrality.assign(n, true);

  UncertaintySet u;
  u.H = Eigen::MatrixXd::Zero(1 + 2 * m, m);
  u.h.resize(1 + 2 * m);
  u.H.row(0).setOnes();
  u.h(0) = cfg.gamma;
  for (int j = 0; j < m; ++j) {
    u.H(1 + 2 * j, j) = 1.0;
    u.h(1 + 2 * j) = cfg.u;
    u.H(2 + 2 * j, j) = -1.0;
    u.h(2 + 2 * j) = -cfg.l;
  }
  u.nominal = Eigen::VectorXd::Constant(m, 0.5 * (cfg.l + cfg.u));
  p.uncertainty = u;
  return p;
}

}  // namespace paro
