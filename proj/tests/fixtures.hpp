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

// Random problem generators and brute-force checks shared by the unit tests
// and the acceptance binary.

#ifndef PAROFORGE_TESTS_FIXTURES_HPP_
#define PAROFORGE_TESTS_FIXTURES_HPP_

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>

#include "oracles.hpp"
#include "paroforge/fme.hpp"
#include "paroforge/model.hpp"

namespace fixture {

// Coefficients on a half-integer grid in [-3, 3], zero with probability 1/3.
inline double grid_coef(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(-6, 6);
  std::uniform_int_distribution<int> zero(0, 2);
  return zero(rng) == 0 ? 0.0 : 0.5 * pick(rng);
}

// Two x, one to three bounded y, two parameters on the unit box.
inline paro::TwoStageProblem random_fme_instance(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int n_y = 1 + static_cast<int>(seed % 3);
  const int core = 4;
  const int m = core + 2 * n_y;
  auto p = paro::TwoStageProblem::zeros(2, n_y, m, 2);
  for (int i = 0; i < core; ++i) {
    for (int j = 0; j < 2; ++j) p.A0(i, j) = grid_coef(rng);
    for (int l = 0; l < 2; ++l)
      for (int j = 0; j < 2; ++j) p.A[l](i, j) = 0.5 * grid_coef(rng);
    for (int k = 0; k < n_y; ++k) p.B(i, k) = grid_coef(rng);
    p.r0(i) = 1.0 + std::abs(grid_coef(rng));
    for (int l = 0; l < 2; ++l) p.R(i, l) = grid_coef(rng);
  }
  for (int k = 0; k < n_y; ++k) {
    p.B(core + 2 * k, k) = 1.0;
    p.r0(core + 2 * k) = 5.0;
    p.B(core + 2 * k + 1, k) = -1.0;
    p.r0(core + 2 * k + 1) = 5.0;
  }
  for (int j = 0; j < 2; ++j) p.c0(j) = grid_coef(rng);
  for (int k = 0; k < n_y; ++k) p.d(k) = grid_coef(rng);
  p.uncertainty = paro::make_box(Eigen::VectorXd::Zero(2), Eigen::VectorXd::Ones(2));
  return p;
}

// RHS-only variant with x confined to [-3, 3]^2 by explicit rows.
inline paro::TwoStageProblem random_rhs_instance(std::uint64_t seed) {
  const auto base = random_fme_instance(seed);
  auto p = paro::TwoStageProblem::zeros(2, base.n_y, base.m + 4, 2);
  p.A0.topRows(base.m) = base.A0;
  p.B.topRows(base.m) = base.B;
  p.r0.head(base.m) = base.r0;
  p.R.topRows(base.m) = base.R;
  for (int j = 0; j < 2; ++j) {
    p.A0(base.m + 2 * j, j) = 1.0;
    p.r0(base.m + 2 * j) = 3.0;
    p.A0(base.m + 2 * j + 1, j) = -1.0;
    p.r0(base.m + 2 * j + 1) = 3.0;
  }
  p.c0 = base.c0;
  p.d = base.d;
  p.uncertainty = base.uncertainty;
  return p;
}

// Optimal recourse value by vertex enumeration over the bounded y-set, or
// nothing when no recourse exists.
inline std::optional<double> recourse_value(const paro::TwoStageProblem& p, const Eigen::VectorXd& x,
                                            const paro::Scenario& z) {
  const auto pts = oracle::basic_points(p.B, p.r_at(z) - p.A_at(z) * x);
  if (pts.empty()) return std::nullopt;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& y : pts) best = std::min(best, p.d.dot(y));
  return p.c_at(z).dot(x) + best;
}

// Worst case of the optimal recourse over the given scenarios.
inline std::optional<double> adaptive_value(const paro::TwoStageProblem& p, const Eigen::VectorXd& x,
                                            const std::vector<paro::Scenario>& scenarios) {
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& z : scenarios) {
    const auto v = recourse_value(p, x, z);
    if (!v) return std::nullopt;
    worst = std::max(worst, *v);
  }
  return worst;
}

// Does some y satisfy B y <= r(z) - A(z) x? The y-box makes the set bounded,
// so it is nonempty exactly when it has a vertex.
inline bool recourse_exists(const paro::TwoStageProblem& p, const Eigen::VectorXd& x,
                            const paro::Scenario& z) {
  return !oracle::basic_points(p.B, p.r_at(z) - p.A_at(z) * x).empty();
}

struct EquivalenceTally {
  int checked = 0;
  int skipped = 0;  // too close to the boundary to call
  int mismatches = 0;
  int repair_failures = 0;  // back-substituted y violating a row
};

// Projection check for one instance over `points` random (x, z) pairs.
inline void check_projection(std::uint64_t seed, int points, EquivalenceTally& tally) {
  const auto p = random_fme_instance(seed);
  const auto elim = paro::eliminate(p, p.n_y);
  std::mt19937_64 rng(seed * 7919 + 1);
  std::uniform_real_distribution<double> ux(-3.0, 3.0), uz(0.0, 1.0);
  for (int t = 0; t < points; ++t) {
    Eigen::VectorXd x(2);
    x << ux(rng), ux(rng);
    paro::Scenario z(2);
    z << uz(rng), uz(rng);
    const Eigen::VectorXd viol = elim.G_at(z) * x - elim.f_at(z);
    const double worst = viol.size() ? viol.maxCoeff() : -1.0;
    if (std::abs(worst) < 1e-6) {
      ++tally.skipped;
      continue;
    }
    ++tally.checked;
    const bool projected = worst < 0;
    if (projected != recourse_exists(p, x, z)) ++tally.mismatches;
    if (projected) {
      const Eigen::VectorXd y =
          paro::reconstruct_recourse(p, elim, x, z, paro::RecoursePolicy::kMidpoint);
      const Eigen::VectorXd slack = p.r_at(z) - p.A_at(z) * x - p.B * y;
      if (slack.minCoeff() < -1e-6) ++tally.repair_failures;
    }
  }
}

}  // namespace fixture

#endif  // PAROFORGE_TESTS_FIXTURES_HPP_
