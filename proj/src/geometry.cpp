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

#include "paroforge/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "paroforge/error.hpp"
#include "paroforge/lp.hpp"

namespace paro {
namespace {

constexpr int kBurnIn = 100;
constexpr int kThinning = 10;

double log_binomial(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

LpProblem set_lp(const UncertaintySet& set, const Eigen::VectorXd& objective) {
  LpProblem p;
  p.objective = objective;
  p.A = set.H;
  p.b = set.h;
  p.lower = Eigen::VectorXd::Constant(set.dim(), -kInf);
  p.upper = Eigen::VectorXd::Constant(set.dim(), kInf);
  return p;
}

bool feasible(const UncertaintySet& set, const Scenario& z, double tol) {
  for (int i = 0; i < set.num_rows(); ++i)
    if (set.H.row(i).dot(z) > set.h(i) + tol * (1.0 + std::abs(set.h(i)))) return false;
  return true;
}

// Orthonormal basis of the linear span of (v_i - v_0).
Eigen::MatrixXd affine_hull_basis(const std::vector<Scenario>& vertices) {
  const int L = static_cast<int>(vertices.front().size());
  const int k = static_cast<int>(vertices.size()) - 1;
  if (k == 0) return Eigen::MatrixXd(L, 0);
  Eigen::MatrixXd diffs(L, k);
  for (int i = 0; i < k; ++i) diffs.col(i) = vertices[i + 1] - vertices[0];
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(diffs, Eigen::ComputeThinU);
  const double scale = std::max(1.0, svd.singularValues()(0));
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > 1e-9 * scale) ++rank;
  return svd.matrixU().leftCols(rank);
}

}  // namespace

VertexList enumerate_vertices(const UncertaintySet& set, double tol) {
  const int L = set.dim();
  const int k = set.num_rows();
  if (L > kMaxVertexDim)
    throw Error(ErrorKind::kGuardExceeded, "vertex enumeration: L = " + std::to_string(L) + " > 12");
  if (k >= L && log_binomial(k, L) > std::log(kMaxVertexSubsets))
    throw Error(ErrorKind::kGuardExceeded, "vertex enumeration: C(" + std::to_string(k) + ", " +
                                               std::to_string(L) + ") exceeds 1e6 subsets");
  if (!is_bounded(set)) throw Error(ErrorKind::kUnbounded, "vertex enumeration: unbounded set");

  VertexList out;
  out.dedup_tol = tol;
  if (L == 0) {
    if (!is_empty(set)) out.vertices.emplace_back(0);
    return out;
  }
  std::vector<int> idx(L);
  for (int i = 0; i < L; ++i) idx[i] = i;
  Eigen::MatrixXd M(L, L);
  Eigen::VectorXd rhs(L);
  while (k >= L) {
    for (int i = 0; i < L; ++i) {
      M.row(i) = set.H.row(idx[i]);
      rhs(i) = set.h(idx[i]);
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
    lu.setThreshold(1e-10);
    if (lu.isInvertible()) {
      const Scenario z = lu.solve(rhs);
      if (feasible(set, z, tol)) {
        const bool seen = std::any_of(out.vertices.begin(), out.vertices.end(), [&](const Scenario& v) {
          return (v - z).cwiseAbs().maxCoeff() <= tol;
        });
        if (!seen) out.vertices.push_back(z);
      }
    }
    int i = L - 1;
    while (i >= 0 && idx[i] == k - L + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < L; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

std::vector<Scenario> vertices_of(const UncertaintySet& set) {
  if (set.vertices) return *set.vertices;
  return enumerate_vertices(set).vertices;
}

bool is_empty(const UncertaintySet& set) {
  const auto sol = solve_lp(set_lp(set, Eigen::VectorXd::Zero(set.dim())));
  return sol.status == LpStatus::kInfeasible;
}

bool is_bounded(const UncertaintySet& set) {
  for (int l = 0; l < set.dim(); ++l) {
    for (double sign : {1.0, -1.0}) {
      Eigen::VectorXd c = Eigen::VectorXd::Zero(set.dim());
      c(l) = sign;
      if (solve_lp(set_lp(set, c)).status == LpStatus::kUnbounded) return false;
    }
  }
  return true;
}

InteriorPoint interior_point(const UncertaintySet& set) {
  const auto vertices = vertices_of(set);
  if (vertices.empty()) throw Error(ErrorKind::kInfeasible, "interior point: empty set");
  InteriorPoint out;
  out.z = Scenario::Zero(set.dim());
  for (const auto& v : vertices) out.z += v;
  out.z /= static_cast<double>(vertices.size());
  out.slack = set.h - set.H * out.z;
  for (int i = 0; i < set.num_rows(); ++i)
    if (out.slack(i) <= 1e-7 * (1.0 + std::abs(set.h(i)))) out.implicit_equalities.push_back(i);
  return out;
}

SimplexTest is_simplex(const UncertaintySet& set) {
  const auto vertices = vertices_of(set);
  SimplexTest out;
  out.vertex_count = static_cast<int>(vertices.size());
  if (vertices.size() < 2) {
    out.simplex = vertices.size() == 1 && set.dim() == 0;
    return out;
  }
  Eigen::MatrixXd diffs(set.dim(), vertices.size() - 1);
  for (std::size_t i = 1; i < vertices.size(); ++i) diffs.col(i - 1) = vertices[i] - vertices[0];
  Eigen::FullPivLU<Eigen::MatrixXd> lu(diffs);
  lu.setThreshold(1e-9);
  out.rank = static_cast<int>(lu.rank());
  out.simplex = out.vertex_count == set.dim() + 1 && out.rank == set.dim();
  return out;
}

std::vector<Scenario> sample_uniform(const UncertaintySet& set, int count, std::uint64_t seed) {
  const auto vertices = vertices_of(set);
  if (vertices.empty()) throw Error(ErrorKind::kInfeasible, "sampling: empty set");
  const Eigen::MatrixXd basis = affine_hull_basis(vertices);
  Scenario z = interior_point(set).z;
  std::vector<Scenario> out;
  out.reserve(count);
  if (basis.cols() == 0) {
    out.assign(count, z);
    return out;
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto step = [&]() {
    Eigen::VectorXd u(basis.cols());
    for (int i = 0; i < u.size(); ++i) u(i) = gauss(rng);
    const Eigen::VectorXd dir = basis * u.normalized();
    const Eigen::VectorXd hd = set.H * dir;
    const Eigen::VectorXd room = set.h - set.H * z;
    double lo = -kInf, hi = kInf;
    for (int i = 0; i < hd.size(); ++i) {
      if (std::abs(hd(i)) <= 1e-12) continue;
      const double t = std::max(room(i), 0.0) / hd(i);
      if (hd(i) > 0) hi = std::min(hi, t);
      else lo = std::max(lo, t);
    }
    if (!(lo < hi)) return;
    z += (lo + (hi - lo) * unit(rng)) * dir;
  };
  for (int i = 0; i < kBurnIn; ++i) step();
  while (static_cast<int>(out.size()) < count) {
    for (int i = 0; i < kThinning; ++i) step();
    out.push_back(z);
  }
  return out;
}

}  // namespace paro
