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

// Brute-force reference solvers used by the tests. None of them touch the
// library's simplex code.

#ifndef PAROFORGE_TESTS_ORACLES_HPP_
#define PAROFORGE_TESTS_ORACLES_HPP_

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

namespace oracle {

// Calls fn(subset) for every k-subset of {0..n-1}, in lexicographic order.
inline void for_each_subset(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
  if (k > n) return;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    fn(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// All basic feasible points of {x : G x <= g}: every n-subset of rows with a
// nonsingular system, solved and filtered for feasibility. Duplicates kept.
inline std::vector<Eigen::VectorXd> basic_points(const Eigen::MatrixXd& G, const Eigen::VectorXd& g,
                                                 double tol = 1e-7) {
  const int n = static_cast<int>(G.cols());
  const int k = static_cast<int>(G.rows());
  std::vector<Eigen::VectorXd> out;
  for_each_subset(k, n, [&](const std::vector<int>& rows) {
    Eigen::MatrixXd M(n, n);
    Eigen::VectorXd rhs(n);
    for (int i = 0; i < n; ++i) {
      M.row(i) = G.row(rows[i]);
      rhs(i) = g(rows[i]);
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
    lu.setThreshold(1e-10);
    if (!lu.isInvertible()) return;
    Eigen::VectorXd x = lu.solve(rhs);
    if (((G * x - g).array() <= tol * (1.0 + g.cwiseAbs().array())).all()) out.push_back(x);
  });
  return out;
}

// Same set with ell-infinity deduplication.
inline std::vector<Eigen::VectorXd> unique_points(const std::vector<Eigen::VectorXd>& pts, double tol) {
  std::vector<Eigen::VectorXd> out;
  for (const auto& p : pts) {
    bool seen = false;
    for (const auto& q : out)
      if ((p - q).cwiseAbs().maxCoeff() <= tol) {
        seen = true;
        break;
      }
    if (!seen) out.push_back(p);
  }
  return out;
}

// min c'x s.t. A x <= b, lo <= x <= up (all bounds finite) by brute force.
inline std::optional<double> lp_min(const Eigen::VectorXd& c, const Eigen::MatrixXd& A,
                                    const Eigen::VectorXd& b, const Eigen::VectorXd& lo,
                                    const Eigen::VectorXd& up) {
  const int n = static_cast<int>(c.size());
  const int m = static_cast<int>(A.rows());
  Eigen::MatrixXd G(m + 2 * n, n);
  Eigen::VectorXd g(m + 2 * n);
  G.topRows(m) = A;
  g.head(m) = b;
  G.middleRows(m, n) = Eigen::MatrixXd::Identity(n, n);
  g.segment(m, n) = up;
  G.bottomRows(n) = -Eigen::MatrixXd::Identity(n, n);
  g.tail(n) = -lo;
  std::optional<double> best;
  for (const auto& x : basic_points(G, g)) {
    const double v = c.dot(x);
    if (!best || v < *best) best = v;
  }
  return best;
}

// Exhaustive 0/1 search: min c'x s.t. A x <= b.
inline std::optional<double> binary_min(const Eigen::VectorXd& c, const Eigen::MatrixXd& A,
                                        const Eigen::VectorXd& b) {
  const int n = static_cast<int>(c.size());
  std::optional<double> best;
  for (long mask = 0; mask < (1L << n); ++mask) {
    Eigen::VectorXd x(n);
    for (int j = 0; j < n; ++j) x(j) = (mask >> j) & 1 ? 1.0 : 0.0;
    if (((A * x - b).array() > 1e-9).any()) continue;
    const double v = c.dot(x);
    if (!best || v < *best) best = v;
  }
  return best;
}

}  // namespace oracle

#endif  // PAROFORGE_TESTS_ORACLES_HPP_
