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

#include "paroforge/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "paroforge/error.hpp"
#include "paroforge/geometry.hpp"

namespace paro {
namespace {

template <typename M>
bool all_finite(const M& m) {
  return m.size() == 0 || m.allFinite();
}

std::string shape(long rows, long cols) {
  std::ostringstream os;
  os << rows << "x" << cols;
  return os.str();
}

}  // namespace

bool UncertaintySet::contains(const Scenario& z, double tol) const {
  if (z.size() != dim()) return false;
  for (int i = 0; i < num_rows(); ++i)
    if (H.row(i).dot(z) > h(i) + tol) return false;
  return true;
}

UncertaintySet make_box(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi) {
  const int L = static_cast<int>(lo.size());
  UncertaintySet u;
  u.H = Eigen::MatrixXd::Zero(2 * L, L);
  u.h.resize(2 * L);
  for (int l = 0; l < L; ++l) {
    u.H(2 * l, l) = 1.0;
    u.h(2 * l) = hi(l);
    u.H(2 * l + 1, l) = -1.0;
    u.h(2 * l + 1) = -lo(l);
  }
  return u;
}

TwoStageProblem TwoStageProblem::zeros(int n_x, int n_y, int m, int L) {
  TwoStageProblem p;
  p.n_x = n_x;
  p.n_y = n_y;
  p.m = m;
  p.L = L;
  p.c0 = Eigen::VectorXd::Zero(n_x);
  p.C = Eigen::MatrixXd::Zero(n_x, L);
  p.d = Eigen::VectorXd::Zero(n_y);
  p.A0 = Eigen::MatrixXd::Zero(m, n_x);
  p.A.assign(L, Eigen::MatrixXd::Zero(m, n_x));
  p.B = Eigen::MatrixXd::Zero(m, n_y);
  p.r0 = Eigen::VectorXd::Zero(m);
  p.R = Eigen::MatrixXd::Zero(m, L);
  p.integrality.assign(n_x, false);
  p.uncertainty.H = Eigen::MatrixXd::Zero(0, L);
  p.uncertainty.h = Eigen::VectorXd::Zero(0);
  return p;
}

Eigen::VectorXd TwoStageProblem::c_at(const Scenario& z) const { return c0 + C * z; }

Eigen::MatrixXd TwoStageProblem::A_at(const Scenario& z) const {
  Eigen::MatrixXd out = A0;
  for (int l = 0; l < L; ++l)
    if (z(l) != 0.0) out += z(l) * A[l];
  return out;
}

Eigen::VectorXd TwoStageProblem::r_at(const Scenario& z) const { return r0 + R * z; }

bool TwoStageProblem::rhs_only() const {
  if (C.size() > 0 && C.cwiseAbs().maxCoeff() > 0.0) return false;
  for (const auto& a : A)
    if (a.size() > 0 && a.cwiseAbs().maxCoeff() > 0.0) return false;
  return true;
}

bool TwoStageProblem::has_integers() const {
  for (bool b : integrality)
    if (b) return true;
  return false;
}

ValidationReport validate(const TwoStageProblem& p) {
  ValidationReport report;
  auto& v = report.violations;
  auto expect = [&](const char* name, long rows, long cols, long want_rows, long want_cols) {
    if (rows != want_rows || cols != want_cols)
      v.push_back(std::string("dimension mismatch: ") + name + " is " + shape(rows, cols) +
                  ", expected " + shape(want_rows, want_cols));
  };
  if (p.n_x < 0 || p.n_y < 0 || p.m < 0 || p.L < 0) v.push_back("dimension mismatch: negative size");
  expect("c0", p.c0.size(), 1, p.n_x, 1);
  expect("C", p.C.rows(), p.C.cols(), p.n_x, p.L);
  expect("d", p.d.size(), 1, p.n_y, 1);
  expect("A0", p.A0.rows(), p.A0.cols(), p.m, p.n_x);
  if (static_cast<int>(p.A.size()) != p.L) {
    v.push_back("dimension mismatch: A holds " + std::to_string(p.A.size()) + " matrices, expected " +
                std::to_string(p.L));
  } else {
    for (int l = 0; l < p.L; ++l)
      expect(("A[" + std::to_string(l) + "]").c_str(), p.A[l].rows(), p.A[l].cols(), p.m, p.n_x);
  }
  expect("B", p.B.rows(), p.B.cols(), p.m, p.n_y);
  expect("r0", p.r0.size(), 1, p.m, 1);
  expect("R", p.R.rows(), p.R.cols(), p.m, p.L);
  if (static_cast<int>(p.integrality.size()) != p.n_x) v.push_back("dimension mismatch: integrality");
  const auto& u = p.uncertainty;
  expect("uncertainty.H", u.H.rows(), u.H.cols(), u.H.rows(), p.L);
  expect("uncertainty.h", u.h.size(), 1, u.H.rows(), 1);
  if (!v.empty()) return report;

  bool finite = all_finite(p.c0) && all_finite(p.C) && all_finite(p.d) && all_finite(p.A0) &&
                all_finite(p.B) && all_finite(p.r0) && all_finite(p.R) && all_finite(u.H) &&
                all_finite(u.h);
  for (const auto& a : p.A) finite = finite && all_finite(a);
  if (!finite) {
    v.push_back("NaN or infinite entries");
    return report;
  }

  if (is_empty(u)) {
    v.push_back("uncertainty set empty");
    return report;
  }
  if (!is_bounded(u)) {
    v.push_back("uncertainty set unbounded");
    return report;
  }
  if (u.vertices) {
    for (std::size_t i = 0; i < u.vertices->size(); ++i) {
      const auto& z = (*u.vertices)[i];
      if (z.size() != p.L || !u.contains(z, 1e-7))
        v.push_back("cached vertex " + std::to_string(i) + " infeasible");
      for (std::size_t j = 0; j < i; ++j)
        if (z.size() == (*u.vertices)[j].size() && (z - (*u.vertices)[j]).cwiseAbs().maxCoeff() <= 1e-7)
          v.push_back("cached vertex " + std::to_string(i) + " duplicates vertex " + std::to_string(j));
    }
  }
  if (u.nominal && (u.nominal->size() != p.L || !u.contains(*u.nominal, 1e-7)))
    v.push_back("nominal scenario outside the uncertainty set");
  return report;
}

bool Evaluation::feasible(double tol) const { return slack.size() == 0 || slack.minCoeff() >= -tol; }

Evaluation evaluate(const TwoStageProblem& p, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                    const Scenario& z) {
  if (x.size() != p.n_x || y.size() != p.n_y || z.size() != p.L)
    throw Error(ErrorKind::kDimensionMismatch, "evaluate: vector sizes do not match the problem");
  Evaluation e;
  e.objective = p.c_at(z).dot(x) + p.d.dot(y);
  e.slack = p.r_at(z) - p.A_at(z) * x - p.B * y;
  return e;
}

ExplicitBounds explicit_bounds(const TwoStageProblem& p) {
  ExplicitBounds out;
  out.x_lower = Eigen::VectorXd::Constant(p.n_x, -std::numeric_limits<double>::infinity());
  out.x_upper = Eigen::VectorXd::Constant(p.n_x, std::numeric_limits<double>::infinity());
  out.y_lower = Eigen::VectorXd::Constant(p.n_y, -std::numeric_limits<double>::infinity());
  out.y_upper = Eigen::VectorXd::Constant(p.n_y, std::numeric_limits<double>::infinity());
  out.is_bound_row.assign(p.m, false);
  for (int i = 0; i < p.m; ++i) {
    if (p.L > 0 && p.R.row(i).cwiseAbs().maxCoeff() > 0.0) continue;
    bool uncertain = false;
    for (const auto& a : p.A) uncertain = uncertain || a.row(i).cwiseAbs().maxCoeff() > 0.0;
    if (uncertain) continue;
    int count = 0, var = -1;
    bool is_x = false;
    double coef = 0.0;
    for (int j = 0; j < p.n_x; ++j)
      if (p.A0(i, j) != 0.0) ++count, var = j, is_x = true, coef = p.A0(i, j);
    for (int k = 0; k < p.n_y; ++k)
      if (p.B(i, k) != 0.0) ++count, var = k, is_x = false, coef = p.B(i, k);
    if (count != 1) continue;
    const double bound = p.r0(i) / coef;
    Eigen::VectorXd& lo = is_x ? out.x_lower : out.y_lower;
    Eigen::VectorXd& up = is_x ? out.x_upper : out.y_upper;
    if (coef > 0) up(var) = std::min(up(var), bound);
    else lo(var) = std::max(lo(var), bound);
    out.is_bound_row[i] = true;
  }
  return out;
}

}  // namespace paro
