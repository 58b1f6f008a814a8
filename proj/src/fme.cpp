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

#include "paroforge/fme.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "paroforge/error.hpp"
#include "paroforge/geometry.hpp"
#include "paroforge/lp.hpp"

namespace paro {
namespace {

constexpr double kZero = 1e-12;

// Largest absolute entry, zero for empty expressions.
template <class Expr>
double amax(const Expr& e) {
  return e.size() == 0 ? 0.0 : e.cwiseAbs().maxCoeff();
}

using Multipliers = std::vector<std::pair<int, double>>;  // sorted by row

struct WorkRow {
  Multipliers mu;
  Eigen::VectorXd g;  // Stage-2 coefficients
};

Multipliers combine(const Multipliers& a, double wa, const Multipliers& b, double wb) {
  Multipliers out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.emplace_back(a[i].first, wa * a[i].second);
      ++i;
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, wb * b[j].second);
      ++j;
    } else {
      out.emplace_back(a[i].first, wa * a[i].second + wb * b[j].second);
      ++i, ++j;
    }
  }
  return out;
}

BoundRecord make_record(const WorkRow& row, int k) {
  BoundRecord rec;
  const double gk = row.g(k);
  rec.kind = gk > 0 ? BoundKind::kUpper : BoundKind::kLower;
  for (const auto& [p, mu] : row.mu)
    if (mu != 0.0) rec.alpha[p] = mu / gk;
  for (int l = 0; l < row.g.size(); ++l)
    if (l != k && row.g(l) != 0.0) rec.beta[l] = -row.g(l) / gk;
  return rec;
}

void assemble(const TwoStageProblem& p, const std::vector<WorkRow>& rows, EliminationResult& out) {
  const int k = static_cast<int>(rows.size());
  out.G0 = Eigen::MatrixXd::Zero(k, p.n_x);
  out.G.assign(p.L, Eigen::MatrixXd::Zero(k, p.n_x));
  out.Y = Eigen::MatrixXd::Zero(k, p.n_y);
  out.f0 = Eigen::VectorXd::Zero(k);
  out.F = Eigen::MatrixXd::Zero(k, p.L);
  out.multipliers.assign(k, {});
  for (int i = 0; i < k; ++i) {
    for (const auto& [row, mu] : rows[i].mu) {
      out.multipliers[i][row] = mu;
      out.G0.row(i) += mu * p.A0.row(row);
      for (int l = 0; l < p.L; ++l) out.G[l].row(i) += mu * p.A[l].row(row);
      out.f0(i) += mu * p.r0(row);
      out.F.row(i) += mu * p.R.row(row);
    }
    out.Y.row(i) = rows[i].g.transpose();
  }
  out.rows_after = k;
}

// Largest magnitude over all coefficients that multiply a decision.
double lhs_scale(const EliminationResult& r, int i) {
  double s = amax(r.G0.row(i));
  for (const auto& g : r.G) s = std::max(s, amax(g.row(i)));
  return std::max(s, amax(r.Y.row(i)));
}

bool rows_match(const EliminationResult& r, int i, int j, double si, double sj, double tol) {
  auto close = [&](const auto& a, const auto& b) { return amax(a / si - b / sj) <= tol; };
  if (!close(r.G0.row(i), r.G0.row(j)) || !close(r.Y.row(i), r.Y.row(j)) || !close(r.F.row(i), r.F.row(j)))
    return false;
  for (const auto& g : r.G)
    if (!close(g.row(i), g.row(j))) return false;
  return true;
}

EliminationResult keep_rows(const EliminationResult& r, const std::vector<int>& keep) {
  EliminationResult out = r;
  const int k = static_cast<int>(keep.size());
  auto take = [&](const Eigen::MatrixXd& m) {
    Eigen::MatrixXd s(k, m.cols());
    for (int i = 0; i < k; ++i) s.row(i) = m.row(keep[i]);
    return s;
  };
  out.G0 = take(r.G0);
  for (std::size_t l = 0; l < r.G.size(); ++l) out.G[l] = take(r.G[l]);
  out.Y = take(r.Y);
  out.F = take(r.F);
  out.f0.resize(k);
  out.multipliers.clear();
  for (int i = 0; i < k; ++i) {
    out.f0(i) = r.f0(keep[i]);
    out.multipliers.push_back(r.multipliers[keep[i]]);
  }
  out.rows_after = k;
  return out;
}

// Rows whose only decision is one x coordinate and that carry no parameter.
std::pair<Eigen::VectorXd, Eigen::VectorXd> box_from_rows(const EliminationResult& r, int n_x) {
  Eigen::VectorXd lo = Eigen::VectorXd::Constant(n_x, -kInf);
  Eigen::VectorXd up = Eigen::VectorXd::Constant(n_x, kInf);
  for (int i = 0; i < r.num_rows(); ++i) {
    bool uncertain = r.F.cols() > 0 && r.F.row(i).cwiseAbs().maxCoeff() > kZero;
    for (const auto& g : r.G) uncertain = uncertain || amax(g.row(i)) > kZero;
    if (uncertain || amax(r.Y.row(i)) > kZero) continue;
    int count = 0, var = -1;
    for (int j = 0; j < n_x; ++j)
      if (std::abs(r.G0(i, j)) > kZero) ++count, var = j;
    if (count != 1) continue;
    const double bound = r.f0(i) / r.G0(i, var);
    if (r.G0(i, var) > 0) up(var) = std::min(up(var), bound);
    else lo(var) = std::max(lo(var), bound);
  }
  return {lo, up};
}

}  // namespace

double BoundRecord::value(const Eigen::VectorXd& phi, const Eigen::VectorXd& y) const {
  double v = 0.0;
  for (const auto& [p, a] : alpha) v += a * phi(p);
  for (const auto& [l, b] : beta) v += b * y(l);
  return v;
}

Eigen::MatrixXd EliminationResult::G_at(const Scenario& z) const {
  Eigen::MatrixXd out = G0;
  for (std::size_t l = 0; l < G.size(); ++l)
    if (z(l) != 0.0) out += z(l) * G[l];
  return out;
}

Eigen::VectorXd EliminationResult::f_at(const Scenario& z) const { return f0 + F * z; }

EliminationResult eliminate(const TwoStageProblem& p, int count, const std::vector<int>& order_in) {
  if (count < 0 || count > p.n_y)
    throw Error(ErrorKind::kInvalidArgument, "eliminate: count must lie in [0, n_y]");
  std::vector<int> order = order_in;
  if (order.empty())
    for (int k = 0; k < count; ++k) order.push_back(k);
  if (static_cast<int>(order.size()) < count)
    throw Error(ErrorKind::kInvalidArgument, "eliminate: order shorter than count");
  order.resize(count);
  std::vector<bool> seen(p.n_y, false);
  for (int k : order) {
    if (k < 0 || k >= p.n_y || seen[k])
      throw Error(ErrorKind::kInvalidArgument, "eliminate: order is not a permutation prefix");
    seen[k] = true;
  }

  std::vector<WorkRow> rows(p.m);
  for (int i = 0; i < p.m; ++i) {
    rows[i].mu = {{i, 1.0}};
    rows[i].g = p.B.row(i).transpose();
  }

  EliminationResult out;
  out.order = order;
  out.rows_before = p.m;
  for (int k : order) {
    std::vector<const WorkRow*> lower, upper;
    std::vector<WorkRow> next;
    for (auto& row : rows) {
      if (std::abs(row.g(k)) <= kZero) row.g(k) = 0.0;
      if (row.g(k) > 0) upper.push_back(&row);
      else if (row.g(k) < 0) lower.push_back(&row);
    }
    std::vector<BoundRecord> records;
    for (const auto* r : lower) records.push_back(make_record(*r, k));
    for (const auto* r : upper) records.push_back(make_record(*r, k));
    out.ledger.push_back(std::move(records));

    const long produced = static_cast<long>(rows.size() - lower.size() - upper.size()) +
                          static_cast<long>(lower.size()) * static_cast<long>(upper.size());
    if (produced > kMaxFmeRows)
      throw Error(ErrorKind::kGuardExceeded,
                  "eliminate: " + std::to_string(produced) + " rows after eliminating y" + std::to_string(k));
    next.reserve(produced);
    for (const auto& row : rows)
      if (row.g(k) == 0.0) next.push_back(row);
    for (const auto* lo : lower) {
      for (const auto* up : upper) {
        const double wl = up->g(k), wu = -lo->g(k);
        WorkRow row;
        row.mu = combine(lo->mu, wl, up->mu, wu);
        row.g = wl * lo->g + wu * up->g;
        row.g(k) = 0.0;
        double scale = 0.0;
        for (const auto& [i, mu] : row.mu) scale = std::max(scale, mu);
        if (scale > 0) {
          for (auto& entry : row.mu) entry.second /= scale;
          row.g /= scale;
        }
        for (int l = 0; l < row.g.size(); ++l)
          if (std::abs(row.g(l)) <= kZero) row.g(l) = 0.0;
        next.push_back(std::move(row));
      }
    }
    rows = std::move(next);
  }
  assemble(p, rows, out);
  return out;
}

EliminationResult filter_redundant(const TwoStageProblem& p, const EliminationResult& result,
                                   RedundancyLevel level, const FilterOptions& options) {
  if (level == RedundancyLevel::kNone) return result;
  const int k = result.num_rows();
  std::vector<double> scale(k);
  for (int i = 0; i < k; ++i) scale[i] = lhs_scale(result, i);

  std::vector<int> keep;
  for (int i = 0; i < k; ++i) {
    if (scale[i] <= kZero) {
      // No decision left: 0 <= f(z). Parameter-free rows are settled here.
      const bool uncertain = result.F.cols() > 0 && result.F.row(i).cwiseAbs().maxCoeff() > kZero;
      if (!uncertain && result.f0(i) >= -options.tol) continue;
      keep.push_back(i);
      continue;
    }
    bool redundant = false;
    for (int j : keep) {
      if (scale[j] <= kZero || !rows_match(result, i, j, scale[i], scale[j], options.tol)) continue;
      if (result.f0(i) / scale[i] >= result.f0(j) / scale[j] - options.tol) {
        redundant = true;
        break;
      }
    }
    if (redundant) continue;
    // A later row may be tighter than a kept one with the same left side.
    for (auto it = keep.begin(); it != keep.end(); ++it) {
      const int j = *it;
      if (scale[j] > kZero && rows_match(result, i, j, scale[i], scale[j], options.tol) &&
          result.f0(j) / scale[j] >= result.f0(i) / scale[i]) {
        keep.erase(it);
        break;
      }
    }
    keep.push_back(i);
  }
  std::sort(keep.begin(), keep.end());
  EliminationResult out = keep_rows(result, keep);
  if (level == RedundancyLevel::kSyntactic) return out;

  if (!out.complete(p.n_y))
    throw Error(ErrorKind::kPrecondition, "filter_redundant: lp level needs a complete elimination");
  const auto vertices = vertices_of(p.uncertainty);
  const auto [lo, up] = options.x_box ? *options.x_box : box_from_rows(out, p.n_x);
  std::vector<Eigen::MatrixXd> Gv;
  std::vector<Eigen::VectorXd> fv;
  for (const auto& z : vertices) {
    Gv.push_back(out.G_at(z));
    fv.push_back(out.f_at(z));
  }
  std::vector<bool> alive(out.num_rows(), true);
  for (int i = 0; i < out.num_rows(); ++i) {
    // Rows still alive, excluding i, at every vertex.
    std::vector<int> others;
    for (int j = 0; j < out.num_rows(); ++j)
      if (j != i && alive[j]) others.push_back(j);
    LpProblem lp;
    lp.lower = lo;
    lp.upper = up;
    lp.A.resize(static_cast<long>(others.size() * vertices.size()), p.n_x);
    lp.b.resize(lp.A.rows());
    long r = 0;
    for (std::size_t v = 0; v < vertices.size(); ++v)
      for (int j : others) {
        lp.A.row(r) = Gv[v].row(j);
        lp.b(r++) = fv[v](j);
      }
    bool redundant = true;
    for (std::size_t v = 0; v < vertices.size() && redundant; ++v) {
      lp.objective = -Gv[v].row(i).transpose();
      const auto sol = solve_lp(lp);
      if (sol.status == LpStatus::kInfeasible) break;  // empty system: nothing to protect
      if (!sol.optimal()) {
        redundant = false;
        break;
      }
      const double violation = -sol.objective - fv[v](i);
      redundant = violation <= options.tol * (1.0 + std::abs(fv[v](i)));
    }
    if (redundant) alive[i] = false;
  }
  std::vector<int> final_rows;
  for (int i = 0; i < out.num_rows(); ++i)
    if (alive[i]) final_rows.push_back(i);
  return keep_rows(out, final_rows);
}

const char* to_string(RecoursePolicy policy) {
  switch (policy) {
    case RecoursePolicy::kLower: return "lower";
    case RecoursePolicy::kUpper: return "upper";
    case RecoursePolicy::kMidpoint: return "midpoint";
    case RecoursePolicy::kObjectiveGreedy: return "objective-greedy";
  }
  return "unknown";
}

Eigen::VectorXd reconstruct_recourse(const TwoStageProblem& p, const EliminationResult& result,
                                     const Eigen::VectorXd& x, const Scenario& z, RecoursePolicy policy,
                                     std::vector<Interval>* intervals, double tol) {
  if (!result.complete(p.n_y))
    throw Error(ErrorKind::kPrecondition, "reconstruct_recourse: all Stage-2 variables must be eliminated");
  if (x.size() != p.n_x || z.size() != p.L)
    throw Error(ErrorKind::kDimensionMismatch, "reconstruct_recourse: vector sizes do not match");
  const Eigen::VectorXd residual = result.G_at(z) * x - result.f_at(z);
  for (int i = 0; i < residual.size(); ++i)
    if (residual(i) > tol * (1.0 + std::abs(result.f0(i))))
      throw Error(ErrorKind::kInfeasible, "reconstruct_recourse: x violates static row " + std::to_string(i) +
                                              " by " + std::to_string(residual(i)));

  const Eigen::VectorXd phi = p.r_at(z) - p.A_at(z) * x;
  Eigen::VectorXd y = Eigen::VectorXd::Zero(p.n_y);
  if (intervals) intervals->assign(p.n_y, {});
  for (int pos = static_cast<int>(result.order.size()) - 1; pos >= 0; --pos) {
    const int k = result.order[pos];
    double lb = -kInf, ub = kInf;
    for (const auto& rec : result.ledger[pos]) {
      const double v = rec.value(phi, y);
      if (rec.kind == BoundKind::kLower) lb = std::max(lb, v);
      else ub = std::min(ub, v);
    }
    if (lb > ub + tol * (1.0 + std::abs(lb)))
      throw Error(ErrorKind::kEmptyInterval, "reconstruct_recourse: empty interval for y" + std::to_string(k) +
                                                 " (gap " + std::to_string(lb - ub) + ")");
    if (lb > ub) lb = ub;
    if (intervals) (*intervals)[k] = {lb, ub};
    auto midpoint = [&]() {
      if (std::isfinite(lb) && std::isfinite(ub)) return 0.5 * (lb + ub);
      if (std::isfinite(lb)) return lb;
      if (std::isfinite(ub)) return ub;
      return 0.0;
    };
    double v;
    switch (policy) {
      case RecoursePolicy::kLower: v = std::isfinite(lb) ? lb : midpoint(); break;
      case RecoursePolicy::kUpper: v = std::isfinite(ub) ? ub : midpoint(); break;
      case RecoursePolicy::kMidpoint: v = midpoint(); break;
      case RecoursePolicy::kObjectiveGreedy:
      default:
        if (p.d(k) < 0) v = std::isfinite(ub) ? ub : midpoint();
        else if (p.d(k) > 0) v = std::isfinite(lb) ? lb : midpoint();
        else v = midpoint();
        break;
    }
    y(k) = v;
  }
  return y;
}

}  // namespace paro
