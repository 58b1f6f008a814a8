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
#include <map>
#include <numeric>

#include "paroforge/geometry.hpp"
#include "paroforge/model.hpp"

namespace paro {
namespace {

constexpr double kOccurs = 1e-12;

struct DisjointSets {
  explicit DisjointSets(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void join(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<int> parent;
};

// Every row of H touches parameters of a single group.
bool factorizes(const UncertaintySet& u, const std::vector<int>& group) {
  for (int r = 0; r < u.num_rows(); ++r) {
    int seen = -1;
    for (int l = 0; l < u.dim(); ++l) {
      if (std::abs(u.H(r, l)) <= kOccurs) continue;
      if (seen >= 0 && group[l] != seen) return false;
      seen = group[l];
    }
  }
  return true;
}

}  // namespace

const char* to_string(StructureKind kind) {
  switch (kind) {
    case StructureKind::kConstraintwise: return "constraintwise";
    case StructureKind::kHybrid: return "hybrid";
    case StructureKind::kBlock: return "block";
    case StructureKind::kSimplex: return "simplex";
    case StructureKind::kGeneral: return "general";
  }
  return "unknown";
}

StructureReport detect_structure(const TwoStageProblem& p) {
  StructureReport report;
  const int rows = p.m + 1;  // slot 0 is the objective
  // occurs[slot][l]
  std::vector<std::vector<bool>> occurs(rows, std::vector<bool>(p.L, false));
  for (int l = 0; l < p.L; ++l) {
    if (p.n_x > 0 && p.C.col(l).cwiseAbs().maxCoeff() > kOccurs) occurs[0][l] = true;
    for (int i = 0; i < p.m; ++i) {
      const bool in_a = p.n_x > 0 && p.A[l].row(i).cwiseAbs().maxCoeff() > kOccurs;
      if (in_a || std::abs(p.R(i, l)) > kOccurs) occurs[i + 1][l] = true;
    }
  }

  report.private_params.assign(rows, {});
  std::vector<int> owner(p.L, -1);
  for (int l = 0; l < p.L; ++l) {
    int count = 0;
    for (int s = 0; s < rows; ++s)
      if (occurs[s][l]) ++count, owner[l] = s;
    if (count == 0) {
      report.unused_params.push_back(l);
    } else if (count == 1) {
      report.private_params[owner[l]].push_back(l);
    } else {
      report.shared_params.push_back(l);
      owner[l] = -2;
    }
  }

  // Blocks: components of the graph over rows, parameters and Stage-2 columns.
  DisjointSets sets(rows + p.L + p.n_y);
  const int param0 = rows, y0 = rows + p.L;
  for (int s = 0; s < rows; ++s)
    for (int l = 0; l < p.L; ++l)
      if (occurs[s][l]) sets.join(s, param0 + l);
  for (int k = 0; k < p.n_y; ++k) {
    if (std::abs(p.d(k)) > kOccurs) sets.join(0, y0 + k);
    for (int i = 0; i < p.m; ++i)
      if (std::abs(p.B(i, k)) > kOccurs) sets.join(i + 1, y0 + k);
  }
  std::map<int, StructureBlock> by_root;
  for (int l = 0; l < p.L; ++l)
    if (owner[l] != -1) by_root[sets.find(param0 + l)].params.push_back(l);
  for (int k = 0; k < p.n_y; ++k) by_root[sets.find(y0 + k)].stage2.push_back(k);
  for (auto& [root, block] : by_root)
    for (int s = 0; s < rows; ++s)
      if (sets.find(s) == root) block.rows.push_back(s - 1);
  for (auto& [root, block] : by_root) report.blocks.push_back(block);

  auto groups_with = [&](auto assign) {
    std::vector<int> g(p.L);
    for (int l = 0; l < p.L; ++l) g[l] = owner[l] == -1 ? p.L + rows + l : assign(l);
    return g;
  };

  struct Candidate {
    StructureKind kind;
    bool pattern;
    std::vector<int> groups;
  };
  bool any_private = false;
  for (const auto& s : report.private_params) any_private = any_private || !s.empty();
  std::vector<int> block_of(p.L, -1);
  for (std::size_t b = 0; b < report.blocks.size(); ++b)
    for (int l : report.blocks[b].params) block_of[l] = static_cast<int>(b);

  std::vector<Candidate> candidates = {
      {StructureKind::kConstraintwise, report.shared_params.empty(),
       groups_with([&](int l) { return owner[l]; })},
      {StructureKind::kBlock, report.blocks.size() >= 2, groups_with([&](int l) { return block_of[l]; })},
      {StructureKind::kHybrid, !report.shared_params.empty() && any_private,
       groups_with([&](int l) { return owner[l] == -2 ? -2 : owner[l]; })},
  };
  bool first_pattern = true;
  for (const auto& c : candidates) {
    if (!c.pattern) continue;
    const bool ok = factorizes(p.uncertainty, c.groups);
    if (first_pattern) report.factorizes = ok;
    first_pattern = false;
    if (ok) {
      report.applicable.push_back(c.kind);
    } else {
      report.notes.push_back(std::string(to_string(c.kind)) +
                             " occurrence pattern holds but the uncertainty set does not factorize");
    }
  }
  bool simplex = false;
  try {
    simplex = p.L > 0 && is_simplex(p.uncertainty).simplex;
  } catch (const std::exception&) {
    report.notes.push_back("simplex test skipped: vertex enumeration unavailable");
  }
  if (simplex) report.applicable.push_back(StructureKind::kSimplex);
  report.kind = report.applicable.empty() ? StructureKind::kGeneral : report.applicable.front();
  if (report.applicable.empty()) report.applicable.push_back(StructureKind::kGeneral);
  return report;
}

}  // namespace paro
