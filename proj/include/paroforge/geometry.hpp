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

// Polytope utilities for uncertainty sets in H-representation.

#ifndef PAROFORGE_GEOMETRY_HPP_
#define PAROFORGE_GEOMETRY_HPP_

#include <cstdint>
#include <vector>

#include "paroforge/model.hpp"

namespace paro {

inline constexpr int kMaxVertexDim = 12;
inline constexpr double kMaxVertexSubsets = 1e6;

struct VertexList {
  std::vector<Scenario> vertices;
  double dedup_tol = 1e-7;
};

// Basis brute force over all L-row subsets of H. Throws kGuardExceeded when
// L > 12 or C(k, L) > 1e6, kUnbounded when the set has a recession direction.
VertexList enumerate_vertices(const UncertaintySet& set, double tol = 1e-7);

// Cached vertices when present, enumerated otherwise.
std::vector<Scenario> vertices_of(const UncertaintySet& set);

bool is_empty(const UncertaintySet& set);
bool is_bounded(const UncertaintySet& set);

struct InteriorPoint {
  Scenario z;
  Eigen::VectorXd slack;                // h - H z
  std::vector<int> implicit_equalities;  // rows tight on the whole set
};

// Vertex centroid. Throws kInfeasible for an empty set.
InteriorPoint interior_point(const UncertaintySet& set);

struct SimplexTest {
  bool simplex = false;
  int vertex_count = 0;
  int rank = 0;  // rank of the difference vectors
};

SimplexTest is_simplex(const UncertaintySet& set);

// Hit-and-run chain from the vertex centroid: 100 burn-in steps, every 10th
// subsequent point kept. Directions are drawn in the affine hull of U.
std::vector<Scenario> sample_uniform(const UncertaintySet& set, int count, std::uint64_t seed);

}  // namespace paro

#endif  // PAROFORGE_GEOMETRY_HPP_
