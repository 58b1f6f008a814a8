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

// Problem generators: the radiation-therapy toy model, small worked
// problems for each decision-rule structure, and random facility location.

#ifndef PAROFORGE_INSTANCES_HPP_
#define PAROFORGE_INSTANCES_HPP_

#include <cstdint>

#include "paroforge/model.hpp"

namespace paro {

// Two-stage dose planning: Stage-1 dose x, Stage-2 dose y, required doses
// (d1, d2) in [50, 60]^2, objective delta * (x + y), both doses in [20, 40].
TwoStageProblem rt_example(double delta);

// Same model in epigraph form with Stage-1 (x, t), objective t.
TwoStageProblem rt_epigraph_example(double delta);

// Small problems with constraintwise, hybrid, block and simplex uncertainty
// (objective min x), plus the hybrid variant with objective x - y1 + y2.
TwoStageProblem constraintwise_example();
TwoStageProblem hybrid_example();
TwoStageProblem block_example();
TwoStageProblem simplex_example();
TwoStageProblem pwl_example();

struct FacilityLocationConfig {
  int n = 10;  // candidate facilities
  int m = 4;   // demand locations
  double capacity = 15.0;
  int f_lo = 4, f_hi = 22;  // opening cost range
  int c_lo = 2, c_hi = 12;  // transport cost range
  double l = 8.0, u = 12.0;
  double gamma = 45.0;
  std::uint64_t seed = 1;
};

// Binary x (facility i open), y index i * m + j, demand z_j in
// {sum z <= gamma, l <= z <= u}. Opening costs are drawn first, then the
// transport matrix row by row, with std::mt19937_64.
TwoStageProblem gen_facility_location(const FacilityLocationConfig& config);

}  // namespace paro

#endif  // PAROFORGE_INSTANCES_HPP_
