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

// Side-by-side comparison of Stage-1 solutions and the facility-location
// benchmark driver.

#ifndef PAROFORGE_BENCH_HPP_
#define PAROFORGE_BENCH_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "paroforge/instances.hpp"
#include "paroforge/pareto.hpp"

namespace paro {

struct ComparisonOptions {
  int samples = 10;  // scenarios for the average metric
  std::uint64_t seed = 1;
  std::optional<Scenario> nominal;  // defaults to the set's nominal, then its interior point
  ImprovementOptions improvement;
  int max_rounds = 100;
};

// Relative improvements are 100 * (alt - paro) / |alt| in percent.
struct ComparisonRow {
  int instance = 0;
  std::uint64_t seed = 0;
  double opt = 0.0;
  double wc_aro = 0.0, wc_paro = 0.0, wc_pro = 0.0, wc_pro_ldr = 0.0;
  double l1_paro_aro = 0.0, l1_paro_pro = 0.0, l1_aro_pro = 0.0;
  double imp_nom_aro = 0.0, imp_nom_pro = 0.0, imp_nom_proldr = 0.0;
  double imp_avg_aro = 0.0, imp_avg_pro = 0.0, imp_avg_proldr = 0.0;
  double imp_max_aro = 0.0, imp_max_pro = 0.0, imp_max_proldr = 0.0;
  double runtime_ms = 0.0;
  std::string status = "ok";

  Eigen::VectorXd x_aro, x_paro, x_pro;
  LinearRule pro_rule;
};

double relative_improvement(double alt, double paro_value);

ComparisonRow run_comparison(const TwoStageProblem& problem, const ComparisonOptions& options = {});

struct BenchmarkConfig {
  FacilityLocationConfig instance;  // its seed is replaced per instance
  int instances = 30;
  std::uint64_t seed = 1;
  ComparisonOptions comparison;
  // Instances run on this many worker threads; 0 uses every core. Rows do
  // not depend on the thread count.
  int threads = 1;
};

struct BenchmarkReport {
  std::vector<ComparisonRow> rows;

  // Data rows, then min / median / max rows per metric and the share of
  // instances whose Stage-1 solutions differ. The timestamp line and the
  // runtimes are omitted under `deterministic`.
  std::string to_csv(bool deterministic) const;
};

// Instance i uses seed + i. Failures become rows with a status message.
BenchmarkReport run_benchmark(const BenchmarkConfig& config);

extern const char* const kComparisonColumns;

}  // namespace paro

#endif  // PAROFORGE_BENCH_HPP_
