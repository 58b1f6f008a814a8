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
#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <iomanip>
#include <sstream>
#include <thread>

#include "paroforge/bench.hpp"
#include "paroforge/error.hpp"
#include "paroforge/geometry.hpp"

namespace paro {

const char* const kComparisonColumns =
    "instance,seed,opt,wc_aro,wc_paro,wc_pro,wc_pro_ldr,l1_paro_aro,l1_paro_pro,l1_aro_pro,"
    "imp_nom_aro,imp_nom_pro,imp_nom_proldr,imp_avg_aro,imp_avg_pro,imp_avg_proldr,"
    "imp_max_aro,imp_max_pro,imp_max_proldr,runtime_ms,status";

double relative_improvement(double alt, double paro_value) {
  const double scale = std::abs(alt);
  if (scale < 1e-12) return std::abs(alt - paro_value) < 1e-12 ? 0.0 : 100.0 * (alt - paro_value) / 1e-12;
  return 100.0 * (alt - paro_value) / scale;
}

namespace {

double l1(const Eigen::VectorXd& a, const Eigen::VectorXd& b) { return (a - b).cwiseAbs().sum(); }

struct Values {
  double aro, pro, pro_ldr, paro;
};

Values values_at(const TwoStageProblem& p, const ComparisonRow& row, const Scenario& z) {
  Values v;
  v.aro = optimal_recourse(p, row.x_aro, z).objective;
  v.pro = optimal_recourse(p, row.x_pro, z).objective;
  v.paro = optimal_recourse(p, row.x_paro, z).objective;
  v.pro_ldr = p.c_at(z).dot(row.x_pro) + p.d.dot(row.pro_rule.at(z));
  return v;
}

double max_improvement(const MaxDifference& d) { return relative_improvement(d.value_a, d.value_b); }

}  // namespace

ComparisonRow run_comparison(const TwoStageProblem& p, const ComparisonOptions& options) {
  const auto t0 = std::chrono::steady_clock::now();
  ComparisonRow row;
  row.seed = options.seed;

  const auto aro = solve_aro_vertices(p, options.improvement.lp);
  row.opt = aro.opt;
  row.x_aro = aro.x;
  const auto paro = algorithm1(p, aro.x, options.improvement, options.max_rounds);
  row.x_paro = paro.x;
  const Scenario nominal = options.nominal             ? *options.nominal
                           : p.uncertainty.nominal ? *p.uncertainty.nominal
                                                   : interior_point(p.uncertainty).z;
  const auto pro = pro_ldr(p, nominal, {}, options.improvement.lp);
  row.x_pro = pro.x;
  row.pro_rule = pro.rule;

  row.wc_aro = worst_case(p, row.x_aro, OptimalRecourseRule{}, aro.vertices).value;
  row.wc_paro = worst_case(p, row.x_paro, OptimalRecourseRule{}, aro.vertices).value;
  row.wc_pro = worst_case(p, row.x_pro, OptimalRecourseRule{}, aro.vertices).value;
  row.wc_pro_ldr = worst_case(p, row.x_pro, pro.rule, aro.vertices).value;
  row.l1_paro_aro = l1(row.x_paro, row.x_aro);
  row.l1_paro_pro = l1(row.x_paro, row.x_pro);
  row.l1_aro_pro = l1(row.x_aro, row.x_pro);

  const Values nom = values_at(p, row, nominal);
  row.imp_nom_aro = relative_improvement(nom.aro, nom.paro);
  row.imp_nom_pro = relative_improvement(nom.pro, nom.paro);
  row.imp_nom_proldr = relative_improvement(nom.pro_ldr, nom.paro);

  const auto samples = sample_uniform(p.uncertainty, options.samples, options.seed);
  for (const auto& z : samples) {
    const Values v = values_at(p, row, z);
    row.imp_avg_aro += relative_improvement(v.aro, v.paro);
    row.imp_avg_pro += relative_improvement(v.pro, v.paro);
    row.imp_avg_proldr += relative_improvement(v.pro_ldr, v.paro);
  }
  if (!samples.empty()) {
    const double n = static_cast<double>(samples.size());
    row.imp_avg_aro /= n;
    row.imp_avg_pro /= n;
    row.imp_avg_proldr /= n;
  }

  // The scenarios where the refinement found its improvements are natural
  // starting points for the search.
  ImprovementOptions search = options.improvement;
  search.seed = options.seed;
  if (search.warm_starts.empty()) {
    search.warm_starts.push_back(interior_point(p.uncertainty).z);
    for (auto& z : sample_uniform(p.uncertainty, search.samples, search.seed)) search.warm_starts.push_back(z);
    for (const auto& step : paro.trace) search.warm_starts.push_back(step.z);
  }
  row.imp_max_aro = max_improvement(max_difference_scenario(p, row.x_aro, row.x_paro, search));
  row.imp_max_pro = max_improvement(max_difference_scenario(p, row.x_pro, row.x_paro, search));
  row.imp_max_proldr =
      max_improvement(max_difference_scenario(p, row.x_pro, pro.rule, row.x_paro, options.improvement.lp));

  row.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return row;
}

BenchmarkReport run_benchmark(const BenchmarkConfig& config) {
  auto run_one = [&config](int i) {
    const std::uint64_t seed = config.seed + static_cast<std::uint64_t>(i);
    const auto t0 = std::chrono::steady_clock::now();
    ComparisonRow row;
    try {
      FacilityLocationConfig fl = config.instance;
      fl.seed = seed;
      ComparisonOptions opt = config.comparison;
      opt.seed = seed;
      opt.improvement.seed = seed;
      row = run_comparison(gen_facility_location(fl), opt);
    } catch (const std::exception& e) {
      row = ComparisonRow{};
      row.status = std::string("error: ") + e.what();
      row.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    }
    row.instance = i;
    row.seed = seed;
    return row;
  };

  BenchmarkReport report;
  report.rows.resize(static_cast<std::size_t>(std::max(config.instances, 0)));
  int workers = config.threads > 0 ? config.threads : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, std::max(config.instances, 1));
  std::atomic<int> next{0};
  auto work = [&] {
    for (int i = next++; i < config.instances; i = next++) report.rows[static_cast<std::size_t>(i)] = run_one(i);
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < workers; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return report;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<double> metrics(const ComparisonRow& r) {
  return {r.opt,         r.wc_aro,         r.wc_paro,     r.wc_pro,      r.wc_pro_ldr,     r.l1_paro_aro,
          r.l1_paro_pro, r.l1_aro_pro,     r.imp_nom_aro, r.imp_nom_pro, r.imp_nom_proldr, r.imp_avg_aro,
          r.imp_avg_pro, r.imp_avg_proldr, r.imp_max_aro, r.imp_max_pro, r.imp_max_proldr};
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

std::string BenchmarkReport::to_csv(bool deterministic) const {
  std::ostringstream out;
  out << std::setprecision(10);
  if (!deterministic) {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    out << "# generated " << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ") << "\n";
  }
  out << kComparisonColumns << "\n";
  std::vector<std::vector<double>> ok;
  for (const auto& r : rows) {
    out << r.instance << "," << r.seed;
    for (double v : metrics(r)) out << "," << v;
    out << "," << (deterministic ? 0.0 : r.runtime_ms) << "," << csv_field(r.status) << "\n";
    if (r.status == "ok") ok.push_back(metrics(r));
  }
  if (ok.empty()) return out.str();
  const std::size_t width = ok.front().size();
  const char* names[] = {"min", "median", "max"};
  for (int s = 0; s < 3; ++s) {
    out << names[s] << ",";
    for (std::size_t c = 0; c < width; ++c) {
      std::vector<double> col;
      for (const auto& m : ok) col.push_back(m[c]);
      const double v = s == 0 ? *std::min_element(col.begin(), col.end())
                       : s == 1 ? median(col)
                                : *std::max_element(col.begin(), col.end());
      out << "," << v;
    }
    out << ",,summary\n";
  }
  // Share of instances whose Stage-1 solutions differ, in the l1 columns.
  out << "share_differing,";
  for (std::size_t c = 0; c < width; ++c) {
    out << ",";
    if (c >= 5 && c <= 7) {
      int differ = 0;
      for (const auto& m : ok) differ += m[c] > 1e-6 ? 1 : 0;
      out << static_cast<double>(differ) / static_cast<double>(ok.size());
    }
  }
  out << ",,summary\n";
  return out.str();
}

}  // namespace paro
