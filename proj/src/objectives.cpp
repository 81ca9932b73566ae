// Copyright 2026 The evodepth Authors.
//
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

#include "evodepth/objectives.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "evodepth/errors.hpp"

namespace evodepth {

namespace {

double region_abs_error(const DepthMap& est, const DepthMap& target, const RegionMask& region,
                        Exec exec) {
  if (est.width() != target.width() || est.height() != target.height() ||
      region.width() != est.width() || region.height() != est.height())
    throw DimensionError("depth map and target dimensions differ");
  if (region.empty()) throw InvalidArgument("metric region is empty");
  if (exec == Exec::kParallel)
    return kernels::parallel::masked_abs_diff_sum(est.values(), target.values(), region.flags());
  return kernels::serial::masked_abs_diff_sum(est.values(), target.values(), region.flags());
}

std::string format_real(double v) {
  std::ostringstream out;
  out << std::setprecision(17) << v;
  return out.str();
}

}  // namespace

void TargetSpec::validate() const {
  const int w = target_depth.width(), h = target_depth.height();
  if (eval_region.width() != w || eval_region.height() != h || volume_region.width() != w ||
      volume_region.height() != h)
    throw DimensionError("target regions must match the target depth dimensions");
  if (eval_region.empty()) throw InvalidArgument("evaluation region is empty");
  if (volume_region.empty()) throw InvalidArgument("volume region is empty");
}

double depth_error(const DepthMap& est, const TargetSpec& spec, Exec exec) {
  return region_abs_error(est, spec.target_depth, spec.eval_region, exec);
}

double pseudo_volume(const DepthMap& est, const TargetSpec& spec, Exec exec) {
  return region_abs_error(est, spec.target_depth, spec.volume_region, exec);
}

double perturbation_norm(const PerturbationField& field, Exec exec) {
  const double ss = exec == Exec::kParallel ? kernels::parallel::sum_squares(field.deltas())
                                            : kernels::serial::sum_squares(field.deltas());
  return std::sqrt(ss);
}

double reduction_rate(double v_original, double v_adv) {
  if (!(v_original > 0.0)) throw InvalidArgument("original pseudo volume must be positive");
  return 100.0 * (v_original - v_adv) / v_original;
}

void write_metric_csv(std::ostream& out, const std::vector<MetricRow>& rows) {
  out << kMetricCsvHeader << '\n';
  for (const auto& r : rows)
    out << r.scene << ',' << format_real(r.f1) << ',' << format_real(r.f2) << ','
        << format_real(r.v_original) << ',' << format_real(r.v_adv) << ','
        << format_real(r.reduction_pct) << ',' << r.queries << '\n';
}

std::vector<MetricRow> read_metric_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kMetricCsvHeader)
    throw InvalidArgument("metric CSV header mismatch");
  std::vector<MetricRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string cell[7];
    for (auto& c : cell)
      if (!std::getline(fields, c, ',')) throw InvalidArgument("metric CSV row too short");
    rows.push_back({cell[0], std::stod(cell[1]), std::stod(cell[2]), std::stod(cell[3]),
                    std::stod(cell[4]), std::stod(cell[5]), std::stoll(cell[6])});
  }
  return rows;
}

}  // namespace evodepth
