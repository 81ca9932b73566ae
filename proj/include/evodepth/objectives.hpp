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

#ifndef EVODEPTH_OBJECTIVES_HPP
#define EVODEPTH_OBJECTIVES_HPP

#include <ostream>
#include <string>
#include <vector>

#include "evodepth/imaging.hpp"
#include "evodepth/kernels.hpp"

namespace evodepth {

struct ObjectiveVector {
  double f1 = 0.0;  // depth error
  double f2 = 0.0;  // perturbation L2 norm
  friend bool operator==(const ObjectiveVector&, const ObjectiveVector&) = default;
};

// Target depth plus the two regions the metrics sum over, all in
// oracle-output coordinates.
struct TargetSpec {
  DepthMap target_depth;
  RegionMask eval_region;    // f1
  RegionMask volume_region;  // pseudo volume

  void validate() const;
};

// Sum of |est - target| over eval_region.
double depth_error(const DepthMap& est, const TargetSpec& spec, Exec exec = Exec::kParallel);
// Sum of |est - target| over volume_region.
double pseudo_volume(const DepthMap& est, const TargetSpec& spec, Exec exec = Exec::kParallel);
double perturbation_norm(const PerturbationField& field, Exec exec = Exec::kParallel);
// Percentage decrease from v_original to v_adv.
double reduction_rate(double v_original, double v_adv);

struct MetricRow {
  std::string scene;
  double f1 = 0.0;
  double f2 = 0.0;
  double v_original = 0.0;
  double v_adv = 0.0;
  double reduction_pct = 0.0;
  long long queries = 0;
};

inline constexpr const char* kMetricCsvHeader = "scene,f1,f2,V_original,V_adv,reduction_pct,queries";
void write_metric_csv(std::ostream& out, const std::vector<MetricRow>& rows);
std::vector<MetricRow> read_metric_csv(std::istream& in);

}  // namespace evodepth

#endif  // EVODEPTH_OBJECTIVES_HPP
