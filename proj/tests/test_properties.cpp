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


#include "doctest.h"
#include "invariants.hpp"

namespace {

constexpr int kConfigs = 120;

}  // namespace

TEST_CASE("optimizer invariants over randomized runs") {
  const invariants::OptimizerReport r = invariants::check_optimizer(kConfigs, 2024);
  CHECK(r.runs == kConfigs);
  CHECK(r.reference_increased == 0);
  CHECK(r.reference_above_evaluated == 0);
  CHECK(r.too_many_replacements == 0);
  CHECK(r.gene_out_of_bounds == 0);
  CHECK(r.archive_dominated == 0);
  CHECK(r.feasible_lost == 0);
  CHECK(r.scaling_changed == 0);
}

TEST_CASE("invariants hold for a second batch of seeds") {
  CHECK(invariants::check_optimizer(kConfigs, 77).ok());
}

TEST_CASE("rendered perturbations stay in the mask and within epsilon") {
  const invariants::RenderReport r = invariants::check_rendering(kConfigs, 99);
  CHECK(r.layouts == kConfigs);
  CHECK(r.renders == 3 * kConfigs);
  CHECK(r.nonzero_outside == 0);
  CHECK(r.above_epsilon == 0);
}
