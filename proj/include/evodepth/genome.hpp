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

#ifndef EVODEPTH_GENOME_HPP
#define EVODEPTH_GENOME_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace evodepth {

using Genome = std::vector<double>;

// Per-gene closed box [lower[k], upper[k]].
struct BoxBounds {
  std::vector<double> lower;
  std::vector<double> upper;

  std::size_t size() const { return lower.size(); }
  static BoxBounds uniform(std::size_t n, double lo, double hi) {
    return {std::vector<double>(n, lo), std::vector<double>(n, hi)};
  }
};

// Sum over genes of the distance outside the box; 0 iff inside.
double box_violation(std::span<const double> genes, const BoxBounds& box);
void clamp_to_box(std::span<double> genes, const BoxBounds& box);
bool inside_box(std::span<const double> genes, const BoxBounds& box);

}  // namespace evodepth

#endif  // EVODEPTH_GENOME_HPP
