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

#include "evodepth/genome.hpp"

#include <algorithm>

#include "evodepth/errors.hpp"

namespace evodepth {

double box_violation(std::span<const double> genes, const BoxBounds& box) {
  if (genes.size() != box.size()) throw DimensionError("genome length does not match bounds");
  double total = 0.0;
  for (std::size_t k = 0; k < genes.size(); ++k) {
    if (genes[k] < box.lower[k]) {
      total += box.lower[k] - genes[k];
    } else if (genes[k] > box.upper[k]) {
      total += genes[k] - box.upper[k];
    }
  }
  return total;
}

void clamp_to_box(std::span<double> genes, const BoxBounds& box) {
  if (genes.size() != box.size()) throw DimensionError("genome length does not match bounds");
  for (std::size_t k = 0; k < genes.size(); ++k)
    genes[k] = std::clamp(genes[k], box.lower[k], box.upper[k]);
}

bool inside_box(std::span<const double> genes, const BoxBounds& box) {
  if (genes.size() != box.size()) return false;
  for (std::size_t k = 0; k < genes.size(); ++k)
    if (!(genes[k] >= box.lower[k] && genes[k] <= box.upper[k])) return false;
  return true;
}

}  // namespace evodepth
