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

#include "evodepth/pareto.hpp"

#include <algorithm>

namespace evodepth {

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
  return a.f1 <= b.f1 && a.f2 <= b.f2 && (a.f1 < b.f1 || a.f2 < b.f2);
}

bool weakly_dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
  return a.f1 <= b.f1 && a.f2 <= b.f2;
}

bool ParetoArchive::insert(const ObjectiveVector& f, const Genome& genes) {
  for (const auto& e : entries_)
    if (weakly_dominates(e.objectives, f)) return false;
  std::erase_if(entries_, [&](const ArchiveEntry& e) { return dominates(f, e.objectives); });
  entries_.push_back({f, genes});
  return true;
}

std::vector<ArchiveEntry> ParetoArchive::sorted() const {
  std::vector<ArchiveEntry> out = entries_;
  std::sort(out.begin(), out.end(), [](const ArchiveEntry& a, const ArchiveEntry& b) {
    if (a.objectives.f1 != b.objectives.f1) return a.objectives.f1 < b.objectives.f1;
    return a.objectives.f2 < b.objectives.f2;
  });
  return out;
}

double hypervolume_2d(std::vector<ObjectiveVector> points, const ObjectiveVector& reference) {
  std::erase_if(points, [&](const ObjectiveVector& p) {
    return !(p.f1 < reference.f1 && p.f2 < reference.f2);
  });
  std::sort(points.begin(), points.end(), [](const ObjectiveVector& a, const ObjectiveVector& b) {
    return a.f1 != b.f1 ? a.f1 < b.f1 : a.f2 < b.f2;
  });
  double volume = 0.0;
  double ceiling = reference.f2;
  for (const auto& p : points) {
    if (p.f2 >= ceiling) continue;
    volume += (reference.f1 - p.f1) * (ceiling - p.f2);
    ceiling = p.f2;
  }
  return volume;
}

}  // namespace evodepth
