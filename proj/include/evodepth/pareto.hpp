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

#ifndef EVODEPTH_PARETO_HPP
#define EVODEPTH_PARETO_HPP

#include <cstddef>
#include <vector>

#include "evodepth/genome.hpp"
#include "evodepth/objectives.hpp"

namespace evodepth {

// Pareto dominance for minimization.
bool dominates(const ObjectiveVector& a, const ObjectiveVector& b);
bool weakly_dominates(const ObjectiveVector& a, const ObjectiveVector& b);

struct ArchiveEntry {
  ObjectiveVector objectives;
  Genome genes;
};

// Unbounded set of mutually non-dominated points. A candidate weakly
// dominated by a member is rejected; members it dominates are pruned.
class ParetoArchive {
 public:
  bool insert(const ObjectiveVector& f, const Genome& genes);
  const std::vector<ArchiveEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  void clear() { entries_.clear(); }

  // Entries ordered by f1, then f2.
  std::vector<ArchiveEntry> sorted() const;

 private:
  std::vector<ArchiveEntry> entries_;
};

// Area dominated by the points and bounded by the reference point. Points
// not strictly better than the reference in both objectives add nothing.
double hypervolume_2d(std::vector<ObjectiveVector> points, const ObjectiveVector& reference);

}  // namespace evodepth

#endif  // EVODEPTH_PARETO_HPP
