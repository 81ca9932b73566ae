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

#ifndef EVODEPTH_ENCODING_HPP
#define EVODEPTH_ENCODING_HPP

#include <cstddef>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "evodepth/genome.hpp"
#include "evodepth/imaging.hpp"
#include "evodepth/kernels.hpp"
#include "evodepth/rng.hpp"

namespace evodepth {

// Search-space dimensions: n_patterns tiles of pattern_size x pattern_size
// deltas, each delta in [-epsilon_max, +epsilon_max].
struct Bounds {
  int n_patterns = 10;
  int pattern_size = 8;
  double epsilon_max = 0.1;

  void validate() const;
  std::size_t pattern_gene_count() const {
    return static_cast<std::size_t>(n_patterns) * pattern_size * pattern_size;
  }
};

// One perturbable surface: a texture-space region, its block grid, and the
// homography taking texture coordinates to image coordinates.
struct Surface {
  RegionMask texture_mask;
  BlockGrid grid;
  Homography to_image;
};

// Where perturbations may go. All surfaces share one pattern set; each
// surface contributes one map gene per covered block.
struct Layout {
  RegionMask region;  // image space
  std::vector<Surface> surfaces;

  int width() const { return region.width(); }
  int height() const { return region.height(); }
  std::size_t block_count() const;

  // Single surface designed directly in image space.
  static Layout single(const RegionMask& region, int pattern_size);
  static Layout with_surfaces(const RegionMask& region,
                              std::vector<std::pair<RegionMask, Homography>> surfaces,
                              int pattern_size);
};

// Relaxed genotype. map_genes are ordered surface by surface, each in the
// grid's covered-block order; pattern_genes hold pattern 1..N row-major.
struct Solution {
  std::vector<double> map_genes;
  std::vector<double> pattern_genes;

  std::size_t size() const { return map_genes.size() + pattern_genes.size(); }
  friend bool operator==(const Solution&, const Solution&) = default;
};

// Flat genome order: all map genes, then all pattern genes.
Genome to_genome(const Solution& sol);
Solution from_genome(std::span<const double> genes, std::size_t block_count);
BoxBounds gene_box(const Bounds& bounds, std::size_t block_count);

Solution random_solution(const Bounds& bounds, std::size_t block_count, Rng& rng);
// All blocks unassigned, all patterns zero.
Solution identity_solution(const Bounds& bounds, std::size_t block_count);

// Round-half-up of clamp(gene, 0, n_patterns); 0 means "no pattern".
int decode_assignment(double gene, int n_patterns);

PerturbationField render_perturbation(const Solution& sol, const Layout& layout,
                                      const Bounds& bounds, Exec exec = Exec::kParallel);

// Adds the delta to every channel and clamps to [0, 1].
Image apply_to_image(const Image& img, const PerturbationField& field,
                     Exec exec = Exec::kParallel);

double violation(const Solution& sol, const Bounds& bounds);

// {"map": [...], "patterns": [[...], ...]}
nlohmann::json solution_to_json(const Solution& sol, const Bounds& bounds);
Solution solution_from_json(const nlohmann::json& j);

}  // namespace evodepth

#endif  // EVODEPTH_ENCODING_HPP
