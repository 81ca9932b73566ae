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

#include "evodepth/encoding.hpp"

#include <algorithm>
#include <cmath>

#include "evodepth/errors.hpp"

namespace evodepth {

namespace {

// Nearest float not larger in magnitude, so converted deltas never exceed
// their double bound.
float toward_zero(double v) {
  float f = static_cast<float>(v);
  if (std::abs(static_cast<double>(f)) > std::abs(v)) f = std::nextafter(f, 0.0f);
  return f;
}

}  // namespace

void Bounds::validate() const {
  if (n_patterns < 1) throw InvalidArgument("number of patterns must be at least 1");
  if (pattern_size < 1) throw InvalidArgument("pattern size must be at least 1");
  if (!(epsilon_max > 0.0 && epsilon_max <= 1.0))
    throw InvalidArgument("epsilon_max must lie in (0, 1]");
}

std::size_t Layout::block_count() const {
  std::size_t n = 0;
  for (const auto& s : surfaces) n += s.grid.covered_blocks.size();
  return n;
}

Layout Layout::single(const RegionMask& region, int pattern_size) {
  Layout layout;
  layout.region = region;
  layout.surfaces.push_back({region, block_grid(region, pattern_size), Homography()});
  return layout;
}

Layout Layout::with_surfaces(const RegionMask& region,
                             std::vector<std::pair<RegionMask, Homography>> surfaces,
                             int pattern_size) {
  if (surfaces.empty()) return single(region, pattern_size);
  Layout layout;
  layout.region = region;
  for (auto& [mask, h] : surfaces) {
    BlockGrid grid = block_grid(mask, pattern_size);
    layout.surfaces.push_back({std::move(mask), std::move(grid), h});
  }
  return layout;
}

Genome to_genome(const Solution& sol) {
  Genome g;
  g.reserve(sol.size());
  g.insert(g.end(), sol.map_genes.begin(), sol.map_genes.end());
  g.insert(g.end(), sol.pattern_genes.begin(), sol.pattern_genes.end());
  return g;
}

Solution from_genome(std::span<const double> genes, std::size_t block_count) {
  if (genes.size() < block_count) throw DimensionError("genome shorter than the block count");
  Solution sol;
  sol.map_genes.assign(genes.begin(), genes.begin() + static_cast<std::ptrdiff_t>(block_count));
  sol.pattern_genes.assign(genes.begin() + static_cast<std::ptrdiff_t>(block_count), genes.end());
  return sol;
}

BoxBounds gene_box(const Bounds& bounds, std::size_t block_count) {
  BoxBounds box;
  const std::size_t n = block_count + bounds.pattern_gene_count();
  box.lower.assign(n, -bounds.epsilon_max);
  box.upper.assign(n, bounds.epsilon_max);
  std::fill_n(box.lower.begin(), block_count, 0.0);
  std::fill_n(box.upper.begin(), block_count, static_cast<double>(bounds.n_patterns));
  return box;
}

Solution random_solution(const Bounds& bounds, std::size_t block_count, Rng& rng) {
  Solution sol;
  sol.map_genes.resize(block_count);
  sol.pattern_genes.resize(bounds.pattern_gene_count());
  for (auto& g : sol.map_genes) g = rng.uniform(0.0, static_cast<double>(bounds.n_patterns));
  for (auto& g : sol.pattern_genes) g = rng.uniform(-bounds.epsilon_max, bounds.epsilon_max);
  return sol;
}

Solution identity_solution(const Bounds& bounds, std::size_t block_count) {
  return {std::vector<double>(block_count, 0.0),
          std::vector<double>(bounds.pattern_gene_count(), 0.0)};
}

int decode_assignment(double gene, int n_patterns) {
  if (std::isnan(gene)) return 0;
  const double clamped = std::clamp(gene, 0.0, static_cast<double>(n_patterns));
  return std::min(n_patterns, static_cast<int>(std::floor(clamped + 0.5)));
}

PerturbationField render_perturbation(const Solution& sol, const Layout& layout,
                                      const Bounds& bounds, Exec exec) {
  if (sol.map_genes.size() != layout.block_count())
    throw DimensionError("map gene count does not match the layout's block count");
  if (sol.pattern_genes.size() != bounds.pattern_gene_count())
    throw DimensionError("pattern gene count does not match bounds");
  const bool par = exec == Exec::kParallel;
  const int n = bounds.pattern_size;
  const std::size_t tile_len = static_cast<std::size_t>(n) * n;

  std::vector<float> tiles(sol.pattern_genes.size());
  std::transform(sol.pattern_genes.begin(), sol.pattern_genes.end(), tiles.begin(), toward_zero);

  PerturbationField field(layout.width(), layout.height());
  std::size_t gene = 0;
  for (const Surface& surface : layout.surfaces) {
    const int tw = surface.texture_mask.width();
    const int th = surface.texture_mask.height();
    PerturbationField texture(tw, th);
    std::vector<kernels::StampJob> jobs;
    for (const BlockCoord& b : surface.grid.covered_blocks) {
      const int r = decode_assignment(sol.map_genes[gene++], bounds.n_patterns);
      if (r == 0) continue;
      const PixelRect rect = surface.grid.footprint(b);
      jobs.push_back({rect.x0, rect.y0, rect.x1, rect.y1,
                      tiles.data() + static_cast<std::size_t>(r - 1) * tile_len, n});
    }
    if (jobs.empty()) continue;
    if (par) {
      kernels::parallel::stamp(jobs, texture.mutable_deltas(), tw);
      kernels::parallel::mask_out(texture.mutable_deltas(), surface.texture_mask.flags());
    } else {
      kernels::serial::stamp(jobs, texture.mutable_deltas(), tw);
      kernels::serial::mask_out(texture.mutable_deltas(), surface.texture_mask.flags());
    }
    if (layout.surfaces.size() == 1 && surface.to_image.is_identity() && tw == field.width() &&
        th == field.height()) {
      field = std::move(texture);
      continue;
    }
    PerturbationField warped(field.width(), field.height());
    if (surface.to_image.is_identity() && tw == field.width() && th == field.height()) {
      warped = std::move(texture);
    } else if (par) {
      kernels::parallel::warp_bilinear(texture.deltas(), tw, th,
                                       surface.to_image.inverse().matrix(),
                                       warped.mutable_deltas(), field.width(), field.height());
    } else {
      kernels::serial::warp_bilinear(texture.deltas(), tw, th,
                                     surface.to_image.inverse().matrix(),
                                     warped.mutable_deltas(), field.width(), field.height());
    }
    auto& acc = field.mutable_deltas();
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += warped.deltas()[i];
  }

  auto& deltas = field.mutable_deltas();
  if (par)
    kernels::parallel::mask_out(deltas, layout.region.flags());
  else
    kernels::serial::mask_out(deltas, layout.region.flags());
  // Overlapping surfaces may sum past the bound.
  if (layout.surfaces.size() > 1) {
    const float eps = toward_zero(bounds.epsilon_max);
    for (float& d : deltas) d = std::clamp(d, -eps, eps);
  }
  return field;
}

Image apply_to_image(const Image& img, const PerturbationField& field, Exec exec) {
  if (img.width() != field.width() || img.height() != field.height())
    throw DimensionError("image and perturbation field dimensions differ");
  std::vector<float> out(img.pixels().size());
  if (exec == Exec::kParallel)
    kernels::parallel::apply_delta(img.pixels(), img.channels(), field.deltas(), out);
  else
    kernels::serial::apply_delta(img.pixels(), img.channels(), field.deltas(), out);
  return Image(img.width(), img.height(), img.channels(), std::move(out));
}

double violation(const Solution& sol, const Bounds& bounds) {
  const Genome g = to_genome(sol);
  BoxBounds box = gene_box(bounds, sol.map_genes.size());
  if (box.size() != g.size()) {
    // Malformed pattern length: score what overlaps.
    box.lower.resize(g.size(), -bounds.epsilon_max);
    box.upper.resize(g.size(), bounds.epsilon_max);
  }
  return box_violation(g, box);
}

nlohmann::json solution_to_json(const Solution& sol, const Bounds& bounds) {
  const std::size_t tile = static_cast<std::size_t>(bounds.pattern_size) * bounds.pattern_size;
  if (sol.pattern_genes.size() != bounds.pattern_gene_count())
    throw DimensionError("pattern gene count does not match bounds");
  nlohmann::json patterns = nlohmann::json::array();
  for (int r = 0; r < bounds.n_patterns; ++r) {
    const auto first = sol.pattern_genes.begin() + static_cast<std::ptrdiff_t>(r * tile);
    patterns.push_back(std::vector<double>(first, first + static_cast<std::ptrdiff_t>(tile)));
  }
  return {{"map", sol.map_genes}, {"patterns", patterns}};
}

Solution solution_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("map") || !j.contains("patterns"))
    throw InvalidArgument("solution JSON needs \"map\" and \"patterns\"");
  Solution sol;
  sol.map_genes = j.at("map").get<std::vector<double>>();
  std::size_t tile = 0;
  for (const auto& p : j.at("patterns")) {
    auto values = p.get<std::vector<double>>();
    if (tile == 0) tile = values.size();
    if (values.size() != tile || tile == 0)
      throw InvalidArgument("all patterns must have the same nonzero length");
    sol.pattern_genes.insert(sol.pattern_genes.end(), values.begin(), values.end());
  }
  return sol;
}

}  // namespace evodepth
