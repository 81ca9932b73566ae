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

#include "evodepth/imaging.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "evodepth/errors.hpp"
#include "evodepth/kernels.hpp"

namespace evodepth {

namespace {

void check_dims(int width, int height) {
  if (width <= 0 || height <= 0)
    throw DimensionError("raster dimensions must be positive, got " + std::to_string(width) +
                         "x" + std::to_string(height));
}

std::size_t area(int width, int height) {
  return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
}

}  // namespace

Image::Image(int width, int height, int channels, std::vector<float> pixels)
    : width_(width), height_(height), channels_(channels), pixels_(std::move(pixels)) {
  check_dims(width, height);
  if (channels != 1 && channels != 3)
    throw DimensionError("image must have 1 or 3 channels, got " + std::to_string(channels));
  if (pixels_.size() != area(width, height) * channels)
    throw DimensionError("pixel buffer length does not match image dimensions");
  for (float v : pixels_)
    if (!(v >= 0.0f && v <= 1.0f)) throw InvalidArgument("image values must lie in [0, 1]");
}

Image::Image(int width, int height, int channels, float value)
    : Image(width, height, channels,
            std::vector<float>(area(std::max(width, 0), std::max(height, 0)) *
                                   static_cast<std::size_t>(std::max(channels, 0)),
                               value)) {}

DepthMap::DepthMap(int width, int height, std::vector<float> values)
    : width_(width), height_(height), values_(std::move(values)) {
  check_dims(width, height);
  if (values_.size() != area(width, height))
    throw DimensionError("depth buffer length does not match dimensions");
  for (float v : values_)
    if (!(std::isfinite(v) && v >= 0.0f))
      throw InvalidArgument("depth values must be finite and nonnegative");
}

DepthMap::DepthMap(int width, int height, float value)
    : DepthMap(width, height,
               std::vector<float>(area(std::max(width, 0), std::max(height, 0)), value)) {}

RegionMask::RegionMask(int width, int height, std::vector<std::uint8_t> flags)
    : width_(width), height_(height), flags_(std::move(flags)) {
  check_dims(width, height);
  if (flags_.size() != area(width, height))
    throw DimensionError("mask buffer length does not match dimensions");
  for (auto& f : flags_) f = f ? 1 : 0;
}

RegionMask RegionMask::rectangle(int width, int height, int x0, int y0, int w, int h) {
  check_dims(width, height);
  std::vector<std::uint8_t> flags(area(width, height), 0);
  const int xa = std::max(0, x0), xb = std::min(width, x0 + w);
  const int ya = std::max(0, y0), yb = std::min(height, y0 + h);
  for (int y = ya; y < yb; ++y)
    for (int x = xa; x < xb; ++x) flags[static_cast<std::size_t>(y) * width + x] = 1;
  return RegionMask(width, height, std::move(flags));
}

RegionMask RegionMask::full(int width, int height) {
  check_dims(width, height);
  return RegionMask(width, height, std::vector<std::uint8_t>(area(width, height), 1));
}

std::size_t RegionMask::count() const {
  return static_cast<std::size_t>(std::count(flags_.begin(), flags_.end(), std::uint8_t{1}));
}

std::optional<RegionMask::Bounds> RegionMask::bounding_box() const {
  Bounds b{width_, height_, 0, 0};
  bool any = false;
  for (int y = 0; y < height_; ++y)
    for (int x = 0; x < width_; ++x) {
      if (!at(x, y)) continue;
      any = true;
      b.x0 = std::min(b.x0, x);
      b.y0 = std::min(b.y0, y);
      b.x1 = std::max(b.x1, x + 1);
      b.y1 = std::max(b.y1, y + 1);
    }
  if (!any) return std::nullopt;
  return b;
}

RegionMask rescale_nearest(const RegionMask& mask, int width, int height) {
  check_dims(width, height);
  if (mask.width() == width && mask.height() == height) return mask;
  std::vector<std::uint8_t> flags(area(width, height), 0);
  for (int y = 0; y < height; ++y) {
    const int sy = std::min(mask.height() - 1,
                            static_cast<int>((y + 0.5) * mask.height() / height));
    for (int x = 0; x < width; ++x) {
      const int sx = std::min(mask.width() - 1,
                              static_cast<int>((x + 0.5) * mask.width() / width));
      flags[static_cast<std::size_t>(y) * width + x] = mask.at(sx, sy) ? 1 : 0;
    }
  }
  return RegionMask(width, height, std::move(flags));
}

PerturbationField::PerturbationField(int width, int height)
    : PerturbationField(width, height,
                        std::vector<float>(area(std::max(width, 0), std::max(height, 0)), 0.0f)) {}

PerturbationField::PerturbationField(int width, int height, std::vector<float> deltas)
    : width_(width), height_(height), deltas_(std::move(deltas)) {
  check_dims(width, height);
  if (deltas_.size() != area(width, height))
    throw DimensionError("field buffer length does not match dimensions");
  for (float v : deltas_)
    if (!std::isfinite(v)) throw InvalidArgument("perturbation values must be finite");
}

bool PerturbationField::is_zero() const {
  return std::all_of(deltas_.begin(), deltas_.end(), [](float v) { return v == 0.0f; });
}

PixelRect BlockGrid::footprint(BlockCoord b) const {
  PixelRect r{origin_x + b.u * block_size, origin_y + b.v * block_size, 0, 0};
  r.x1 = std::min(raster_width, r.x0 + block_size);
  r.y1 = std::min(raster_height, r.y0 + block_size);
  return r;
}

BlockGrid block_grid(const RegionMask& mask, int block_size) {
  if (block_size < 1) throw InvalidArgument("block size must be at least 1");
  const auto box = mask.bounding_box();
  if (!box) throw InvalidArgument("cannot build a block grid over an empty mask");
  BlockGrid grid;
  grid.block_size = block_size;
  grid.origin_x = box->x0;
  grid.origin_y = box->y0;
  grid.cols = (box->x1 - box->x0 + block_size - 1) / block_size;
  grid.rows = (box->y1 - box->y0 + block_size - 1) / block_size;
  grid.raster_width = mask.width();
  grid.raster_height = mask.height();
  for (int v = 0; v < grid.rows; ++v)
    for (int u = 0; u < grid.cols; ++u) {
      const PixelRect r = grid.footprint({u, v});
      bool touches = false;
      for (int y = r.y0; y < r.y1 && !touches; ++y)
        for (int x = r.x0; x < r.x1 && !touches; ++x) touches = mask.at(x, y);
      if (touches) grid.covered_blocks.push_back({u, v});
    }
  return grid;
}

Homography::Homography() : m_{1, 0, 0, 0, 1, 0, 0, 0, 1} {}

Homography::Homography(const std::array<double, 9>& m) : m_(m) {
  for (double v : m_)
    if (!std::isfinite(v)) throw InvalidArgument("homography entries must be finite");
  if (std::abs(determinant()) <= 1e-9) throw InvalidArgument("homography is not invertible");
}

Homography Homography::translation(double dx, double dy) {
  return Homography({1, 0, dx, 0, 1, dy, 0, 0, 1});
}

bool Homography::is_identity() const { return m_ == Homography().m_; }

double Homography::determinant() const {
  const auto& a = m_;
  return a[0] * (a[4] * a[8] - a[5] * a[7]) - a[1] * (a[3] * a[8] - a[5] * a[6]) +
         a[2] * (a[3] * a[7] - a[4] * a[6]);
}

Homography Homography::inverse() const {
  const auto& a = m_;
  const double det = determinant();
  std::array<double, 9> inv{
      (a[4] * a[8] - a[5] * a[7]) / det, (a[2] * a[7] - a[1] * a[8]) / det,
      (a[1] * a[5] - a[2] * a[4]) / det, (a[5] * a[6] - a[3] * a[8]) / det,
      (a[0] * a[8] - a[2] * a[6]) / det, (a[2] * a[3] - a[0] * a[5]) / det,
      (a[3] * a[7] - a[4] * a[6]) / det, (a[1] * a[6] - a[0] * a[7]) / det,
      (a[0] * a[4] - a[1] * a[3]) / det};
  return Homography(inv);
}

std::pair<double, double> Homography::apply(double x, double y) const {
  const double w = m_[6] * x + m_[7] * y + m_[8];
  return {(m_[0] * x + m_[1] * y + m_[2]) / w, (m_[3] * x + m_[4] * y + m_[5]) / w};
}

PerturbationField warp_delta(const PerturbationField& delta, const Homography& h, int width,
                             int height) {
  check_dims(width, height);
  if (h.is_identity() && delta.width() == width && delta.height() == height) return delta;
  PerturbationField out(width, height);
  kernels::parallel::warp_bilinear(delta.deltas(), delta.width(), delta.height(),
                                   h.inverse().matrix(), out.mutable_deltas(), width, height);
  return out;
}

}  // namespace evodepth
