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

#ifndef EVODEPTH_IMAGING_HPP
#define EVODEPTH_IMAGING_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace evodepth {

// Row-major, channel-interleaved raster with values in [0, 1].
class Image {
 public:
  Image() = default;
  Image(int width, int height, int channels, std::vector<float> pixels);
  // Constant-valued image.
  Image(int width, int height, int channels, float value);

  int width() const { return width_; }
  int height() const { return height_; }
  int channels() const { return channels_; }
  std::size_t pixel_count() const {
    return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
  }
  const std::vector<float>& pixels() const { return pixels_; }
  float at(int x, int y, int c = 0) const {
    return pixels_[(static_cast<std::size_t>(y) * width_ + x) * channels_ + c];
  }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  int channels_ = 1;
  std::vector<float> pixels_;
};

// Row-major nonnegative depth (or disparity) values.
class DepthMap {
 public:
  DepthMap() = default;
  DepthMap(int width, int height, std::vector<float> values);
  DepthMap(int width, int height, float value);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return values_.size(); }
  const std::vector<float>& values() const { return values_; }
  float at(int x, int y) const {
    return values_[static_cast<std::size_t>(y) * width_ + x];
  }

  friend bool operator==(const DepthMap&, const DepthMap&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<float> values_;
};

class RegionMask {
 public:
  RegionMask() = default;
  RegionMask(int width, int height, std::vector<std::uint8_t> flags);
  // Mask with the rectangle [x0, x0 + w) x [y0, y0 + h) set, clipped.
  static RegionMask rectangle(int width, int height, int x0, int y0, int w, int h);
  static RegionMask full(int width, int height);

  int width() const { return width_; }
  int height() const { return height_; }
  const std::vector<std::uint8_t>& flags() const { return flags_; }
  bool at(int x, int y) const {
    return flags_[static_cast<std::size_t>(y) * width_ + x] != 0;
  }
  std::size_t count() const;
  bool empty() const { return count() == 0; }

  struct Bounds {
    int x0, y0, x1, y1;  // half-open
  };
  std::optional<Bounds> bounding_box() const;

  friend bool operator==(const RegionMask&, const RegionMask&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> flags_;
};

// Nearest-neighbour resampling of a mask to another raster size.
RegionMask rescale_nearest(const RegionMask& mask, int width, int height);

// Additive per-pixel intensity delta; one scalar per pixel.
class PerturbationField {
 public:
  PerturbationField() = default;
  PerturbationField(int width, int height);
  PerturbationField(int width, int height, std::vector<float> deltas);

  int width() const { return width_; }
  int height() const { return height_; }
  const std::vector<float>& deltas() const { return deltas_; }
  std::vector<float>& mutable_deltas() { return deltas_; }
  float at(int x, int y) const {
    return deltas_[static_cast<std::size_t>(y) * width_ + x];
  }
  float& at(int x, int y) {
    return deltas_[static_cast<std::size_t>(y) * width_ + x];
  }
  bool is_zero() const;

  friend bool operator==(const PerturbationField&, const PerturbationField&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<float> deltas_;
};

struct BlockCoord {
  int u = 0;
  int v = 0;
  friend bool operator==(const BlockCoord&, const BlockCoord&) = default;
};

struct PixelRect {
  int x0, y0, x1, y1;  // half-open
  int width() const { return x1 - x0; }
  int height() const { return y1 - y0; }
};

// Square blocks anchored at the top-left of a mask's bounding box. Only
// blocks whose footprint touches the mask are kept; edge blocks are clipped
// to the raster.
struct BlockGrid {
  int block_size = 1;
  int origin_x = 0;
  int origin_y = 0;
  int cols = 0;
  int rows = 0;
  int raster_width = 0;
  int raster_height = 0;
  std::vector<BlockCoord> covered_blocks;  // row-major in (v, u)

  PixelRect footprint(BlockCoord b) const;
};

BlockGrid block_grid(const RegionMask& mask, int block_size);

// Projective map from source (texture) coordinates to destination (image)
// coordinates, row-major 3x3.
class Homography {
 public:
  Homography();  // identity
  explicit Homography(const std::array<double, 9>& m);
  static Homography translation(double dx, double dy);

  const std::array<double, 9>& matrix() const { return m_; }
  bool is_identity() const;
  double determinant() const;
  Homography inverse() const;
  std::pair<double, double> apply(double x, double y) const;

 private:
  std::array<double, 9> m_;
};

// Resamples a texture-space field into a width x height image-space field by
// inverse mapping each destination pixel and sampling bilinearly. Samples
// outside the source are zero.
PerturbationField warp_delta(const PerturbationField& delta, const Homography& h,
                             int width, int height);

}  // namespace evodepth

#endif  // EVODEPTH_IMAGING_HPP
