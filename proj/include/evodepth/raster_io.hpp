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

#ifndef EVODEPTH_RASTER_IO_HPP
#define EVODEPTH_RASTER_IO_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "evodepth/errors.hpp"
#include "evodepth/imaging.hpp"

namespace evodepth {

enum class IoErrorCode {
  kUnreadable,
  kUnsupportedBitDepth,
  kMalformed,
  kWriteFailed,
};

class ImageIoError : public Error {
 public:
  ImageIoError(IoErrorCode code, const std::string& what) : Error(what), code_(code) {}
  IoErrorCode code() const { return code_; }

 private:
  IoErrorCode code_;
};

// 8-bit grey or RGB PNG, values scaled by 1/255. Alpha is discarded,
// palette images are expanded to RGB, 16-bit files are rejected.
Image load_image(const std::filesystem::path& path);
// Quantizes to 8 bits with round-to-nearest.
void save_image(const Image& img, const std::filesystem::path& path);

// Any nonzero sample (in any channel) marks the pixel as in the region.
RegionMask load_mask(const std::filesystem::path& path);
void save_mask(const RegionMask& mask, const std::filesystem::path& path);

// DMAP raw raster: "DMAP", u32 LE width, u32 LE height, u32 reserved (0),
// then width*height little-endian float32, row-major.
struct RawRaster {
  int width = 0;
  int height = 0;
  std::vector<float> values;
};
std::vector<std::uint8_t> encode_dmap(int width, int height, const std::vector<float>& values);
RawRaster decode_dmap(const std::vector<std::uint8_t>& bytes);

DepthMap load_depth(const std::filesystem::path& path);
void save_depth(const DepthMap& depth, const std::filesystem::path& path);
PerturbationField load_field(const std::filesystem::path& path);
void save_field(const PerturbationField& field, const std::filesystem::path& path);

// False-colour rendering on a fixed five-stop ramp (dark blue, cyan, green,
// yellow, dark red) with values clamped to [lo, hi]. Passing the same range
// for several maps makes the pictures directly comparable.
Image false_color(const DepthMap& depth, float lo, float hi);

}  // namespace evodepth

#endif  // EVODEPTH_RASTER_IO_HPP
