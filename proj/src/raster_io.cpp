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

#include "evodepth/raster_io.hpp"

#include <png.h>

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>

namespace evodepth {

namespace {

struct PngImage {
  png_image image;
  PngImage() {
    std::memset(&image, 0, sizeof(image));
    image.version = PNG_IMAGE_VERSION;
  }
  ~PngImage() { png_image_free(&image); }
  PngImage(const PngImage&) = delete;
  PngImage& operator=(const PngImage&) = delete;
};

std::uint8_t quantize(float v) {
  return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0f, 1.0f) * 255.0f));
}

void write_png(const std::filesystem::path& path, int width, int height, int channels,
               const std::vector<std::uint8_t>& data) {
  PngImage png;
  png.image.width = static_cast<png_uint_32>(width);
  png.image.height = static_cast<png_uint_32>(height);
  png.image.format = channels == 3 ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  if (!png_image_write_to_file(&png.image, path.c_str(), 0, data.data(), 0, nullptr))
    throw ImageIoError(IoErrorCode::kWriteFailed,
                       "cannot write " + path.string() + ": " + png.image.message);
}

// Reads 8-bit samples with an alpha channel appended, so that libpng never
// composites anything. Returns (width, height, colour channels, samples).
struct Decoded {
  int width;
  int height;
  int channels;
  std::vector<std::uint8_t> samples;  // channels + 1 per pixel
};

Decoded read_png(const std::filesystem::path& path) {
  PngImage png;
  if (!png_image_begin_read_from_file(&png.image, path.c_str()))
    throw ImageIoError(IoErrorCode::kUnreadable,
                       "cannot read " + path.string() + ": " + png.image.message);
  if (png.image.format & PNG_FORMAT_FLAG_LINEAR)
    throw ImageIoError(IoErrorCode::kUnsupportedBitDepth,
                       path.string() + ": only 8-bit PNG images are supported");
  const bool color = (png.image.format & PNG_FORMAT_FLAG_COLOR) != 0;
  png.image.format = color ? PNG_FORMAT_RGBA : PNG_FORMAT_GA;
  Decoded d{static_cast<int>(png.image.width), static_cast<int>(png.image.height),
            color ? 3 : 1, {}};
  d.samples.resize(PNG_IMAGE_SIZE(png.image));
  if (!png_image_finish_read(&png.image, nullptr, d.samples.data(), 0, nullptr))
    throw ImageIoError(IoErrorCode::kUnreadable,
                       "cannot decode " + path.string() + ": " + png.image.message);
  return d;
}

std::vector<std::uint8_t> read_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ImageIoError(IoErrorCode::kUnreadable, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_bytes(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw ImageIoError(IoErrorCode::kWriteFailed, "cannot write " + path.string());
}

void put_u32(std::vector<std::uint8_t>& out, std::size_t at, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out[at + i] = static_cast<std::uint8_t>(v >> (8 * i));
}

std::uint32_t get_u32(const std::vector<std::uint8_t>& in, std::size_t at) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(in[at + i]) << (8 * i);
  return v;
}

}  // namespace

Image load_image(const std::filesystem::path& path) {
  const Decoded d = read_png(path);
  const std::size_t n = static_cast<std::size_t>(d.width) * d.height;
  std::vector<float> pixels(n * d.channels);
  for (std::size_t i = 0; i < n; ++i)
    for (int c = 0; c < d.channels; ++c)
      pixels[i * d.channels + c] = d.samples[i * (d.channels + 1) + c] / 255.0f;
  return Image(d.width, d.height, d.channels, std::move(pixels));
}

void save_image(const Image& img, const std::filesystem::path& path) {
  std::vector<std::uint8_t> data(img.pixels().size());
  std::transform(img.pixels().begin(), img.pixels().end(), data.begin(), quantize);
  write_png(path, img.width(), img.height(), img.channels(), data);
}

RegionMask load_mask(const std::filesystem::path& path) {
  const Decoded d = read_png(path);
  const std::size_t n = static_cast<std::size_t>(d.width) * d.height;
  std::vector<std::uint8_t> flags(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (int c = 0; c < d.channels; ++c)
      if (d.samples[i * (d.channels + 1) + c] != 0) flags[i] = 1;
  return RegionMask(d.width, d.height, std::move(flags));
}

void save_mask(const RegionMask& mask, const std::filesystem::path& path) {
  std::vector<std::uint8_t> data(mask.flags().size());
  std::transform(mask.flags().begin(), mask.flags().end(), data.begin(),
                 [](std::uint8_t f) { return static_cast<std::uint8_t>(f ? 255 : 0); });
  write_png(path, mask.width(), mask.height(), 1, data);
}

std::vector<std::uint8_t> encode_dmap(int width, int height, const std::vector<float>& values) {
  std::vector<std::uint8_t> out(16 + values.size() * 4);
  std::memcpy(out.data(), "DMAP", 4);
  put_u32(out, 4, static_cast<std::uint32_t>(width));
  put_u32(out, 8, static_cast<std::uint32_t>(height));
  put_u32(out, 12, 0);
  for (std::size_t i = 0; i < values.size(); ++i)
    put_u32(out, 16 + 4 * i, std::bit_cast<std::uint32_t>(values[i]));
  return out;
}

RawRaster decode_dmap(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < 16 || std::memcmp(bytes.data(), "DMAP", 4) != 0)
    throw ImageIoError(IoErrorCode::kMalformed, "missing DMAP header");
  RawRaster r;
  const std::uint32_t w = get_u32(bytes, 4);
  const std::uint32_t h = get_u32(bytes, 8);
  if (w == 0 || h == 0 || w > (1u << 16) || h > (1u << 16))
    throw ImageIoError(IoErrorCode::kMalformed, "DMAP dimensions out of range");
  const std::size_t n = static_cast<std::size_t>(w) * h;
  if (bytes.size() != 16 + 4 * n)
    throw ImageIoError(IoErrorCode::kMalformed, "DMAP payload length does not match header");
  r.width = static_cast<int>(w);
  r.height = static_cast<int>(h);
  r.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) r.values[i] = std::bit_cast<float>(get_u32(bytes, 16 + 4 * i));
  return r;
}

DepthMap load_depth(const std::filesystem::path& path) {
  RawRaster r = decode_dmap(read_bytes(path));
  return DepthMap(r.width, r.height, std::move(r.values));
}

void save_depth(const DepthMap& depth, const std::filesystem::path& path) {
  write_bytes(path, encode_dmap(depth.width(), depth.height(), depth.values()));
}

PerturbationField load_field(const std::filesystem::path& path) {
  RawRaster r = decode_dmap(read_bytes(path));
  return PerturbationField(r.width, r.height, std::move(r.values));
}

void save_field(const PerturbationField& field, const std::filesystem::path& path) {
  write_bytes(path, encode_dmap(field.width(), field.height(), field.deltas()));
}

Image false_color(const DepthMap& depth, float lo, float hi) {
  static constexpr std::array<std::array<float, 3>, 5> kStops{{
      {0.00f, 0.00f, 0.50f},
      {0.00f, 0.75f, 1.00f},
      {0.20f, 0.80f, 0.20f},
      {1.00f, 0.90f, 0.00f},
      {0.60f, 0.00f, 0.00f},
  }};
  const float span = hi > lo ? hi - lo : 1.0f;
  std::vector<float> pixels(depth.size() * 3);
  for (std::size_t i = 0; i < depth.size(); ++i) {
    const float t = std::clamp((depth.values()[i] - lo) / span, 0.0f, 1.0f) * 4.0f;
    const int k = std::min(3, static_cast<int>(t));
    const float a = t - static_cast<float>(k);
    for (int c = 0; c < 3; ++c)
      pixels[3 * i + c] = std::clamp(kStops[k][c] * (1.0f - a) + kStops[k + 1][c] * a, 0.0f, 1.0f);
  }
  return Image(depth.width(), depth.height(), 3, std::move(pixels));
}

}  // namespace evodepth
