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

#include "evodepth/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace evodepth::kernels {

namespace {

inline float sample_zero_padded(std::span<const float> src, int w, int h, int x, int y) {
  if (x < 0 || y < 0 || x >= w || y >= h) return 0.0f;
  return src[static_cast<std::size_t>(y) * w + x];
}

inline float bilinear(std::span<const float> src, int w, int h, double sx, double sy) {
  const double fx0 = std::floor(sx);
  const double fy0 = std::floor(sy);
  // Far outside the source; also keeps the int conversion in range.
  if (!(fx0 > -2.0 && fy0 > -2.0 && fx0 < w + 1.0 && fy0 < h + 1.0)) return 0.0f;
  const int x0 = static_cast<int>(fx0);
  const int y0 = static_cast<int>(fy0);
  const double ax = sx - fx0;
  const double ay = sy - fy0;
  const double v00 = sample_zero_padded(src, w, h, x0, y0);
  const double v10 = sample_zero_padded(src, w, h, x0 + 1, y0);
  const double v01 = sample_zero_padded(src, w, h, x0, y0 + 1);
  const double v11 = sample_zero_padded(src, w, h, x0 + 1, y0 + 1);
  const double top = v00 * (1.0 - ax) + v10 * ax;
  const double bottom = v01 * (1.0 - ax) + v11 * ax;
  return static_cast<float>(top * (1.0 - ay) + bottom * ay);
}

inline void warp_row(std::span<const float> src, int src_w, int src_h,
                     const std::array<double, 9>& m, std::span<float> dst, int dst_w, int y) {
  for (int x = 0; x < dst_w; ++x) {
    const double w = m[6] * x + m[7] * y + m[8];
    float value = 0.0f;
    if (std::abs(w) > 1e-12) {
      const double sx = (m[0] * x + m[1] * y + m[2]) / w;
      const double sy = (m[3] * x + m[4] * y + m[5]) / w;
      value = bilinear(src, src_w, src_h, sx, sy);
    }
    dst[static_cast<std::size_t>(y) * dst_w + x] = value;
  }
}

inline void stamp_one(const StampJob& job, std::span<float> dst, int dst_width) {
  for (int y = job.y0; y < job.y1; ++y) {
    const float* row = job.tile + static_cast<std::size_t>(y - job.y0) * job.tile_size;
    float* out = dst.data() + static_cast<std::size_t>(y) * dst_width;
    for (int x = job.x0; x < job.x1; ++x) out[x] = row[x - job.x0];
  }
}

std::size_t chunk_count(std::size_t n) { return (n + kReductionChunk - 1) / kReductionChunk; }

template <typename ChunkFn>
double chunked_sum(std::size_t n, ChunkFn&& fn) {
  const std::size_t chunks = chunk_count(n);
  std::vector<double> partial(chunks, 0.0);
  const auto count = static_cast<long long>(chunks);
#pragma omp parallel for schedule(static)
  for (long long c = 0; c < count; ++c) {
    const std::size_t begin = static_cast<std::size_t>(c) * kReductionChunk;
    const std::size_t end = std::min(n, begin + kReductionChunk);
    partial[static_cast<std::size_t>(c)] = fn(begin, end);
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

double abs_diff_range(std::span<const float> a, std::span<const float> b,
                      std::span<const std::uint8_t> mask, std::size_t begin, std::size_t end) {
  double sum = 0.0;
  for (std::size_t i = begin; i < end; ++i)
    if (mask[i]) sum += std::abs(static_cast<double>(a[i]) - static_cast<double>(b[i]));
  return sum;
}

double squares_range(std::span<const float> v, std::size_t begin, std::size_t end) {
  double sum = 0.0;
  for (std::size_t i = begin; i < end; ++i) sum += static_cast<double>(v[i]) * v[i];
  return sum;
}

double masked_pixel_range(std::span<const float> pixels, int channels,
                          std::span<const std::uint8_t> mask, std::size_t begin, std::size_t end) {
  double sum = 0.0;
  for (std::size_t i = begin; i < end; ++i) {
    if (!mask[i]) continue;
    for (int c = 0; c < channels; ++c) sum += pixels[i * channels + c];
  }
  return sum;
}

std::size_t mask_count(std::span<const std::uint8_t> mask) {
  return static_cast<std::size_t>(
      std::count_if(mask.begin(), mask.end(), [](std::uint8_t f) { return f != 0; }));
}

}  // namespace

namespace serial {

void stamp(std::span<const StampJob> jobs, std::span<float> dst, int dst_width) {
  for (const auto& job : jobs) stamp_one(job, dst, dst_width);
}

void apply_delta(std::span<const float> pixels, int channels, std::span<const float> deltas,
                 std::span<float> out) {
  for (std::size_t i = 0; i < deltas.size(); ++i)
    for (int c = 0; c < channels; ++c) {
      const std::size_t k = i * channels + c;
      out[k] = std::clamp(pixels[k] + deltas[i], 0.0f, 1.0f);
    }
}

void mask_out(std::span<float> values, std::span<const std::uint8_t> mask) {
  for (std::size_t i = 0; i < values.size(); ++i)
    if (!mask[i]) values[i] = 0.0f;
}

double masked_abs_diff_sum(std::span<const float> a, std::span<const float> b,
                           std::span<const std::uint8_t> mask) {
  return abs_diff_range(a, b, mask, 0, a.size());
}

double sum_squares(std::span<const float> values) {
  return squares_range(values, 0, values.size());
}

double masked_mean(std::span<const float> pixels, int channels,
                   std::span<const std::uint8_t> mask) {
  const std::size_t n = mask_count(mask);
  if (n == 0) return 0.0;
  return masked_pixel_range(pixels, channels, mask, 0, mask.size()) /
         static_cast<double>(n * channels);
}

void warp_bilinear(std::span<const float> src, int src_w, int src_h,
                   const std::array<double, 9>& inverse, std::span<float> dst, int dst_w,
                   int dst_h) {
  for (int y = 0; y < dst_h; ++y) warp_row(src, src_w, src_h, inverse, dst, dst_w, y);
}

}  // namespace serial

namespace parallel {

void stamp(std::span<const StampJob> jobs, std::span<float> dst, int dst_width) {
  const auto n = static_cast<long long>(jobs.size());
#pragma omp parallel for schedule(static)
  for (long long j = 0; j < n; ++j) stamp_one(jobs[static_cast<std::size_t>(j)], dst, dst_width);
}

void apply_delta(std::span<const float> pixels, int channels, std::span<const float> deltas,
                 std::span<float> out) {
  const auto n = static_cast<long long>(deltas.size());
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < n; ++i)
    for (int c = 0; c < channels; ++c) {
      const std::size_t k = static_cast<std::size_t>(i) * channels + c;
      out[k] = std::clamp(pixels[k] + deltas[static_cast<std::size_t>(i)], 0.0f, 1.0f);
    }
}

void mask_out(std::span<float> values, std::span<const std::uint8_t> mask) {
  const auto n = static_cast<long long>(values.size());
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < n; ++i)
    if (!mask[static_cast<std::size_t>(i)]) values[static_cast<std::size_t>(i)] = 0.0f;
}

double masked_abs_diff_sum(std::span<const float> a, std::span<const float> b,
                           std::span<const std::uint8_t> mask) {
  return chunked_sum(a.size(), [&](std::size_t begin, std::size_t end) {
    return abs_diff_range(a, b, mask, begin, end);
  });
}

double sum_squares(std::span<const float> values) {
  return chunked_sum(values.size(), [&](std::size_t begin, std::size_t end) {
    return squares_range(values, begin, end);
  });
}

double masked_mean(std::span<const float> pixels, int channels,
                   std::span<const std::uint8_t> mask) {
  const std::size_t n = mask_count(mask);
  if (n == 0) return 0.0;
  const double sum = chunked_sum(mask.size(), [&](std::size_t begin, std::size_t end) {
    return masked_pixel_range(pixels, channels, mask, begin, end);
  });
  return sum / static_cast<double>(n * channels);
}

void warp_bilinear(std::span<const float> src, int src_w, int src_h,
                   const std::array<double, 9>& inverse, std::span<float> dst, int dst_w,
                   int dst_h) {
#pragma omp parallel for schedule(static)
  for (int y = 0; y < dst_h; ++y) warp_row(src, src_w, src_h, inverse, dst, dst_w, y);
}

}  // namespace parallel

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace evodepth::kernels
