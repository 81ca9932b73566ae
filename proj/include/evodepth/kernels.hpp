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

#ifndef EVODEPTH_KERNELS_HPP
#define EVODEPTH_KERNELS_HPP

// Per-pixel inner loops of the attack evaluator. Each kernel exists twice:
// serial:: is the plain reference loop kept for testing, parallel:: is the
// OpenMP version used by the engine. Elementwise kernels are bit-identical
// between the two. Reductions in parallel:: sum fixed-size chunks and then
// combine the chunk partials in order, so their result does not depend on
// the thread count, and equals the serial result exactly for inputs no
// longer than one chunk.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>

namespace evodepth {

// Selects which kernel family a pipeline function runs on.
enum class Exec { kSerial, kParallel };

}  // namespace evodepth

namespace evodepth::kernels {

inline constexpr std::size_t kReductionChunk = 4096;

// One stamping job: copy a size x size pattern tile into the destination
// raster at (x0, y0), clipped to [x0, x1) x [y0, y1).
struct StampJob {
  int x0, y0, x1, y1;
  const float* tile;
  int tile_size;
};

namespace serial {

void stamp(std::span<const StampJob> jobs, std::span<float> dst, int dst_width);

// out = clamp(pixels + delta broadcast over channels, 0, 1)
void apply_delta(std::span<const float> pixels, int channels, std::span<const float> deltas,
                 std::span<float> out);

// Zeroes every element whose mask flag is 0.
void mask_out(std::span<float> values, std::span<const std::uint8_t> mask);

double masked_abs_diff_sum(std::span<const float> a, std::span<const float> b,
                           std::span<const std::uint8_t> mask);
double sum_squares(std::span<const float> values);
// Mean over all channels of pixels whose mask flag is set. Returns 0 for an
// empty mask.
double masked_mean(std::span<const float> pixels, int channels,
                   std::span<const std::uint8_t> mask);

// inverse: destination -> source, row-major 3x3.
void warp_bilinear(std::span<const float> src, int src_w, int src_h,
                   const std::array<double, 9>& inverse, std::span<float> dst, int dst_w,
                   int dst_h);

}  // namespace serial

namespace parallel {

void stamp(std::span<const StampJob> jobs, std::span<float> dst, int dst_width);
void apply_delta(std::span<const float> pixels, int channels, std::span<const float> deltas,
                 std::span<float> out);
void mask_out(std::span<float> values, std::span<const std::uint8_t> mask);
double masked_abs_diff_sum(std::span<const float> a, std::span<const float> b,
                           std::span<const std::uint8_t> mask);
double sum_squares(std::span<const float> values);
double masked_mean(std::span<const float> pixels, int channels,
                   std::span<const std::uint8_t> mask);
void warp_bilinear(std::span<const float> src, int src_w, int src_h,
                   const std::array<double, 9>& inverse, std::span<float> dst, int dst_w,
                   int dst_h);

}  // namespace parallel

// Number of OpenMP threads available to parallel:: kernels (1 without OpenMP).
int max_threads();

}  // namespace evodepth::kernels

#endif  // EVODEPTH_KERNELS_HPP
