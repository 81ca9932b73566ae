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


#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "doctest.h"
#include "evodepth/kernels.hpp"
#include "evodepth/rng.hpp"

using namespace evodepth;
namespace ks = evodepth::kernels::serial;
namespace kp = evodepth::kernels::parallel;

namespace {

std::vector<float> random_floats(std::size_t n, float lo, float hi, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<float> v(n);
  for (auto& x : v) x = static_cast<float>(rng.uniform(lo, hi));
  return v;
}

std::vector<std::uint8_t> random_mask(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::uint8_t> m(n);
  for (auto& x : m) x = rng.bernoulli(0.4) ? 1 : 0;
  return m;
}

}  // namespace

TEST_CASE("stamp copies tiles with clipping") {
  const std::vector<float> tile = {1, 2, 3, 4};
  std::vector<float> dst(9, 0.0f);
  const kernels::StampJob jobs[] = {{0, 0, 2, 2, tile.data(), 2}, {2, 2, 3, 3, tile.data(), 2}};
  ks::stamp(jobs, dst, 3);
  CHECK(dst == std::vector<float>{1, 2, 0, 3, 4, 0, 0, 0, 1});
  std::vector<float> par(9, 0.0f);
  kp::stamp(jobs, par, 3);
  CHECK(par == dst);
}

TEST_CASE("apply_delta broadcasts over channels and clamps") {
  const std::vector<float> px = {0.2f, 0.4f, 0.6f, 0.98f, 0.5f, 0.01f};
  const std::vector<float> d = {-0.1f, 0.05f};
  std::vector<float> out(6);
  ks::apply_delta(px, 3, d, out);
  CHECK(out[0] == doctest::Approx(0.1));
  CHECK(out[1] == doctest::Approx(0.3));
  CHECK(out[2] == doctest::Approx(0.5));
  CHECK(out[3] == 1.0f);
  CHECK(out[4] == doctest::Approx(0.55));
  CHECK(out[5] == doctest::Approx(0.06));
}

TEST_CASE("masked reductions against a long double oracle") {
  for (std::size_t n : {1u, 17u, 4096u, 4097u, 50000u}) {
    const auto a = random_floats(n, 0.0f, 10.0f, n);
    const auto b = random_floats(n, 0.0f, 10.0f, n + 1);
    const auto m = random_mask(n, n + 2);
    long double abs_sum = 0, sq = 0, mean_sum = 0;
    std::size_t cnt = 0;
    for (std::size_t i = 0; i < n; ++i) {
      sq += static_cast<long double>(a[i]) * a[i];
      if (!m[i]) continue;
      abs_sum += std::fabs(static_cast<long double>(a[i]) - b[i]);
      mean_sum += a[i];
      ++cnt;
    }
    const double tol = 1e-12 * static_cast<double>(n) * 100.0;
    CHECK(ks::masked_abs_diff_sum(a, b, m) == doctest::Approx(static_cast<double>(abs_sum)).epsilon(tol));
    CHECK(kp::masked_abs_diff_sum(a, b, m) == doctest::Approx(static_cast<double>(abs_sum)).epsilon(tol));
    CHECK(ks::sum_squares(a) == doctest::Approx(static_cast<double>(sq)).epsilon(tol));
    CHECK(kp::sum_squares(a) == doctest::Approx(static_cast<double>(sq)).epsilon(tol));
    const double mean = cnt ? static_cast<double>(mean_sum / cnt) : 0.0;
    CHECK(ks::masked_mean(a, 1, m) == doctest::Approx(mean).epsilon(tol));
    CHECK(kp::masked_mean(a, 1, m) == doctest::Approx(mean).epsilon(tol));
  }
}

TEST_CASE("reductions are bit-identical to serial within one chunk") {
  const std::size_t n = kernels::kReductionChunk;
  const auto a = random_floats(n, -1.0f, 1.0f, 3);
  const auto b = random_floats(n, -1.0f, 1.0f, 4);
  const auto m = random_mask(n, 5);
  CHECK(kp::masked_abs_diff_sum(a, b, m) == ks::masked_abs_diff_sum(a, b, m));
  CHECK(kp::sum_squares(a) == ks::sum_squares(a));
  const auto rgb = random_floats(n * 3, 0.0f, 1.0f, 6);
  CHECK(kp::masked_mean(rgb, 3, m) == ks::masked_mean(rgb, 3, m));
}

TEST_CASE("masked mean of an empty mask is zero") {
  const std::vector<float> px = {0.3f, 0.7f};
  const std::vector<std::uint8_t> m = {0, 0};
  CHECK(ks::masked_mean(px, 1, m) == 0.0);
  CHECK(kp::masked_mean(px, 1, m) == 0.0);
}

#ifdef _OPENMP
TEST_CASE("parallel reductions do not depend on thread count") {
  const std::size_t n = 100000;
  const auto a = random_floats(n, 0.0f, 1.0f, 11);
  const auto b = random_floats(n, 0.0f, 1.0f, 12);
  const auto m = random_mask(n, 13);
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const double s1 = kp::masked_abs_diff_sum(a, b, m);
  const double q1 = kp::sum_squares(a);
  omp_set_num_threads(std::max(4, saved));
  const double s4 = kp::masked_abs_diff_sum(a, b, m);
  const double q4 = kp::sum_squares(a);
  omp_set_num_threads(saved);
  CHECK(s1 == s4);
  CHECK(q1 == q4);
}
#endif

TEST_CASE("elementwise kernels agree bit for bit") {
  const std::size_t w = 97, h = 61;
  const auto px = random_floats(w * h * 3, 0.0f, 1.0f, 21);
  const auto d = random_floats(w * h, -0.2f, 0.2f, 22);
  std::vector<float> o1(px.size()), o2(px.size());
  ks::apply_delta(px, 3, d, o1);
  kp::apply_delta(px, 3, d, o2);
  CHECK(o1 == o2);

  const auto m = random_mask(w * h, 23);
  auto v1 = d, v2 = d;
  ks::mask_out(v1, m);
  kp::mask_out(v2, m);
  CHECK(v1 == v2);
  for (std::size_t i = 0; i < v1.size(); ++i)
    if (!m[i]) CHECK(v1[i] == 0.0f);

  const std::array<double, 9> inv = {0.9, 0.05, 1.5, -0.03, 1.1, -2.0, 0.0005, 0.0002, 1.0};
  std::vector<float> w1(80 * 50), w2(80 * 50);
  ks::warp_bilinear(d, static_cast<int>(w), static_cast<int>(h), inv, w1, 80, 50);
  kp::warp_bilinear(d, static_cast<int>(w), static_cast<int>(h), inv, w2, 80, 50);
  CHECK(w1 == w2);
}

TEST_CASE("bilinear warp is convex: output bounded by source range") {
  const auto src = random_floats(40 * 30, -0.1f, 0.1f, 31);
  const std::array<double, 9> inv = {0.7, 0.2, 3.3, -0.1, 0.8, 1.7, 0.001, -0.002, 1.0};
  std::vector<float> dst(40 * 30);
  kp::warp_bilinear(src, 40, 30, inv, dst, 40, 30);
  for (float v : dst) {
    CHECK(v <= 0.1f);
    CHECK(v >= -0.1f);
  }
}
