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


// Serial vs OpenMP kernels. Arguments are frame width and height.

#include <algorithm>
#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "evodepth/kernels.hpp"

namespace {

namespace k = evodepth::kernels;

struct Frame {
  int w, h;
  std::vector<float> rgb, delta, depth_a, depth_b, warped;
  std::vector<std::uint8_t> mask;

  Frame(int width, int height) : w(width), h(height) {
    const std::size_t n = static_cast<std::size_t>(w) * h;
    std::mt19937 gen(7);
    std::uniform_real_distribution<float> u(0.0f, 1.0f);
    rgb.resize(3 * n);
    for (auto& v : rgb) v = u(gen);
    delta.resize(n);
    depth_a.resize(n);
    depth_b.resize(n);
    warped.resize(n);
    mask.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      delta[i] = 0.2f * u(gen) - 0.1f;
      depth_a[i] = 10.0f * u(gen);
      depth_b[i] = 10.0f * u(gen);
      mask[i] = u(gen) < 0.3f;
    }
  }
};

template <bool Parallel>
void BM_ApplyDelta(benchmark::State& st) {
  Frame f(static_cast<int>(st.range(0)), static_cast<int>(st.range(1)));
  std::vector<float> out(f.rgb.size());
  for (auto _ : st) {
    if constexpr (Parallel) k::parallel::apply_delta(f.rgb, 3, f.delta, out);
    else k::serial::apply_delta(f.rgb, 3, f.delta, out);
    benchmark::DoNotOptimize(out.data());
  }
  st.SetItemsProcessed(st.iterations() * static_cast<long long>(f.rgb.size()));
}

template <bool Parallel>
void BM_MaskedAbsDiff(benchmark::State& st) {
  Frame f(static_cast<int>(st.range(0)), static_cast<int>(st.range(1)));
  for (auto _ : st) {
    double s = Parallel ? k::parallel::masked_abs_diff_sum(f.depth_a, f.depth_b, f.mask)
                        : k::serial::masked_abs_diff_sum(f.depth_a, f.depth_b, f.mask);
    benchmark::DoNotOptimize(s);
  }
  st.SetItemsProcessed(st.iterations() * static_cast<long long>(f.depth_a.size()));
}

template <bool Parallel>
void BM_MaskedMean(benchmark::State& st) {
  Frame f(static_cast<int>(st.range(0)), static_cast<int>(st.range(1)));
  for (auto _ : st) {
    double m = Parallel ? k::parallel::masked_mean(f.rgb, 3, f.mask)
                        : k::serial::masked_mean(f.rgb, 3, f.mask);
    benchmark::DoNotOptimize(m);
  }
  st.SetItemsProcessed(st.iterations() * static_cast<long long>(f.rgb.size()));
}

template <bool Parallel>
void BM_SumSquares(benchmark::State& st) {
  Frame f(static_cast<int>(st.range(0)), static_cast<int>(st.range(1)));
  for (auto _ : st) {
    double s = Parallel ? k::parallel::sum_squares(f.delta) : k::serial::sum_squares(f.delta);
    benchmark::DoNotOptimize(s);
  }
  st.SetItemsProcessed(st.iterations() * static_cast<long long>(f.delta.size()));
}

template <bool Parallel>
void BM_Stamp(benchmark::State& st) {
  Frame f(static_cast<int>(st.range(0)), static_cast<int>(st.range(1)));
  constexpr int kTile = 8;
  std::vector<float> tile(kTile * kTile, 0.05f);
  std::vector<k::StampJob> jobs;
  for (int y = 0; y < f.h; y += kTile)
    for (int x = 0; x < f.w; x += kTile)
      jobs.push_back({x, y, std::min(x + kTile, f.w), std::min(y + kTile, f.h), tile.data(), kTile});
  for (auto _ : st) {
    if constexpr (Parallel) k::parallel::stamp(jobs, f.warped, f.w);
    else k::serial::stamp(jobs, f.warped, f.w);
    benchmark::DoNotOptimize(f.warped.data());
  }
  st.SetItemsProcessed(st.iterations() * static_cast<long long>(f.warped.size()));
}

template <bool Parallel>
void BM_WarpBilinear(benchmark::State& st) {
  Frame f(static_cast<int>(st.range(0)), static_cast<int>(st.range(1)));
  // Mild rotation + perspective.
  const std::array<double, 9> inv{0.98, -0.17, 12.0, 0.17, 0.98, -6.0, 1e-4, -5e-5, 1.0};
  for (auto _ : st) {
    if constexpr (Parallel) k::parallel::warp_bilinear(f.delta, f.w, f.h, inv, f.warped, f.w, f.h);
    else k::serial::warp_bilinear(f.delta, f.w, f.h, inv, f.warped, f.w, f.h);
    benchmark::DoNotOptimize(f.warped.data());
  }
  st.SetItemsProcessed(st.iterations() * static_cast<long long>(f.warped.size()));
}

void Sizes(benchmark::internal::Benchmark* b) {
  b->Args({304, 228})->Args({640, 480})->Args({1920, 1080});
}

}  // namespace

BENCHMARK(BM_ApplyDelta<false>)->Apply(Sizes)->Name("serial/apply_delta");
BENCHMARK(BM_ApplyDelta<true>)->Apply(Sizes)->Name("parallel/apply_delta")->UseRealTime();
BENCHMARK(BM_MaskedAbsDiff<false>)->Apply(Sizes)->Name("serial/masked_abs_diff_sum");
BENCHMARK(BM_MaskedAbsDiff<true>)->Apply(Sizes)->Name("parallel/masked_abs_diff_sum")->UseRealTime();
BENCHMARK(BM_MaskedMean<false>)->Apply(Sizes)->Name("serial/masked_mean");
BENCHMARK(BM_MaskedMean<true>)->Apply(Sizes)->Name("parallel/masked_mean")->UseRealTime();
BENCHMARK(BM_SumSquares<false>)->Apply(Sizes)->Name("serial/sum_squares");
BENCHMARK(BM_SumSquares<true>)->Apply(Sizes)->Name("parallel/sum_squares")->UseRealTime();
BENCHMARK(BM_Stamp<false>)->Apply(Sizes)->Name("serial/stamp");
BENCHMARK(BM_Stamp<true>)->Apply(Sizes)->Name("parallel/stamp")->UseRealTime();
BENCHMARK(BM_WarpBilinear<false>)->Apply(Sizes)->Name("serial/warp_bilinear");
BENCHMARK(BM_WarpBilinear<true>)->Apply(Sizes)->Name("parallel/warp_bilinear")->UseRealTime();

BENCHMARK_MAIN();
