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


#include <cmath>
#include <vector>

#include "doctest.h"
#include "evodepth/encoding.hpp"
#include "evodepth/errors.hpp"

using namespace evodepth;

namespace {

Bounds small_bounds(int n_patterns = 2, int size = 8, double eps = 0.1) {
  Bounds b;
  b.n_patterns = n_patterns;
  b.pattern_size = size;
  b.epsilon_max = eps;
  return b;
}

}  // namespace

TEST_CASE("bounds validation") {
  CHECK_NOTHROW(Bounds{}.validate());
  CHECK(Bounds{}.pattern_gene_count() == 640);
  CHECK_THROWS_AS(small_bounds(0).validate(), InvalidArgument);
  CHECK_THROWS_AS(small_bounds(1, 0).validate(), InvalidArgument);
  CHECK_THROWS_AS(small_bounds(1, 8, 0.0).validate(), InvalidArgument);
  CHECK_THROWS_AS(small_bounds(1, 8, 1.5).validate(), InvalidArgument);
}

TEST_CASE("random_solution is seeded and in range") {
  const Bounds b{};
  Rng a(42), c(42);
  CHECK(random_solution(b, 12, a) == random_solution(b, 12, c));
  Rng rng(7);
  std::size_t pattern_samples = 0;
  while (pattern_samples < 10000) {
    const Solution s = random_solution(b, 30, rng);
    for (double g : s.map_genes) {
      CHECK(g >= 0.0);
      CHECK(g <= 10.0);
    }
    for (double g : s.pattern_genes) {
      REQUIRE(g >= -0.1);
      REQUIRE(g <= 0.1);
    }
    pattern_samples += s.pattern_genes.size();
  }
}

TEST_CASE("decode_assignment rounds half up after clamping") {
  CHECK(decode_assignment(0.4, 10) == 0);
  CHECK(decode_assignment(2.5, 10) == 3);
  CHECK(decode_assignment(11.7, 10) == 10);
  CHECK(decode_assignment(-3.0, 10) == 0);
  CHECK(decode_assignment(0.5, 10) == 1);
  CHECK(decode_assignment(2.4999999, 10) == 2);
  CHECK(decode_assignment(10.0, 10) == 10);
  for (double g = -2.0; g <= 13.0; g += 0.173) {
    const int d = decode_assignment(g, 10);
    CHECK(decode_assignment(d, 10) == d);
  }
}

TEST_CASE("genome order is map genes then patterns") {
  const Solution s{{1.0, 2.0}, {0.01, 0.02, 0.03, 0.04}};
  const Genome g = to_genome(s);
  CHECK(g == Genome{1.0, 2.0, 0.01, 0.02, 0.03, 0.04});
  CHECK(from_genome(g, 2) == s);
  const BoxBounds box = gene_box(small_bounds(3, 1, 0.1), 2);
  REQUIRE(box.size() == 5);
  CHECK(box.lower == std::vector<double>{0, 0, -0.1, -0.1, -0.1});
  CHECK(box.upper == std::vector<double>{3, 3, 0.1, 0.1, 0.1});
}

TEST_CASE("render: all blocks unassigned gives the zero field") {
  const Bounds b = small_bounds();
  const Layout layout = Layout::single(RegionMask::rectangle(24, 16, 0, 0, 16, 8), 8);
  Solution s = identity_solution(b, layout.block_count());
  std::fill(s.pattern_genes.begin(), s.pattern_genes.end(), 0.07);
  CHECK(render_perturbation(s, layout, b).is_zero());
}

TEST_CASE("render: one block with a constant pattern") {
  const Bounds b = small_bounds(1);
  const Layout layout = Layout::single(RegionMask::rectangle(16, 16, 4, 4, 8, 8), 8);
  REQUIRE(layout.block_count() == 1);
  Solution s{{1.0}, std::vector<double>(64, 0.05)};
  const PerturbationField f = render_perturbation(s, layout, b);
  for (int y = 0; y < 16; ++y)
    for (int x = 0; x < 16; ++x) {
      const bool inside = x >= 4 && x < 12 && y >= 4 && y < 12;
      // Fields are stored in single precision.
      if (inside)
        CHECK(std::abs(f.at(x, y) - 0.05) < 1e-8);
      else
        CHECK(f.at(x, y) == 0.0f);
    }
}

TEST_CASE("render: blocks sharing a pattern get identical deltas") {
  const Bounds b = small_bounds(2, 4);
  const Layout layout = Layout::single(RegionMask::rectangle(8, 4, 0, 0, 8, 4), 4);
  REQUIRE(layout.block_count() == 2);
  Solution s{{1.2, 0.9}, std::vector<double>(32, 0.0)};
  for (int i = 0; i < 16; ++i) s.pattern_genes[i] = 0.006 * i - 0.04;
  const PerturbationField f = render_perturbation(s, layout, b);
  for (int y = 0; y < 4; ++y)
    for (int x = 0; x < 4; ++x) {
      CHECK(f.at(x, y) == f.at(x + 4, y));
      CHECK(f.at(x, y) == doctest::Approx(0.006 * (y * 4 + x) - 0.04).epsilon(1e-6));
    }
}

TEST_CASE("render: second pattern, clipped edge block, non-rectangular mask") {
  const Bounds b = small_bounds(2, 4);
  std::vector<std::uint8_t> flags(6 * 4, 1);
  flags[0] = 0;
  const RegionMask mask(6, 4, flags);
  const Layout layout = Layout::single(mask, 4);
  REQUIRE(layout.block_count() == 2);
  Solution s{{2.0, 2.0}, std::vector<double>(32, 0.0)};
  for (int i = 0; i < 16; ++i) s.pattern_genes[16 + i] = 0.001 * (i + 1);
  const PerturbationField f = render_perturbation(s, layout, b);
  CHECK(f.at(0, 0) == 0.0f);
  CHECK(f.at(1, 0) == doctest::Approx(0.002));
  CHECK(f.at(4, 1) == doctest::Approx(0.005));
  CHECK(f.at(5, 3) == doctest::Approx(0.014));
}

TEST_CASE("render: serial and parallel agree bit for bit") {
  const Bounds b = small_bounds(4, 5, 0.2);
  const RegionMask mask = RegionMask::rectangle(41, 33, 3, 2, 30, 27);
  const Layout layout = Layout::single(mask, 5);
  Rng rng(3);
  for (int k = 0; k < 5; ++k) {
    const Solution s = random_solution(b, layout.block_count(), rng);
    CHECK(render_perturbation(s, layout, b, Exec::kSerial) ==
          render_perturbation(s, layout, b, Exec::kParallel));
  }
}

TEST_CASE("render: warped surface stays inside its image region") {
  const Bounds b = small_bounds(2, 4, 0.1);
  const RegionMask texture = RegionMask::full(8, 8);
  const RegionMask region = RegionMask::rectangle(20, 20, 5, 5, 10, 10);
  Layout layout = Layout::with_surfaces(
      region, {{texture, Homography({1.2, 0.1, 5.0, 0.0, 1.1, 5.0, 0.0, 0.0, 1.0})}}, 4);
  REQUIRE(layout.block_count() == 4);
  Rng rng(9);
  for (int k = 0; k < 10; ++k) {
    const Solution s = random_solution(b, 4, rng);
    const PerturbationField f = render_perturbation(s, layout, b);
    for (int y = 0; y < 20; ++y)
      for (int x = 0; x < 20; ++x) {
        if (!region.at(x, y)) CHECK(f.at(x, y) == 0.0f);
        CHECK(std::abs(f.at(x, y)) <= 0.1f);
      }
  }
}

TEST_CASE("render: overlapping surfaces are clamped to epsilon") {
  const Bounds b = small_bounds(1, 4, 0.1);
  const RegionMask t = RegionMask::full(4, 4);
  Layout layout = Layout::with_surfaces(RegionMask::full(4, 4), {{t, Homography()}, {t, Homography()}}, 4);
  REQUIRE(layout.block_count() == 2);
  const Solution s{{1.0, 1.0}, std::vector<double>(16, 0.08)};
  const PerturbationField f = render_perturbation(s, layout, b);
  for (float v : f.deltas()) CHECK(v == doctest::Approx(0.1).epsilon(1e-6));
  for (float v : f.deltas()) CHECK(v <= 0.1f);
}

TEST_CASE("render: dimension errors") {
  const Bounds b = small_bounds();
  const Layout layout = Layout::single(RegionMask::full(8, 8), 8);
  CHECK_THROWS_AS(render_perturbation(Solution{{1.0, 1.0}, std::vector<double>(128)}, layout, b),
                  DimensionError);
  CHECK_THROWS_AS(render_perturbation(Solution{{1.0}, std::vector<double>(5)}, layout, b),
                  DimensionError);
}

TEST_CASE("apply_to_image") {
  const Image img(2, 1, 3, std::vector<float>{0.2f, 0.4f, 0.6f, 0.98f, 0.98f, 0.98f});
  CHECK(apply_to_image(img, PerturbationField(2, 1)) == img);
  const PerturbationField f(2, 1, std::vector<float>{-0.1f, 0.05f});
  const Image out = apply_to_image(img, f);
  CHECK(out.at(0, 0, 0) == doctest::Approx(0.1));
  CHECK(out.at(0, 0, 1) == doctest::Approx(0.3));
  CHECK(out.at(0, 0, 2) == doctest::Approx(0.5));
  CHECK(out.at(1, 0, 0) == 1.0f);
  CHECK(apply_to_image(img, f, Exec::kSerial) == out);
  CHECK_THROWS_AS(apply_to_image(img, PerturbationField(1, 1)), DimensionError);
}

TEST_CASE("apply then subtract recovers the field where nothing clamps") {
  Rng rng(5);
  std::vector<float> px(30 * 20);
  for (auto& p : px) p = static_cast<float>(rng.uniform(0.2, 0.8));
  const Image img(30, 20, 1, px);
  PerturbationField f(30, 20);
  for (auto& d : f.mutable_deltas()) d = static_cast<float>(rng.uniform(-0.1, 0.1));
  const Image out = apply_to_image(img, f);
  for (std::size_t i = 0; i < px.size(); ++i)
    CHECK(out.pixels()[i] - px[i] == doctest::Approx(f.deltas()[i]).epsilon(1e-5));
}

TEST_CASE("violation is the box distance sum") {
  const Bounds b = small_bounds(2, 1, 0.1);
  CHECK(violation(Solution{{1.0}, {0.1, -0.1}}, b) == 0.0);
  CHECK(violation(Solution{{1.0}, {0.12, 0.0}}, b) == doctest::Approx(0.02).epsilon(1e-9));
  CHECK(violation(Solution{{-1.0}, {0.6, 0.0}}, b) == doctest::Approx(1.5).epsilon(1e-9));
  CHECK(violation(Solution{{2.5}, {0.0, 0.0}}, b) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("solution JSON round trip") {
  const Bounds b = small_bounds(2, 2);
  const Solution s{{0.3, 1.7, 2.0}, {0.01, -0.02, 0.03, -0.04, 0.05, -0.06, 0.07, -0.08}};
  const nlohmann::json j = solution_to_json(s, b);
  CHECK(j.at("map").size() == 3);
  CHECK(j.at("patterns").size() == 2);
  CHECK(j.at("patterns")[1][0].get<double>() == 0.05);
  CHECK(solution_from_json(nlohmann::json::parse(j.dump())) == s);
  CHECK_THROWS(solution_from_json(nlohmann::json{{"map", {1}}}));
  CHECK_THROWS(solution_from_json(nlohmann::json::parse(R"({"map":[1],"patterns":[[1,2],[3]]})")));
}
