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
#include "evodepth/errors.hpp"
#include "evodepth/imaging.hpp"

using namespace evodepth;

TEST_CASE("image construction validates size and range") {
  CHECK_NOTHROW(Image(2, 1, 3, std::vector<float>{1, 0, 0, 0, 1, 0}));
  CHECK_THROWS_AS(Image(2, 1, 3, std::vector<float>{1, 0, 0}), DimensionError);
  CHECK_THROWS_AS(Image(1, 1, 2, 0.5f), DimensionError);
  CHECK_THROWS_AS(Image(1, 1, 1, std::vector<float>{1.5f}), InvalidArgument);
  CHECK_THROWS_AS(Image(1, 1, 1, std::vector<float>{NAN}), InvalidArgument);
  CHECK_THROWS_AS(DepthMap(1, 1, std::vector<float>{-1.0f}), InvalidArgument);
  CHECK_THROWS_AS(DepthMap(2, 2, std::vector<float>{1.0f}), DimensionError);
  const Image img(2, 1, 3, std::vector<float>{0.1f, 0.2f, 0.3f, 0.4f, 0.5f, 0.6f});
  CHECK(img.at(1, 0, 2) == 0.6f);
  CHECK(img.pixel_count() == 2);
}

TEST_CASE("region mask rectangle, count and bounding box") {
  const RegionMask m = RegionMask::rectangle(10, 8, 2, 3, 4, 2);
  CHECK(m.count() == 8);
  const auto box = m.bounding_box();
  REQUIRE(box.has_value());
  CHECK(box->x0 == 2);
  CHECK(box->y0 == 3);
  CHECK(box->x1 == 6);
  CHECK(box->y1 == 5);
  CHECK(RegionMask::rectangle(4, 4, 3, 3, 5, 5).count() == 1);
  CHECK_FALSE(RegionMask(3, 3, std::vector<std::uint8_t>(9, 0)).bounding_box().has_value());
}

TEST_CASE("nearest rescale of a mask") {
  const RegionMask m = RegionMask::rectangle(4, 4, 0, 0, 2, 2);
  const RegionMask up = rescale_nearest(m, 8, 8);
  CHECK(up.count() == 16);
  CHECK(up.at(3, 3));
  CHECK_FALSE(up.at(4, 0));
  CHECK(rescale_nearest(m, 4, 4) == m);
}

TEST_CASE("block grid: exact fit") {
  const BlockGrid g = block_grid(RegionMask::full(8, 8), 8);
  REQUIRE(g.covered_blocks.size() == 1);
  CHECK(g.covered_blocks[0] == BlockCoord{0, 0});
}

TEST_CASE("block grid: two side by side blocks") {
  const BlockGrid g = block_grid(RegionMask::full(16, 8), 8);
  REQUIRE(g.covered_blocks.size() == 2);
  CHECK(g.covered_blocks[0] == BlockCoord{0, 0});
  CHECK(g.covered_blocks[1] == BlockCoord{1, 0});
}

TEST_CASE("block grid: edge block is clipped") {
  const BlockGrid g = block_grid(RegionMask::full(10, 8), 8);
  REQUIRE(g.covered_blocks.size() == 2);
  const PixelRect r = g.footprint(g.covered_blocks[1]);
  CHECK(r.x0 == 8);
  CHECK(r.width() == 2);
  CHECK(r.height() == 8);
}

TEST_CASE("block grid: anchored at bounding box, skips untouched blocks") {
  // L-shaped mask: the top-right block of its 2x2 grid is empty.
  std::vector<std::uint8_t> flags(20 * 20, 0);
  for (int y = 4; y < 12; ++y)
    for (int x = 3; x < 7; ++x) flags[y * 20 + x] = 1;
  for (int y = 8; y < 12; ++y)
    for (int x = 3; x < 15; ++x) flags[y * 20 + x] = 1;
  const RegionMask m(20, 20, flags);
  const BlockGrid g = block_grid(m, 4);
  CHECK(g.origin_x == 3);
  CHECK(g.origin_y == 4);
  CHECK(g.cols == 3);
  CHECK(g.rows == 2);
  REQUIRE(g.covered_blocks.size() == 4);
  CHECK(g.covered_blocks[0] == BlockCoord{0, 0});
  CHECK(g.covered_blocks[1] == BlockCoord{0, 1});
  CHECK(g.covered_blocks[2] == BlockCoord{1, 1});
  CHECK(g.covered_blocks[3] == BlockCoord{2, 1});
}

TEST_CASE("block grid: errors") {
  CHECK_THROWS(block_grid(RegionMask(4, 4, std::vector<std::uint8_t>(16, 0)), 2));
  CHECK_THROWS(block_grid(RegionMask::full(4, 4), 0));
}

TEST_CASE("block grid covers the mask and stays in the raster") {
  for (int bs : {1, 3, 5, 8}) {
    const RegionMask m = RegionMask::rectangle(23, 17, 5, 2, 18, 15);
    const BlockGrid g = block_grid(m, bs);
    std::vector<int> covered(23 * 17, 0);
    for (const auto& b : g.covered_blocks) {
      const PixelRect r = g.footprint(b);
      CHECK(r.x0 >= 0);
      CHECK(r.y0 >= 0);
      CHECK(r.x1 <= 23);
      CHECK(r.y1 <= 17);
      for (int y = r.y0; y < r.y1; ++y)
        for (int x = r.x0; x < r.x1; ++x) covered[y * 23 + x] = 1;
    }
    for (int y = 0; y < 17; ++y)
      for (int x = 0; x < 23; ++x)
        if (m.at(x, y)) CHECK(covered[y * 23 + x] == 1);
  }
}

TEST_CASE("homography basics") {
  CHECK(Homography().is_identity());
  const Homography t = Homography::translation(2.0, -1.0);
  const auto [x, y] = t.apply(1.0, 1.0);
  CHECK(x == doctest::Approx(3.0));
  CHECK(y == doctest::Approx(0.0));
  const auto [bx, by] = t.inverse().apply(3.0, 0.0);
  CHECK(bx == doctest::Approx(1.0));
  CHECK(by == doctest::Approx(1.0));
  CHECK_THROWS(Homography({1, 2, 0, 2, 4, 0, 0, 0, 1}));
  const Homography h({2, 0.5, 1, 0.1, 1.5, -2, 0.001, 0.002, 1});
  const auto [px, py] = h.apply(3.0, 4.0);
  const auto [qx, qy] = h.inverse().apply(px, py);
  CHECK(qx == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(qy == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("warp_delta: identity is bit-exact") {
  PerturbationField f(5, 4);
  for (std::size_t i = 0; i < f.deltas().size(); ++i)
    f.mutable_deltas()[i] = 0.01f * static_cast<float>(i) - 0.07f;
  CHECK(warp_delta(f, Homography(), 5, 4) == f);
}

TEST_CASE("warp_delta: translation by one pixel") {
  PerturbationField f(4, 4);
  f.at(0, 0) = 0.25f;
  const PerturbationField out = warp_delta(f, Homography::translation(1.0, 0.0), 4, 4);
  CHECK(out.at(1, 0) == doctest::Approx(0.25));
  CHECK(out.at(0, 0) == 0.0f);
  float total = 0.0f;
  for (float v : out.deltas()) total += std::abs(v);
  CHECK(total == doctest::Approx(0.25));
}

TEST_CASE("warp_delta: mass moved out of bounds vanishes") {
  PerturbationField f(4, 4, std::vector<float>(16, 0.1f));
  CHECK(warp_delta(f, Homography::translation(10.0, 0.0), 4, 4).is_zero());
}

TEST_CASE("warp_delta: half-pixel shift interpolates") {
  PerturbationField f(4, 1);
  f.at(1, 0) = 0.2f;
  const PerturbationField out = warp_delta(f, Homography::translation(0.5, 0.0), 4, 1);
  CHECK(out.at(1, 0) == doctest::Approx(0.1));
  CHECK(out.at(2, 0) == doctest::Approx(0.1));
}

TEST_CASE("warp_delta preserves the zero field") {
  const PerturbationField zero(6, 5);
  const Homography h({1.2, 0.1, 0.5, -0.05, 0.9, 1.0, 0.001, 0.0, 1.0});
  CHECK(warp_delta(zero, h, 7, 3).is_zero());
}
