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
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <vector>

#include "doctest.h"
#include "evodepth/raster_io.hpp"
#include "png_fixtures.hpp"

using namespace evodepth;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "evodepth_raster_io";
  fs::create_directories(dir);
  return dir / name;
}

fs::path write_fixture(const std::string& name, const std::vector<unsigned char>& bytes) {
  const fs::path p = scratch(name);
  std::ofstream out(p, std::ios::binary);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  return p;
}

IoErrorCode load_error(const fs::path& p) {
  try {
    load_image(p);
  } catch (const ImageIoError& e) {
    return e.code();
  }
  FAIL("load_image did not throw");
  return IoErrorCode::kWriteFailed;
}

}  // namespace

TEST_CASE("grey endpoints decode to 0 and 1") {
  const Image white = load_image(write_fixture("white.png", fixtures::kGray255));
  CHECK(white.channels() == 1);
  CHECK(white.pixels() == std::vector<float>{1.0f});
  const Image black = load_image(write_fixture("black.png", fixtures::kGray0));
  CHECK(black.pixels() == std::vector<float>{0.0f});
}

TEST_CASE("RGB decode matches a reference encoder") {
  const Image img = load_image(write_fixture("rgb.png", fixtures::kRgb2x1));
  CHECK(img.width() == 2);
  CHECK(img.height() == 1);
  CHECK(img.channels() == 3);
  CHECK(img.pixels() == std::vector<float>{1, 0, 0, 0, 1, 0});
}

TEST_CASE("alpha is dropped without compositing") {
  const Image img = load_image(write_fixture("rgba.png", fixtures::kRgba1x1));
  CHECK(img.channels() == 3);
  CHECK(img.at(0, 0, 0) == doctest::Approx(10.0 / 255.0));
  CHECK(img.at(0, 0, 1) == doctest::Approx(20.0 / 255.0));
  CHECK(img.at(0, 0, 2) == doctest::Approx(30.0 / 255.0));
}

TEST_CASE("palette images expand to RGB") {
  const Image img = load_image(write_fixture("palette.png", fixtures::kPalette2x1));
  CHECK(img.channels() == 3);
  CHECK(img.at(0, 0, 0) == 1.0f);
  CHECK(img.at(0, 0, 1) == doctest::Approx(128.0 / 255.0));
  CHECK(img.at(0, 0, 2) == 0.0f);
  CHECK(img.at(1, 0, 0) == 0.0f);
}

TEST_CASE("distinct errors for unreadable and 16-bit files") {
  CHECK(load_error(scratch("missing.png")) == IoErrorCode::kUnreadable);
  CHECK(load_error(write_fixture("junk.png", {1, 2, 3, 4, 5})) == IoErrorCode::kUnreadable);
  CHECK(load_error(write_fixture("deep.png", fixtures::kGray16)) ==
        IoErrorCode::kUnsupportedBitDepth);
}

TEST_CASE("save then load is within 1/255") {
  std::vector<float> px(7 * 5 * 3);
  for (std::size_t i = 0; i < px.size(); ++i) px[i] = std::fmod(0.137f * static_cast<float>(i), 1.0f);
  const Image img(7, 5, 3, px);
  const fs::path p = scratch("roundtrip.png");
  save_image(img, p);
  const Image back = load_image(p);
  REQUIRE(back.pixels().size() == px.size());
  for (std::size_t i = 0; i < px.size(); ++i)
    CHECK(std::abs(back.pixels()[i] - px[i]) <= 1.0f / 255.0f);
  const Image grey(3, 2, 1, std::vector<float>{0, 0.2f, 0.4f, 0.6f, 0.8f, 1});
  save_image(grey, p);
  CHECK(load_image(p).channels() == 1);
}

TEST_CASE("mask round trip and nonzero rule") {
  const RegionMask m = RegionMask::rectangle(6, 4, 1, 1, 3, 2);
  const fs::path p = scratch("mask.png");
  save_mask(m, p);
  CHECK(load_mask(p) == m);
  const RegionMask rgb = load_mask(write_fixture("rgbmask.png", fixtures::kRgb2x1));
  CHECK(rgb.count() == 2);
  CHECK(load_mask(write_fixture("black_mask.png", fixtures::kGray0)).empty());
}

TEST_CASE("DMAP layout is bit-exact") {
  const std::vector<std::uint8_t> expected = {'D', 'M', 'A', 'P', 2, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0,
                                              0x00, 0x00, 0x80, 0x3F, 0x00, 0x00, 0x20, 0xC0};
  CHECK(encode_dmap(2, 1, {1.0f, -2.5f}) == expected);
  const RawRaster r = decode_dmap(expected);
  CHECK(r.width == 2);
  CHECK(r.height == 1);
  CHECK(r.values == std::vector<float>{1.0f, -2.5f});
}

TEST_CASE("DMAP rejects malformed input") {
  std::vector<std::uint8_t> good = encode_dmap(2, 2, {1, 2, 3, 4});
  auto code = [](const std::vector<std::uint8_t>& b) {
    try {
      decode_dmap(b);
    } catch (const ImageIoError& e) {
      return e.code();
    }
    return IoErrorCode::kWriteFailed;
  };
  std::vector<std::uint8_t> bad_magic = good;
  bad_magic[0] = 'X';
  CHECK(code(bad_magic) == IoErrorCode::kMalformed);
  std::vector<std::uint8_t> short_payload(good.begin(), good.end() - 1);
  CHECK(code(short_payload) == IoErrorCode::kMalformed);
  CHECK(code({'D', 'M'}) == IoErrorCode::kMalformed);
}

TEST_CASE("depth and field files round trip exactly") {
  const DepthMap d(3, 2, std::vector<float>{0.0f, 1.5f, 2.25f, 1e-7f, 3e5f, 4.0f});
  save_depth(d, scratch("d.dmap"));
  CHECK(load_depth(scratch("d.dmap")) == d);
  const PerturbationField f(2, 2, std::vector<float>{-0.1f, 0.0f, 0.05f, 0.1f});
  save_field(f, scratch("f.dmap"));
  CHECK(load_field(scratch("f.dmap")) == f);
  const PerturbationField neg(1, 1, std::vector<float>{-0.5f});
  save_field(neg, scratch("neg.dmap"));
  CHECK_THROWS(load_depth(scratch("neg.dmap")));
}

TEST_CASE("false colour ramp endpoints and clamping") {
  const DepthMap d(4, 1, std::vector<float>{0.0f, 10.0f, 5.0f, 20.0f});
  const Image img = false_color(d, 0.0f, 10.0f);
  CHECK(img.channels() == 3);
  CHECK(img.at(0, 0, 2) == doctest::Approx(0.5));
  CHECK(img.at(1, 0, 0) == doctest::Approx(0.6));
  CHECK(img.at(2, 0, 1) == doctest::Approx(0.8));
  for (int c = 0; c < 3; ++c) CHECK(img.at(3, 0, c) == img.at(1, 0, c));
  const Image flat = false_color(DepthMap(2, 2, 3.0f), 3.0f, 3.0f);
  CHECK(flat.at(0, 0, 2) == doctest::Approx(0.5));
}
