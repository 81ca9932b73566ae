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


#ifndef EVODEPTH_TESTS_SCENE_FIXTURE_HPP
#define EVODEPTH_TESTS_SCENE_FIXTURE_HPP

#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "evodepth/imaging.hpp"
#include "evodepth/raster_io.hpp"

namespace fixtures {

// Synthetic box scene on disk: a bright square object in front of a
// background whose depth ramps linearly left to right.
struct BoxScene {
  std::filesystem::path dir;
  int width = 64;
  int height = 64;
  int object_x = 24;
  int object_y = 24;
  int object_size = 16;

  evodepth::RegionMask mask() const {
    return evodepth::RegionMask::rectangle(width, height, object_x, object_y, object_size,
                                           object_size);
  }

  evodepth::DepthMap background() const {
    std::vector<float> v(static_cast<std::size_t>(width) * height);
    for (int y = 0; y < height; ++y)
      for (int x = 0; x < width; ++x)
        v[static_cast<std::size_t>(y) * width + x] = 3.0f + 2.0f * static_cast<float>(x) / (width - 1);
    return evodepth::DepthMap(width, height, v);
  }

  evodepth::Image image() const {
    std::vector<float> px(static_cast<std::size_t>(width) * height * 3);
    const auto m = mask();
    for (int y = 0; y < height; ++y)
      for (int x = 0; x < width; ++x) {
        const std::size_t i = static_cast<std::size_t>(y) * width + x;
        // 8-bit levels so the PNG round trip is exact.
        const int level = m.at(x, y) ? 232 + (x + 2 * y) % 8 : 60 + (3 * x + y) % 70;
        for (int c = 0; c < 3; ++c) px[3 * i + c] = static_cast<float>(level + c) / 255.0f;
      }
    return evodepth::Image(width, height, 3, px);
  }

  void write() const {
    std::filesystem::create_directories(dir);
    evodepth::save_image(image(), dir / "image.png");
    evodepth::save_mask(mask(), dir / "mask.png");
    evodepth::save_depth(background(), dir / "background.dmap");
  }

  nlohmann::json config(int population, int generations, std::uint64_t seed,
                        const std::string& out) const {
    return {{"scene", "box"},
            {"image", "image.png"},
            {"mask", "mask.png"},
            {"oracle",
             {{"builtin", "box_scene"},
              {"background", "background.dmap"},
              {"object_depth", 1.5},
              {"sensitivity", 2.0}}},
            {"moead",
             {{"population_size", population}, {"neighborhood_size", 10},
              {"generations", generations}}},
            {"seed", seed},
            {"output_dir", out}};
  }
};

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace fixtures

#endif  // EVODEPTH_TESTS_SCENE_FIXTURE_HPP
