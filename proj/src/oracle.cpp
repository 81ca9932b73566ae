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

#include "evodepth/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

#include "evodepth/kernels.hpp"

namespace evodepth {

void OracleDescriptor::validate() const {
  if (input_width <= 0 || input_height <= 0 || output_width <= 0 || output_height <= 0)
    throw InvalidArgument("oracle dimensions must be positive");
  if (input_channels != 1 && input_channels != 3)
    throw InvalidArgument("oracle input must have 1 or 3 channels");
}

void QueryLedger::record(long long queries, std::chrono::nanoseconds elapsed) {
  total_.fetch_add(queries);
  nanos_.fetch_add(static_cast<long long>(elapsed.count()));
}

Oracle::Oracle(OracleDescriptor descriptor) : descriptor_(std::move(descriptor)) {
  descriptor_.validate();
}

void Oracle::check_input(const Image& img) const {
  if (img.width() != descriptor_.input_width || img.height() != descriptor_.input_height ||
      img.channels() != descriptor_.input_channels)
    throw DimensionError("oracle '" + descriptor_.name + "' expects " +
                         std::to_string(descriptor_.input_width) + "x" +
                         std::to_string(descriptor_.input_height) + "x" +
                         std::to_string(descriptor_.input_channels) + " input, got " +
                         std::to_string(img.width()) + "x" + std::to_string(img.height()) + "x" +
                         std::to_string(img.channels()));
}

void Oracle::check_output(const DepthMap& d) const {
  if (d.width() != descriptor_.output_width || d.height() != descriptor_.output_height)
    throw OracleError("oracle '" + descriptor_.name + "' returned a " + std::to_string(d.width()) +
                      "x" + std::to_string(d.height()) + " map, descriptor says " +
                      std::to_string(descriptor_.output_width) + "x" +
                      std::to_string(descriptor_.output_height));
}

DepthMap Oracle::estimate(const Image& img) {
  check_input(img);
  const auto start = std::chrono::steady_clock::now();
  DepthMap d = do_estimate(img);
  if (!self_accounting())
    ledger_.record(1, std::chrono::steady_clock::now() - start);
  check_output(d);
  return d;
}

std::vector<DepthMap> Oracle::estimate_batch(std::span<const Image> images) {
  for (const auto& img : images) check_input(img);
  const auto start = std::chrono::steady_clock::now();
  std::vector<DepthMap> out = do_estimate_batch(images);
  if (!self_accounting())
    ledger_.record(static_cast<long long>(images.size()), std::chrono::steady_clock::now() - start);
  if (out.size() != images.size())
    throw OracleError("oracle '" + descriptor_.name + "' returned " + std::to_string(out.size()) +
                      " maps for " + std::to_string(images.size()) + " images");
  for (const auto& d : out) check_output(d);
  return out;
}

std::vector<DepthMap> Oracle::do_estimate_batch(std::span<const Image> images) {
  std::vector<DepthMap> out(images.size());
  if (descriptor_.single_flight) {
    for (std::size_t i = 0; i < images.size(); ++i) out[i] = do_estimate(images[i]);
    return out;
  }
  std::vector<std::exception_ptr> errors(images.size());
  const auto n = static_cast<long long>(images.size());
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      out[k] = do_estimate(images[k]);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

PlaneOracle::PlaneOracle(OracleDescriptor descriptor, float depth)
    : Oracle(std::move(descriptor)), depth_(depth) {
  if (!(std::isfinite(depth) && depth >= 0.0f))
    throw InvalidArgument("plane depth must be finite and nonnegative");
}

DepthMap PlaneOracle::do_estimate(const Image&) {
  return DepthMap(descriptor().output_width, descriptor().output_height, depth_);
}

namespace {

OracleDescriptor same_size(const std::string& name, int width, int height, int channels) {
  OracleDescriptor d;
  d.name = name;
  d.input_width = d.output_width = width;
  d.input_height = d.output_height = height;
  d.input_channels = channels;
  return d;
}

}  // namespace

BoxSceneOracle::BoxSceneOracle(DepthMap background, RegionMask region, float object_depth,
                               double sensitivity, int channels)
    : Oracle(same_size("box_scene", background.width(), background.height(), channels)),
      background_(std::move(background)),
      region_(std::move(region)),
      object_depth_(object_depth),
      sensitivity_(sensitivity) {
  if (region_.width() != background_.width() || region_.height() != background_.height())
    throw DimensionError("box scene region and background dimensions differ");
  if (region_.empty()) throw InvalidArgument("box scene region is empty");
  if (!(sensitivity >= 0.0)) throw InvalidArgument("sensitivity must be nonnegative");
  if (!(std::isfinite(object_depth) && object_depth >= 0.0f))
    throw InvalidArgument("object depth must be finite and nonnegative");
}

DepthMap BoxSceneOracle::do_estimate(const Image& img) {
  const double m = kernels::parallel::masked_mean(img.pixels(), img.channels(), region_.flags());
  const double pull = sensitivity_ * (m - 0.5);
  std::vector<float> out(background_.values());
  const auto& flags = region_.flags();
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!flags[i]) continue;
    const double d = object_depth_ + pull * (static_cast<double>(background_.values()[i]) - object_depth_);
    out[i] = static_cast<float>(std::max(0.0, d));
  }
  return DepthMap(background_.width(), background_.height(), std::move(out));
}

RegionIntensityOracle::RegionIntensityOracle(RegionMask region, float level, int channels)
    : Oracle(same_size("region_intensity", region.width(), region.height(), channels)),
      region_(std::move(region)),
      level_(level) {
  if (region_.empty()) throw InvalidArgument("region is empty");
  if (!(std::isfinite(level) && level >= 0.0f)) throw InvalidArgument("level must be nonnegative");
}

DepthMap RegionIntensityOracle::do_estimate(const Image& img) {
  const double m = kernels::parallel::masked_mean(img.pixels(), img.channels(), region_.flags());
  const float inside = static_cast<float>(std::max(0.0, static_cast<double>(level_) - m));
  std::vector<float> out(region_.flags().size(), level_);
  for (std::size_t i = 0; i < out.size(); ++i)
    if (region_.flags()[i]) out[i] = inside;
  return DepthMap(region_.width(), region_.height(), std::move(out));
}

}  // namespace evodepth
