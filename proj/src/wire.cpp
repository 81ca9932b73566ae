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

#include "evodepth/wire.hpp"

#include <string>

#include "evodepth/errors.hpp"

namespace evodepth::wire {

namespace {

using nlohmann::json;

int positive_int(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key) || !j.at(key).is_number_integer())
    throw InvalidArgument(std::string("field \"") + key + "\" missing or not an integer");
  const int v = j.at(key).get<int>();
  if (v <= 0) throw InvalidArgument(std::string("field \"") + key + "\" must be positive");
  return v;
}

std::vector<float> real_array(const json& j, const char* key, std::size_t expected) {
  if (!j.contains(key) || !j.at(key).is_array())
    throw InvalidArgument(std::string("field \"") + key + "\" missing or not an array");
  const auto& a = j.at(key);
  if (a.size() != expected)
    throw InvalidArgument(std::string("field \"") + key + "\" has " + std::to_string(a.size()) +
                          " values, expected " + std::to_string(expected));
  std::vector<float> out;
  out.reserve(expected);
  for (const auto& v : a) {
    if (!v.is_number()) throw InvalidArgument(std::string("field \"") + key + "\" holds a non-number");
    out.push_back(static_cast<float>(v.get<double>()));
  }
  return out;
}

}  // namespace

json encode_image(const Image& img) {
  return {{"width", img.width()},
          {"height", img.height()},
          {"channels", img.channels()},
          {"pixels", img.pixels()}};
}

Image decode_image(const json& j) {
  const int w = positive_int(j, "width");
  const int h = positive_int(j, "height");
  const int c = positive_int(j, "channels");
  return Image(w, h, c, real_array(j, "pixels", static_cast<std::size_t>(w) * h * c));
}

json encode_depth(const DepthMap& depth) {
  return {{"width", depth.width()}, {"height", depth.height()}, {"depth", depth.values()}};
}

DepthMap decode_depth(const json& j) {
  const int w = positive_int(j, "width");
  const int h = positive_int(j, "height");
  return DepthMap(w, h, real_array(j, "depth", static_cast<std::size_t>(w) * h));
}

json encode_batch_request(std::span<const Image> images) {
  json arr = json::array();
  for (const auto& img : images) arr.push_back(encode_image(img));
  return {{"images", arr}};
}

std::vector<Image> decode_batch_request(const json& j) {
  if (!j.is_object() || !j.contains("images") || !j.at("images").is_array())
    throw InvalidArgument("batch request needs an \"images\" array");
  std::vector<Image> out;
  for (const auto& e : j.at("images")) out.push_back(decode_image(e));
  return out;
}

json encode_batch_response(std::span<const DepthMap> depths) {
  json arr = json::array();
  for (const auto& d : depths) arr.push_back(encode_depth(d));
  return {{"depths", arr}};
}

std::vector<DepthMap> decode_batch_response(const json& j) {
  if (!j.is_object() || !j.contains("depths") || !j.at("depths").is_array())
    throw InvalidArgument("batch response needs a \"depths\" array");
  std::vector<DepthMap> out;
  for (const auto& e : j.at("depths")) out.push_back(decode_depth(e));
  return out;
}

json encode_descriptor(const OracleDescriptor& d) {
  return {{"name", d.name},
          {"input_dims", {d.input_width, d.input_height, d.input_channels}},
          {"output_dims", {d.output_width, d.output_height}}};
}

OracleDescriptor decode_descriptor(const json& j) {
  if (!j.is_object() || !j.contains("input_dims") || !j.contains("output_dims"))
    throw InvalidArgument("descriptor needs \"input_dims\" and \"output_dims\"");
  const auto in = j.at("input_dims").get<std::vector<int>>();
  const auto out = j.at("output_dims").get<std::vector<int>>();
  if (in.size() != 3 || out.size() != 2)
    throw InvalidArgument("descriptor dims must be [W, H, C] and [W, H]");
  OracleDescriptor d;
  d.name = j.value("name", std::string("remote"));
  d.input_width = in[0];
  d.input_height = in[1];
  d.input_channels = in[2];
  d.output_width = out[0];
  d.output_height = out[1];
  d.validate();
  return d;
}

json error_body(const std::string& message) { return {{"error", message}}; }

}  // namespace evodepth::wire
