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

#ifndef EVODEPTH_WIRE_HPP
#define EVODEPTH_WIRE_HPP

// JSON bodies of the depth-estimation HTTP protocol:
//   GET  /descriptor      -> {"name", "input_dims": [W, H, C], "output_dims": [W', H']}
//   POST /estimate        {"width","height","channels","pixels"} -> {"width","height","depth"}
//   POST /estimate_batch  {"images": [...]} -> {"depths": [...]}
// Errors carry {"error": string}; 4xx is a caller fault, 5xx a model fault.

#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "evodepth/imaging.hpp"
#include "evodepth/oracle.hpp"

namespace evodepth::wire {

nlohmann::json encode_image(const Image& img);
Image decode_image(const nlohmann::json& j);
nlohmann::json encode_depth(const DepthMap& depth);
DepthMap decode_depth(const nlohmann::json& j);

nlohmann::json encode_batch_request(std::span<const Image> images);
std::vector<Image> decode_batch_request(const nlohmann::json& j);
nlohmann::json encode_batch_response(std::span<const DepthMap> depths);
std::vector<DepthMap> decode_batch_response(const nlohmann::json& j);

nlohmann::json encode_descriptor(const OracleDescriptor& d);
OracleDescriptor decode_descriptor(const nlohmann::json& j);

nlohmann::json error_body(const std::string& message);

}  // namespace evodepth::wire

#endif  // EVODEPTH_WIRE_HPP
