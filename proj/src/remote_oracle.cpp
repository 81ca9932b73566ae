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

#include "evodepth/remote_oracle.hpp"

#include <chrono>
#include <string>

#include <httplib.h>

#include "evodepth/wire.hpp"

namespace evodepth {

struct RemoteOracle::Response {
  int status = 0;
  std::string body;
};

namespace {

using Clock = std::chrono::steady_clock;

httplib::Client make_client(const Endpoint& ep, const RemoteOptions& options) {
  httplib::Client cli(ep.scheme_host_port);
  const auto secs = static_cast<time_t>(options.timeout_seconds);
  const auto usecs = static_cast<time_t>((options.timeout_seconds - static_cast<double>(secs)) * 1e6);
  cli.set_connection_timeout(secs, usecs);
  cli.set_read_timeout(secs, usecs);
  cli.set_write_timeout(secs, usecs);
  return cli;
}

std::string error_message(int status, const std::string& body) {
  std::string detail = body;
  try {
    const auto j = nlohmann::json::parse(body);
    if (j.is_object() && j.contains("error") && j.at("error").is_string())
      detail = j.at("error").get<std::string>();
  } catch (const nlohmann::json::exception&) {
  }
  const char* fault = status >= 500 ? "model fault" : "caller fault";
  return "HTTP " + std::to_string(status) + " (" + fault + "): " + detail;
}

nlohmann::json parse_body(const std::string& body) {
  try {
    return nlohmann::json::parse(body);
  } catch (const nlohmann::json::exception& e) {
    throw OracleError(std::string("malformed response: ") + e.what());
  }
}

OracleDescriptor serialized(OracleDescriptor d) {
  d.single_flight = true;
  return d;
}

}  // namespace

Endpoint Endpoint::parse(const std::string& url) {
  const std::string scheme = "http://";
  if (url.rfind(scheme, 0) != 0) throw InvalidArgument("oracle URL must start with http://: " + url);
  const auto slash = url.find('/', scheme.size());
  Endpoint ep;
  ep.scheme_host_port = url.substr(0, slash);
  if (ep.scheme_host_port.size() == scheme.size()) throw InvalidArgument("oracle URL has no host");
  if (slash != std::string::npos) {
    ep.path_prefix = url.substr(slash);
    while (!ep.path_prefix.empty() && ep.path_prefix.back() == '/') ep.path_prefix.pop_back();
  }
  return ep;
}

OracleDescriptor fetch_descriptor(const std::string& url, const RemoteOptions& options) {
  const Endpoint ep = Endpoint::parse(url);
  for (int attempt = 0;; ++attempt) {
    auto cli = make_client(ep, options);
    auto res = cli.Get(ep.path_prefix + "/descriptor");
    if (!res) {
      if (attempt >= options.retries)
        throw OracleError("cannot reach " + url + "/descriptor after " +
                          std::to_string(attempt + 1) + " attempts: " + httplib::to_string(res.error()));
      continue;
    }
    if (res->status != 200) throw OracleError("descriptor request failed: " + error_message(res->status, res->body));
    try {
      return wire::decode_descriptor(parse_body(res->body));
    } catch (const InvalidArgument& e) {
      throw OracleError(std::string("malformed descriptor: ") + e.what());
    }
  }
}

RemoteOracle::RemoteOracle(const std::string& url, RemoteOptions options)
    : RemoteOracle(url, fetch_descriptor(url, options), options) {}

RemoteOracle::RemoteOracle(const std::string& url, OracleDescriptor descriptor,
                           RemoteOptions options)
    : Oracle(serialized(std::move(descriptor))),
      endpoint_(Endpoint::parse(url)),
      options_(options),
      batch_supported_(options.use_batch) {}

RemoteOracle::~RemoteOracle() = default;

RemoteOracle::Response RemoteOracle::post(const std::string& path, const std::string& body,
                                          long long queries) {
  std::lock_guard lock(mutex_);
  for (int attempt = 0;; ++attempt) {
    auto cli = make_client(endpoint_, options_);
    const auto start = Clock::now();
    auto res = cli.Post(endpoint_.path_prefix + path, body, "application/json");
    if (!res) {
      if (attempt >= options_.retries)
        throw OracleError("connection to " + endpoint_.scheme_host_port + " failed after " +
                          std::to_string(attempt + 1) + " attempts: " +
                          httplib::to_string(res.error()));
      continue;
    }
    // An endpoint that does not exist ran no model.
    if (res->status != 404 || queries == 1) mutable_ledger().record(queries, Clock::now() - start);
    return {res->status, res->body};
  }
}

DepthMap RemoteOracle::do_estimate(const Image& img) {
  const Response res = post("/estimate", wire::encode_image(img).dump(), 1);
  if (res.status != 200) throw OracleError("estimate failed: " + error_message(res.status, res.body));
  try {
    return wire::decode_depth(parse_body(res.body));
  } catch (const InvalidArgument& e) {
    throw OracleError(std::string("malformed response: ") + e.what());
  }
}

std::vector<DepthMap> RemoteOracle::do_estimate_batch(std::span<const Image> images) {
  if (batch_supported_ && images.size() > 1) {
    const auto n = static_cast<long long>(images.size());
    const Response res = post("/estimate_batch", wire::encode_batch_request(images).dump(), n);
    if (res.status == 404) {
      batch_supported_ = false;
    } else {
      if (res.status != 200)
        throw OracleError("batch estimate failed: " + error_message(res.status, res.body));
      try {
        return wire::decode_batch_response(parse_body(res.body));
      } catch (const InvalidArgument& e) {
        throw OracleError(std::string("malformed response: ") + e.what());
      }
    }
  }
  std::vector<DepthMap> out;
  out.reserve(images.size());
  for (const auto& img : images) out.push_back(do_estimate(img));
  return out;
}

}  // namespace evodepth
