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

#ifndef EVODEPTH_REMOTE_ORACLE_HPP
#define EVODEPTH_REMOTE_ORACLE_HPP

#include <memory>
#include <mutex>
#include <string>

#include "evodepth/oracle.hpp"

namespace evodepth {

struct RemoteOptions {
  int retries = 2;  // extra attempts after a connection failure
  double timeout_seconds = 60.0;
  bool use_batch = true;
};

// Parsed "http://host:port/prefix".
struct Endpoint {
  std::string scheme_host_port;
  std::string path_prefix;
  static Endpoint parse(const std::string& url);
};

// Fetches the server's descriptor; throws OracleError if unreachable.
OracleDescriptor fetch_descriptor(const std::string& url, const RemoteOptions& options = {});

// Client for a model served over the wire protocol. Every request that gets
// an HTTP response counts against the ledger, including error responses.
class RemoteOracle : public Oracle {
 public:
  explicit RemoteOracle(const std::string& url, RemoteOptions options = {});
  RemoteOracle(const std::string& url, OracleDescriptor descriptor, RemoteOptions options = {});
  ~RemoteOracle() override;

  bool batch_supported() const { return batch_supported_; }

 protected:
  DepthMap do_estimate(const Image& img) override;
  std::vector<DepthMap> do_estimate_batch(std::span<const Image> images) override;
  bool self_accounting() const override { return true; }

 private:
  struct Response;
  Response post(const std::string& path, const std::string& body, long long queries);

  Endpoint endpoint_;
  RemoteOptions options_;
  bool batch_supported_;
  std::mutex mutex_;
};

}  // namespace evodepth

#endif  // EVODEPTH_REMOTE_ORACLE_HPP
