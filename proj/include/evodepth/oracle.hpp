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

#ifndef EVODEPTH_ORACLE_HPP
#define EVODEPTH_ORACLE_HPP

#include <atomic>
#include <chrono>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "evodepth/errors.hpp"
#include "evodepth/imaging.hpp"

namespace evodepth {

struct OracleDescriptor {
  std::string name;
  int input_width = 0;
  int input_height = 0;
  int input_channels = 3;
  int output_width = 0;
  int output_height = 0;
  // The oracle cannot serve overlapping estimate() calls.
  bool single_flight = false;

  void validate() const;
};

// Query count and time spent inside the model. Thread-safe, monotone.
class QueryLedger {
 public:
  void record(long long queries, std::chrono::nanoseconds elapsed);
  long long total_queries() const { return total_.load(); }
  double wall_time() const { return static_cast<double>(nanos_.load()) * 1e-9; }

 private:
  std::atomic<long long> total_{0};
  std::atomic<long long> nanos_{0};
};

// Black-box depth estimator. estimate() checks the input against the
// descriptor before anything is counted, then validates the returned map.
class Oracle {
 public:
  explicit Oracle(OracleDescriptor descriptor);
  virtual ~Oracle() = default;
  Oracle(const Oracle&) = delete;
  Oracle& operator=(const Oracle&) = delete;

  const OracleDescriptor& descriptor() const { return descriptor_; }
  const QueryLedger& ledger() const { return ledger_; }

  DepthMap estimate(const Image& img);
  std::vector<DepthMap> estimate_batch(std::span<const Image> images);

 protected:
  virtual DepthMap do_estimate(const Image& img) = 0;
  // Default: one do_estimate per image, spread over OpenMP threads unless
  // the descriptor declares single-flight.
  virtual std::vector<DepthMap> do_estimate_batch(std::span<const Image> images);
  // For subclasses that count queries themselves (remote failures).
  QueryLedger& mutable_ledger() { return ledger_; }
  // Whether estimate() should record successful calls itself.
  virtual bool self_accounting() const { return false; }

 private:
  void check_input(const Image& img) const;
  void check_output(const DepthMap& d) const;

  OracleDescriptor descriptor_;
  QueryLedger ledger_;
};

// Constant depth everywhere, whatever the input.
class PlaneOracle : public Oracle {
 public:
  PlaneOracle(OracleDescriptor descriptor, float depth);

 protected:
  DepthMap do_estimate(const Image& img) override;

 private:
  float depth_;
};

// Synthetic scene with an intensity-sensitive object. Outside the region the
// background is returned; inside, with m the mean input intensity over the
// region,
//   depth = object_depth + sensitivity * (m - 0.5) * (background - object_depth),
// floored at 0. m = 0.5 puts the object at object_depth; raising m moves it
// toward the background (fully, at m = 0.5 + 1 / sensitivity).
class BoxSceneOracle : public Oracle {
 public:
  BoxSceneOracle(DepthMap background, RegionMask region, float object_depth, double sensitivity,
                 int channels = 3);

  const DepthMap& background() const { return background_; }
  const RegionMask& region() const { return region_; }

 protected:
  DepthMap do_estimate(const Image& img) override;

 private:
  DepthMap background_;
  RegionMask region_;
  float object_depth_;
  double sensitivity_;
};

// depth = level - m inside the region and level outside, m being the mean
// input intensity over the region.
class RegionIntensityOracle : public Oracle {
 public:
  RegionIntensityOracle(RegionMask region, float level, int channels = 3);

 protected:
  DepthMap do_estimate(const Image& img) override;

 private:
  RegionMask region_;
  float level_;
};

}  // namespace evodepth

#endif  // EVODEPTH_ORACLE_HPP
