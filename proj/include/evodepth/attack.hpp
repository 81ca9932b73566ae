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

#ifndef EVODEPTH_ATTACK_HPP
#define EVODEPTH_ATTACK_HPP

#include <array>
#include <filesystem>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "evodepth/encoding.hpp"
#include "evodepth/moead.hpp"
#include "evodepth/objectives.hpp"
#include "evodepth/oracle.hpp"

namespace evodepth {

struct OracleSpec {
  std::string builtin;  // "plane", "box_scene", "region_intensity"
  nlohmann::json params = nlohmann::json::object();
  std::string url;      // remote model server
};

struct SurfaceSpec {
  std::filesystem::path mask;  // texture-space region
  std::array<double, 9> homography{1, 0, 0, 0, 1, 0, 0, 0, 1};
};

enum class EvalRegion { kFullFrame, kObject };

struct AttackConfig {
  std::string scene = "scene";
  std::filesystem::path image;
  std::filesystem::path mask;
  std::optional<std::filesystem::path> target_depth;
  std::string target_rule = "background-fill";
  OracleSpec oracle;
  MoeadConfig moead;
  Bounds bounds;
  std::vector<SurfaceSpec> surfaces;
  EvalRegion eval_region = EvalRegion::kFullFrame;
  std::filesystem::path output_dir = "out";
  long long budget_queries = 0;  // total oracle queries; 0 = unlimited
  bool parallel = false;         // batch offspring evaluation
  int remote_retries = 2;
};

// Relative paths resolve against base_dir. Every problem found is reported
// in one ConfigError.
AttackConfig parse_config(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
AttackConfig load_config(const std::filesystem::path& path);
// Checks that referenced files exist and parse and that exactly one oracle is
// configured. Throws ConfigError listing every problem. Queries nothing.
void validate_config(const AttackConfig& config);

std::unique_ptr<Oracle> make_oracle(const AttackConfig& config, const Image& image,
                                    const RegionMask& mask);

// Replaces masked depths row by row: linear interpolation between the nearest
// unmasked neighbours on either side, or the single available neighbour.
// Rows with no unmasked pixel fall back to columns, and what remains to the
// mean of all unmasked depths.
DepthMap background_fill(const DepthMap& depth, const RegionMask& mask);

// Everything needed to score a candidate against one oracle.
class AttackProblem {
 public:
  AttackProblem(Image image, Layout layout, Bounds bounds, TargetSpec target, Oracle& oracle);

  const Image& image() const { return image_; }
  const Layout& layout() const { return layout_; }
  const Bounds& bounds() const { return bounds_; }
  const TargetSpec& target() const { return target_; }
  Oracle& oracle() { return oracle_; }
  std::size_t block_count() const { return layout_.block_count(); }

  Image adversarial(const Solution& sol) const;
  Evaluation score(const Solution& sol, const DepthMap& estimate) const;
  Evaluation evaluate(const Solution& sol);

 private:
  Image image_;
  Layout layout_;
  Bounds bounds_;
  TargetSpec target_;
  Oracle& oracle_;
};

// Render -> apply -> estimate -> (f1, f2). The batch path renders in
// parallel and hands all images to the oracle at once.
class AttackEvaluator : public Evaluator {
 public:
  explicit AttackEvaluator(AttackProblem& problem) : problem_(problem) {}
  Evaluation evaluate(const Genome& genes) override;
  std::vector<Evaluation> evaluate_batch(std::span<const Genome> batch) override;

 private:
  AttackProblem& problem_;
};

// Minimizes f1 among archive points with f2 at most the (lower) median f2.
std::size_t select_knee(const std::vector<ArchiveEntry>& archive);
std::size_t select_best_f1(const std::vector<ArchiveEntry>& archive);

struct AttackReport {
  std::vector<MetricRow> rows;  // knee first, then best-f1
  Solution knee;
  Solution best_f1;
  std::vector<ObjectiveVector> pareto;  // sorted by f1
  long long total_queries = 0;
  double oracle_seconds = 0.0;
  int generations = 0;
};

// Queries reserved outside the optimizer: original image plus the two
// showcased adversarial examples.
inline constexpr long long kReservedQueries = 3;

// Runs the attack and writes artifacts into config.output_dir.
AttackReport cmd_attack(const AttackConfig& config, std::ostream& log);
// Same, against a caller-supplied oracle.
AttackReport cmd_attack(const AttackConfig& config, Oracle& oracle, std::ostream& log);

// Re-renders a stored solution and queries the oracle for the original and
// adversarial images.
MetricRow cmd_evaluate(const AttackConfig& config, const std::filesystem::path& solution_path);
MetricRow cmd_evaluate(const AttackConfig& config, const Solution& solution, Oracle& oracle);

}  // namespace evodepth

#endif  // EVODEPTH_ATTACK_HPP
