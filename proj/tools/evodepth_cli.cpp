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

// evodepth command-line tool: attack, evaluate, make-target, serve-check.

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "evodepth/attack.hpp"
#include "evodepth/raster_io.hpp"
#include "evodepth/remote_oracle.hpp"
#include "evodepth/wire.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitOracle = 3;

struct ConfigFlags {
  std::string config;
  std::string image;
  std::string mask;
  std::string target;
  std::string oracle_url;
  std::string oracle_builtin;
  std::string out;
  std::string scene;
  std::optional<std::uint64_t> seed;
  std::optional<long long> budget;
  std::optional<int> generations;
  std::optional<int> population;
  bool parallel = false;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--config", config, "JSON attack configuration");
    cmd->add_option("--image", image, "input image (PNG)");
    cmd->add_option("--mask", mask, "target-object mask (PNG, nonzero = object)");
    cmd->add_option("--target", target, "target depth map (DMAP)");
    cmd->add_option("--oracle-url", oracle_url, "remote model server, e.g. http://127.0.0.1:8000");
    cmd->add_option("--oracle-builtin", oracle_builtin, "builtin oracle name");
    cmd->add_option("--out", out, "output directory");
    cmd->add_option("--scene", scene, "scene name used in reports");
    cmd->add_option("--seed", seed, "random seed");
    cmd->add_option("--budget-queries", budget, "total oracle query budget (0 = unlimited)");
    cmd->add_option("--generations", generations, "generation limit");
    cmd->add_option("--population", population, "population size");
    cmd->add_flag("--parallel", parallel, "evaluate each generation's offspring as one batch");
  }

  evodepth::AttackConfig build() const {
    json j = json::object();
    fs::path base = fs::current_path();
    if (!config.empty()) {
      std::ifstream in(config);
      if (!in) throw evodepth::ConfigError({"cannot open config " + config});
      try {
        in >> j;
      } catch (const json::exception& e) {
        throw evodepth::ConfigError({"config " + config + " is not valid JSON: " + e.what()});
      }
      base = fs::absolute(config).parent_path();
    }
    // Flag values are relative to the working directory, not the config.
    const auto abs = [](const std::string& p) { return fs::absolute(p).string(); };
    if (!image.empty()) j["image"] = abs(image);
    if (!mask.empty()) j["mask"] = abs(mask);
    if (!target.empty()) j["target"] = abs(target);
    if (!out.empty()) j["output_dir"] = abs(out);
    if (!scene.empty()) j["scene"] = scene;
    if (!oracle_url.empty()) j["oracle"] = {{"url", oracle_url}};
    if (!oracle_builtin.empty()) {
      json o = j.contains("oracle") && j["oracle"].is_object() ? j["oracle"] : json::object();
      o.erase("url");
      o["builtin"] = oracle_builtin;
      j["oracle"] = o;
    }
    if (seed) j["seed"] = *seed;
    if (budget) j["budget_queries"] = *budget;
    if (generations) j["moead"]["generations"] = *generations;
    if (population) j["moead"]["population_size"] = *population;
    if (parallel) j["parallel"] = true;
    return evodepth::parse_config(j, base);
  }
};

void print_row(const evodepth::MetricRow& row) {
  std::cout << std::setprecision(10) << "f1 " << row.f1 << "\nf2 " << row.f2 << "\nV_original "
            << row.v_original << "\nV_adv " << row.v_adv << "\nreduction " << std::fixed
            << std::setprecision(1) << row.reduction_pct << "%\nqueries " << row.queries << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Black-box evolutionary attacks on monocular depth estimators"};
  app.require_subcommand(1);

  ConfigFlags attack_flags;
  auto* attack = app.add_subcommand("attack", "search for adversarial perturbations");
  attack_flags.add_to(attack);

  ConfigFlags eval_flags;
  std::string solution_path;
  auto* evaluate = app.add_subcommand("evaluate", "re-score a stored solution");
  eval_flags.add_to(evaluate);
  evaluate->add_option("--solution", solution_path, "solution JSON")->required();

  std::string depth_path, mask_path, mode = "background-fill", target_out;
  auto* make_target = app.add_subcommand("make-target", "derive a target depth map");
  make_target->add_option("--depth", depth_path, "depth map of the original scene (DMAP)")->required();
  make_target->add_option("--mask", mask_path, "object mask (PNG)")->required();
  make_target->add_option("--mode", mode, "construction rule")->check(CLI::IsMember({"background-fill"}));
  make_target->add_option("--out", target_out, "output DMAP")->required();

  std::string url;
  auto* serve_check = app.add_subcommand("serve-check", "query a model server's descriptor");
  serve_check->add_option("--url", url, "server base URL")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*attack) {
      const evodepth::AttackConfig config = attack_flags.build();
      const auto report = evodepth::cmd_attack(config, std::cerr);
      print_row(report.rows.front());
    } else if (*evaluate) {
      const evodepth::AttackConfig config = eval_flags.build();
      print_row(evodepth::cmd_evaluate(config, solution_path));
    } else if (*make_target) {
      evodepth::DepthMap depth;
      evodepth::RegionMask mask;
      try {
        depth = evodepth::load_depth(depth_path);
        mask = evodepth::load_mask(mask_path);
        if (mask.empty()) throw evodepth::InvalidArgument("mask has no set pixels");
        depth = evodepth::background_fill(depth, mask);
      } catch (const std::exception& e) {
        throw evodepth::ConfigError({e.what()});
      }
      evodepth::save_depth(depth, target_out);
      std::cout << "wrote " << target_out << '\n';
    } else if (*serve_check) {
      const auto d = evodepth::fetch_descriptor(url);
      std::cout << evodepth::wire::encode_descriptor(d).dump() << '\n';
    }
  } catch (const evodepth::ConfigError& e) {
    std::cerr << e.what() << '\n';
    return kExitConfig;
  } catch (const evodepth::OracleError& e) {
    std::cerr << "oracle error: " << e.what() << '\n';
    return kExitOracle;
  } catch (const evodepth::EvaluationError& e) {
    std::cerr << "oracle error: " << e.what() << '\n';
    return kExitOracle;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}
