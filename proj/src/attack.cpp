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

#include "evodepth/attack.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>

#include "evodepth/raster_io.hpp"
#include "evodepth/remote_oracle.hpp"

namespace evodepth {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Collects configuration problems instead of stopping at the first one.
class Problems {
 public:
  void add(std::string p) { list_.push_back(std::move(p)); }
  bool empty() const { return list_.empty(); }
  [[noreturn]] void raise() { throw ConfigError(std::move(list_)); }
  void raise_if_any() {
    if (!list_.empty()) raise();
  }

  template <typename T>
  void read(const json& obj, const char* key, T& out) {
    if (!obj.contains(key)) return;
    try {
      out = obj.at(key).get<T>();
    } catch (const json::exception&) {
      add(std::string("\"") + key + "\" has the wrong type");
    }
  }

 private:
  std::vector<std::string> list_;
};

fs::path resolve(const fs::path& base, const std::string& p) {
  fs::path path(p);
  if (path.is_relative() && !base.empty()) path = base / path;
  return path;
}

std::string real_text(double v) {
  std::ostringstream out;
  out << std::setprecision(17) << v;
  return out.str();
}

template <typename Loader>
void check_loadable(Problems& problems, const fs::path& path, const char* what, Loader&& load) {
  if (!fs::exists(path)) {
    problems.add(std::string(what) + " not found: " + path.string());
    return;
  }
  try {
    load(path);
  } catch (const std::exception& e) {
    problems.add(std::string(what) + " does not parse: " + e.what());
  }
}

Layout build_layout(const AttackConfig& config, const RegionMask& mask) {
  if (config.surfaces.empty()) return Layout::single(mask, config.bounds.pattern_size);
  std::vector<std::pair<RegionMask, Homography>> surfaces;
  for (const auto& s : config.surfaces) surfaces.emplace_back(load_mask(s.mask), Homography(s.homography));
  return Layout::with_surfaces(mask, std::move(surfaces), config.bounds.pattern_size);
}

TargetSpec build_target(const AttackConfig& config, const RegionMask& mask,
                        const DepthMap& original) {
  TargetSpec spec;
  spec.volume_region = rescale_nearest(mask, original.width(), original.height());
  spec.eval_region = config.eval_region == EvalRegion::kObject
                         ? spec.volume_region
                         : RegionMask::full(original.width(), original.height());
  if (config.target_depth) {
    spec.target_depth = load_depth(*config.target_depth);
    if (spec.target_depth.width() != original.width() ||
        spec.target_depth.height() != original.height())
      throw ConfigError({"target depth is " + std::to_string(spec.target_depth.width()) + "x" +
                         std::to_string(spec.target_depth.height()) + " but the oracle outputs " +
                         std::to_string(original.width()) + "x" +
                         std::to_string(original.height())});
  } else {
    spec.target_depth = background_fill(original, spec.volume_region);
  }
  spec.validate();
  return spec;
}

void check_oracle_input(const Oracle& oracle, const Image& image) {
  const auto& d = oracle.descriptor();
  if (d.input_width != image.width() || d.input_height != image.height() ||
      d.input_channels != image.channels())
    throw ConfigError({"image is " + std::to_string(image.width()) + "x" +
                       std::to_string(image.height()) + "x" + std::to_string(image.channels()) +
                       " but oracle '" + d.name + "' expects " + std::to_string(d.input_width) +
                       "x" + std::to_string(d.input_height) + "x" +
                       std::to_string(d.input_channels)});
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw Error("cannot write " + path.string());
}

std::pair<float, float> depth_range(const DepthMap& d) {
  const auto [lo, hi] = std::minmax_element(d.values().begin(), d.values().end());
  return {*lo, *hi};
}

}  // namespace

AttackConfig parse_config(const json& j, const fs::path& base_dir) {
  Problems problems;
  AttackConfig c;
  if (!j.is_object()) {
    problems.add("configuration must be a JSON object");
    problems.raise();
  }
  problems.read(j, "scene", c.scene);
  std::string s;
  if (j.contains("image") && j.at("image").is_string())
    c.image = resolve(base_dir, j.at("image").get<std::string>());
  else
    problems.add("\"image\" (PNG path) is required");
  if (j.contains("mask") && j.at("mask").is_string())
    c.mask = resolve(base_dir, j.at("mask").get<std::string>());
  else
    problems.add("\"mask\" (PNG path) is required");
  if (j.contains("target")) {
    if (j.at("target").is_string())
      c.target_depth = resolve(base_dir, j.at("target").get<std::string>());
    else
      problems.add("\"target\" must be a DMAP path");
  }
  problems.read(j, "target_rule", c.target_rule);
  if (c.target_rule != "background-fill")
    problems.add("unknown target rule '" + c.target_rule + "' (expected background-fill)");

  if (j.contains("oracle")) {
    const json& o = j.at("oracle");
    if (!o.is_object()) {
      problems.add("\"oracle\" must be an object");
    } else {
      problems.read(o, "builtin", c.oracle.builtin);
      problems.read(o, "url", c.oracle.url);
      c.oracle.params = o;
      for (const char* key : {"background", "mask"})
        if (o.contains(key) && o.at(key).is_string())
          c.oracle.params[key] = resolve(base_dir, o.at(key).get<std::string>()).string();
    }
  }

  if (j.contains("moead")) {
    const json& m = j.at("moead");
    problems.read(m, "population_size", c.moead.population_size);
    problems.read(m, "neighborhood_size", c.moead.neighborhood_size);
    problems.read(m, "delta", c.moead.neighborhood_probability);
    problems.read(m, "max_replacements", c.moead.max_replacements);
    problems.read(m, "generations", c.moead.generations);
    problems.read(m, "F", c.moead.scale_factor);
    problems.read(m, "CR", c.moead.crossover_rate);
    problems.read(m, "mutation_probability", c.moead.mutation_probability);
    problems.read(m, "eta", c.moead.distribution_index);
    problems.read(m, "seed", c.moead.seed);
    std::string selection = "sweep";
    problems.read(m, "selection", selection);
    if (selection == "sweep")
      c.moead.selection = SelectionMode::kSweep;
    else if (selection == "tournament")
      c.moead.selection = SelectionMode::kTournament;
    else
      problems.add("unknown selection '" + selection + "' (expected sweep or tournament)");
  }
  problems.read(j, "seed", c.moead.seed);
  if (j.contains("bounds")) {
    const json& b = j.at("bounds");
    problems.read(b, "n_patterns", c.bounds.n_patterns);
    problems.read(b, "pattern_size", c.bounds.pattern_size);
    problems.read(b, "epsilon_max", c.bounds.epsilon_max);
  }
  if (j.contains("surfaces")) {
    if (!j.at("surfaces").is_array()) {
      problems.add("\"surfaces\" must be an array");
    } else {
      for (const auto& sj : j.at("surfaces")) {
        SurfaceSpec spec;
        if (sj.contains("mask") && sj.at("mask").is_string())
          spec.mask = resolve(base_dir, sj.at("mask").get<std::string>());
        else
          problems.add("every surface needs a \"mask\" path");
        problems.read(sj, "homography", spec.homography);
        c.surfaces.push_back(spec);
      }
    }
  }
  std::string region = "full";
  problems.read(j, "eval_region", region);
  if (region == "full")
    c.eval_region = EvalRegion::kFullFrame;
  else if (region == "object")
    c.eval_region = EvalRegion::kObject;
  else
    problems.add("unknown eval_region '" + region + "' (expected full or object)");
  if (j.contains("output_dir") && j.at("output_dir").is_string())
    c.output_dir = resolve(base_dir, j.at("output_dir").get<std::string>());
  problems.read(j, "budget_queries", c.budget_queries);
  problems.read(j, "parallel", c.parallel);
  problems.read(j, "remote_retries", c.remote_retries);
  problems.raise_if_any();
  return c;
}

AttackConfig load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"cannot open config " + path.string()});
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError({"config " + path.string() + " is not valid JSON: " + e.what()});
  }
  return parse_config(j, path.parent_path());
}

void validate_config(const AttackConfig& c) {
  Problems problems;
  std::optional<Image> image;
  std::optional<RegionMask> mask;
  check_loadable(problems, c.image, "image", [&](const fs::path& p) { image = load_image(p); });
  check_loadable(problems, c.mask, "mask", [&](const fs::path& p) { mask = load_mask(p); });
  if (image && mask) {
    if (mask->width() != image->width() || mask->height() != image->height())
      problems.add("mask and image dimensions differ");
  }
  if (mask && mask->empty()) problems.add("mask has no set pixels");
  if (c.target_depth)
    check_loadable(problems, *c.target_depth, "target depth", [](const fs::path& p) { load_depth(p); });
  for (const auto& s : c.surfaces) {
    check_loadable(problems, s.mask, "surface mask", [](const fs::path& p) {
      if (load_mask(p).empty()) throw InvalidArgument("surface mask is empty");
    });
    try {
      Homography h(s.homography);
    } catch (const std::exception& e) {
      problems.add(std::string("surface homography: ") + e.what());
    }
  }

  const bool has_builtin = !c.oracle.builtin.empty();
  const bool has_url = !c.oracle.url.empty();
  if (has_builtin == has_url) {
    problems.add("exactly one of oracle.builtin and oracle.url must be given");
  } else if (has_url) {
    try {
      Endpoint::parse(c.oracle.url);
    } catch (const std::exception& e) {
      problems.add(e.what());
    }
  } else if (c.oracle.builtin == "box_scene") {
    const auto& p = c.oracle.params;
    if (p.contains("background") && p.at("background").is_string()) {
      check_loadable(problems, p.at("background").get<std::string>(), "box scene background",
                     [&](const fs::path& path) {
                       const DepthMap bg = load_depth(path);
                       if (image && (bg.width() != image->width() || bg.height() != image->height()))
                         throw DimensionError("background and image dimensions differ");
                     });
    } else if (!(p.contains("background") && p.at("background").is_number())) {
      problems.add("box_scene oracle needs \"background\" (DMAP path or constant depth)");
    }
    if (p.contains("mask") && p.at("mask").is_string())
      check_loadable(problems, p.at("mask").get<std::string>(), "box scene mask",
                     [](const fs::path& path) { load_mask(path); });
  } else if (c.oracle.builtin != "plane" && c.oracle.builtin != "region_intensity") {
    problems.add("unknown builtin oracle '" + c.oracle.builtin + "'");
  }

  try {
    c.bounds.validate();
  } catch (const std::exception& e) {
    problems.add(std::string("bounds: ") + e.what());
  }
  try {
    c.moead.validate();
  } catch (const std::exception& e) {
    problems.add(std::string("moead: ") + e.what());
  }
  if (c.budget_queries < 0) problems.add("budget_queries must be nonnegative");
  if (c.budget_queries > 0 && c.budget_queries < kReservedQueries + c.moead.population_size)
    problems.add("budget_queries must be at least population_size + " +
                 std::to_string(kReservedQueries));
  problems.raise_if_any();
}

std::unique_ptr<Oracle> make_oracle(const AttackConfig& config, const Image& image,
                                    const RegionMask& mask) {
  if (!config.oracle.url.empty()) {
    RemoteOptions options;
    options.retries = config.remote_retries;
    return std::make_unique<RemoteOracle>(config.oracle.url, options);
  }
  const json& p = config.oracle.params;
  const std::string& name = config.oracle.builtin;
  if (name == "plane") {
    OracleDescriptor d;
    d.name = "plane";
    d.input_width = image.width();
    d.input_height = image.height();
    d.input_channels = image.channels();
    d.output_width = p.value("output_width", image.width());
    d.output_height = p.value("output_height", image.height());
    return std::make_unique<PlaneOracle>(d, p.value("depth", 1.0f));
  }
  RegionMask region = mask;
  if (p.contains("mask") && p.at("mask").is_string()) region = load_mask(p.at("mask").get<std::string>());
  if (name == "box_scene") {
    DepthMap background;
    if (p.at("background").is_string())
      background = load_depth(p.at("background").get<std::string>());
    else
      background = DepthMap(image.width(), image.height(), p.at("background").get<float>());
    return std::make_unique<BoxSceneOracle>(std::move(background), std::move(region),
                                            p.value("object_depth", 1.0f),
                                            p.value("sensitivity", 2.0), image.channels());
  }
  if (name == "region_intensity")
    return std::make_unique<RegionIntensityOracle>(std::move(region), p.value("level", 1.0f),
                                                   image.channels());
  throw ConfigError({"unknown builtin oracle '" + name + "'"});
}

DepthMap background_fill(const DepthMap& depth, const RegionMask& mask_in) {
  const int w = depth.width(), h = depth.height();
  const RegionMask mask = rescale_nearest(mask_in, w, h);
  if (mask.count() == static_cast<std::size_t>(w) * h)
    throw InvalidArgument("cannot background-fill a fully masked frame");
  std::vector<float> out = depth.values();
  std::vector<std::uint8_t> filled(out.size(), 0);
  const auto idx = [w](int x, int y) { return static_cast<std::size_t>(y) * w + x; };

  for (int y = 0; y < h; ++y) {
    int prev = -1;
    for (int x = 0; x <= w; ++x) {
      if (x < w && mask.at(x, y)) continue;
      const int next = x < w ? x : -1;
      if (prev < 0 && next < 0) break;  // row fully masked
      for (int k = prev + 1; k < x; ++k) {
        double v;
        if (prev >= 0 && next >= 0) {
          const double t = static_cast<double>(k - prev) / (next - prev);
          v = depth.at(prev, y) + (static_cast<double>(depth.at(next, y)) - depth.at(prev, y)) * t;
        } else {
          v = prev >= 0 ? depth.at(prev, y) : depth.at(next, y);
        }
        out[idx(k, y)] = static_cast<float>(v);
        filled[idx(k, y)] = 1;
      }
      prev = next;
    }
  }

  double sum = 0.0;
  std::size_t known = 0;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      if (!mask.at(x, y)) {
        sum += depth.at(x, y);
        ++known;
      }
  const float mean = static_cast<float>(sum / static_cast<double>(known));

  for (int x = 0; x < w; ++x) {
    bool pending = false;
    for (int y = 0; y < h && !pending; ++y) pending = mask.at(x, y) && !filled[idx(x, y)];
    if (!pending) continue;
    int prev = -1;
    for (int y = 0; y <= h; ++y) {
      if (y < h && mask.at(x, y)) continue;
      const int next = y < h ? y : -1;
      for (int k = prev + 1; k < y; ++k) {
        if (filled[idx(x, k)]) continue;
        double v;
        if (prev >= 0 && next >= 0) {
          const double t = static_cast<double>(k - prev) / (next - prev);
          v = depth.at(x, prev) + (static_cast<double>(depth.at(x, next)) - depth.at(x, prev)) * t;
        } else if (prev >= 0 || next >= 0) {
          v = prev >= 0 ? depth.at(x, prev) : depth.at(x, next);
        } else {
          v = mean;
        }
        out[idx(x, k)] = static_cast<float>(v);
        filled[idx(x, k)] = 1;
      }
      prev = next;
    }
  }
  return DepthMap(w, h, std::move(out));
}

AttackProblem::AttackProblem(Image image, Layout layout, Bounds bounds, TargetSpec target,
                             Oracle& oracle)
    : image_(std::move(image)),
      layout_(std::move(layout)),
      bounds_(bounds),
      target_(std::move(target)),
      oracle_(oracle) {
  bounds_.validate();
  target_.validate();
  if (layout_.width() != image_.width() || layout_.height() != image_.height())
    throw DimensionError("layout and image dimensions differ");
  if (target_.target_depth.width() != oracle_.descriptor().output_width ||
      target_.target_depth.height() != oracle_.descriptor().output_height)
    throw DimensionError("target is not in oracle-output coordinates");
}

Image AttackProblem::adversarial(const Solution& sol) const {
  return apply_to_image(image_, render_perturbation(sol, layout_, bounds_));
}

Evaluation AttackProblem::score(const Solution& sol, const DepthMap& estimate) const {
  const PerturbationField field = render_perturbation(sol, layout_, bounds_);
  return {{depth_error(estimate, target_), perturbation_norm(field)}, violation(sol, bounds_)};
}

Evaluation AttackProblem::evaluate(const Solution& sol) {
  const PerturbationField field = render_perturbation(sol, layout_, bounds_);
  const DepthMap est = oracle_.estimate(apply_to_image(image_, field));
  return {{depth_error(est, target_), perturbation_norm(field)}, violation(sol, bounds_)};
}

Evaluation AttackEvaluator::evaluate(const Genome& genes) {
  return problem_.evaluate(from_genome(genes, problem_.block_count()));
}

std::vector<Evaluation> AttackEvaluator::evaluate_batch(std::span<const Genome> batch) {
  const std::size_t n = batch.size();
  std::vector<Solution> sols(n);
  std::vector<PerturbationField> fields(n);
  std::vector<Image> images(n);
  std::vector<std::exception_ptr> errors(n);
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < count; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      sols[k] = from_genome(batch[k], problem_.block_count());
      fields[k] = render_perturbation(sols[k], problem_.layout(), problem_.bounds());
      images[k] = apply_to_image(problem_.image(), fields[k]);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (std::size_t k = 0; k < n; ++k)
    if (errors[k]) {
      try {
        std::rethrow_exception(errors[k]);
      } catch (const std::exception& e) {
        throw EvaluationError(std::string("rendering failed: ") + e.what(), batch[k]);
      }
    }
  const std::vector<DepthMap> depths = problem_.oracle().estimate_batch(images);
  std::vector<Evaluation> out(n);
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < count; ++i) {
    const auto k = static_cast<std::size_t>(i);
    out[k] = {{depth_error(depths[k], problem_.target()), perturbation_norm(fields[k])},
              violation(sols[k], problem_.bounds())};
  }
  return out;
}

std::size_t select_knee(const std::vector<ArchiveEntry>& archive) {
  if (archive.empty()) throw InvalidArgument("archive is empty");
  std::vector<double> f2(archive.size());
  std::transform(archive.begin(), archive.end(), f2.begin(),
                 [](const ArchiveEntry& e) { return e.objectives.f2; });
  std::sort(f2.begin(), f2.end());
  const double median = f2[(f2.size() - 1) / 2];
  std::size_t best = archive.size();
  for (std::size_t i = 0; i < archive.size(); ++i) {
    const auto& o = archive[i].objectives;
    if (o.f2 > median) continue;
    if (best == archive.size() || o.f1 < archive[best].objectives.f1 ||
        (o.f1 == archive[best].objectives.f1 && o.f2 < archive[best].objectives.f2))
      best = i;
  }
  return best;
}

std::size_t select_best_f1(const std::vector<ArchiveEntry>& archive) {
  if (archive.empty()) throw InvalidArgument("archive is empty");
  std::size_t best = 0;
  for (std::size_t i = 1; i < archive.size(); ++i) {
    const auto& o = archive[i].objectives;
    const auto& b = archive[best].objectives;
    if (o.f1 < b.f1 || (o.f1 == b.f1 && o.f2 < b.f2)) best = i;
  }
  return best;
}

AttackReport cmd_attack(const AttackConfig& config, std::ostream& log) {
  validate_config(config);
  const Image image = load_image(config.image);
  const RegionMask mask = load_mask(config.mask);
  std::unique_ptr<Oracle> oracle = make_oracle(config, image, mask);
  return cmd_attack(config, *oracle, log);
}

AttackReport cmd_attack(const AttackConfig& config, Oracle& oracle, std::ostream& log) {
  const Image image = load_image(config.image);
  const RegionMask mask = load_mask(config.mask);
  if (mask.empty()) throw ConfigError({"mask has no set pixels"});
  check_oracle_input(oracle, image);
  config.bounds.validate();
  Layout layout = build_layout(config, mask);
  fs::create_directories(config.output_dir);
  const fs::path out = config.output_dir;

  const DepthMap original = oracle.estimate(image);
  TargetSpec target = build_target(config, mask, original);
  save_depth(target.target_depth, out / "target.dmap");
  const double v_original = pseudo_volume(original, target);

  AttackProblem problem(image, std::move(layout), config.bounds, std::move(target), oracle);
  const std::size_t blocks = problem.block_count();
  log << "scene " << config.scene << ": " << blocks << " blocks, "
      << blocks + config.bounds.pattern_gene_count() << " genes, V_original "
      << real_text(v_original) << '\n';

  MoeadConfig mc = config.moead;
  mc.query_budget = config.budget_queries > 0 ? config.budget_queries - kReservedQueries : 0;
  mc.evaluation = config.parallel ? EvaluationMode::kBatch : EvaluationMode::kSteadyState;
  AttackEvaluator evaluator(problem);
  Moead moead(mc, gene_box(config.bounds, blocks), evaluator);
  moead.set_initializer([&](Rng& rng) {
    return to_genome(random_solution(config.bounds, blocks, rng));
  });

  std::ofstream trace(out / "trace.jsonl", std::ios::binary);
  moead.set_observer([&](const Moead&, const GenerationRecord& rec) {
    GenerationRecord line = rec;
    line.queries = oracle.ledger().total_queries();
    trace << trace_record_json(line).dump() << '\n';
    if (rec.gen % 50 == 0)
      log << "gen " << rec.gen << " best_f1 " << real_text(rec.best_f1) << " best_f2 "
          << real_text(rec.best_f2) << " archive " << rec.archive_size << '\n';
  });
  try {
    moead.run();
  } catch (const std::exception&) {
    trace.flush();
    if (moead.initialized()) write_text(out / "checkpoint.json", moead.checkpoint().dump());
    throw;
  }
  trace.close();
  write_text(out / "checkpoint.json", moead.checkpoint().dump());

  const std::vector<ArchiveEntry> archive = moead.archive().sorted();
  if (archive.empty()) throw Error("no feasible solution was evaluated");
  {
    std::ostringstream csv;
    csv << "f1,f2\n";
    for (const auto& e : archive)
      csv << real_text(e.objectives.f1) << ',' << real_text(e.objectives.f2) << '\n';
    write_text(out / "pareto.csv", csv.str());
  }

  AttackReport report;
  report.generations = moead.generation();
  for (const auto& e : archive) report.pareto.push_back(e.objectives);

  const auto [lo, hi] = depth_range(original);
  save_depth(original, out / "depth_original.dmap");
  save_image(false_color(original, lo, hi), out / "depth_original.png");

  const auto showcase = [&](std::size_t index, const std::string& tag) {
    const Solution sol = from_genome(archive[index].genes, blocks);
    const PerturbationField field = render_perturbation(sol, problem.layout(), problem.bounds());
    const Image adv = apply_to_image(image, field);
    const DepthMap est = oracle.estimate(adv);
    const double f1 = depth_error(est, problem.target());
    const double f2 = perturbation_norm(field);
    if (std::abs(f1 - archive[index].objectives.f1) > 1e-6 ||
        std::abs(f2 - archive[index].objectives.f2) > 1e-6)
      log << "warning: " << tag << " does not reproduce its archived objectives\n";
    save_image(adv, out / ("adversarial_" + tag + ".png"));
    save_field(field, out / ("perturbation_" + tag + ".dmap"));
    save_depth(est, out / ("depth_adversarial_" + tag + ".dmap"));
    save_image(false_color(est, lo, hi), out / ("depth_adversarial_" + tag + ".png"));
    write_text(out / ("solution_" + tag + ".json"), solution_to_json(sol, config.bounds).dump());
    MetricRow row;
    row.scene = tag == "knee" ? config.scene : config.scene + "/" + tag;
    row.f1 = f1;
    row.f2 = f2;
    row.v_original = v_original;
    row.v_adv = pseudo_volume(est, problem.target());
    row.reduction_pct = v_original > 0.0 ? reduction_rate(v_original, row.v_adv) : 0.0;
    return std::pair{sol, row};
  };
  auto [knee, knee_row] = showcase(select_knee(archive), "knee");
  auto [best, best_row] = showcase(select_best_f1(archive), "best_f1");
  report.knee = std::move(knee);
  report.best_f1 = std::move(best);
  report.total_queries = oracle.ledger().total_queries();
  report.oracle_seconds = oracle.ledger().wall_time();
  knee_row.queries = best_row.queries = report.total_queries;
  report.rows = {knee_row, best_row};
  {
    std::ostringstream csv;
    write_metric_csv(csv, report.rows);
    write_text(out / "report.csv", csv.str());
  }
  log << "done: " << report.generations << " generations, " << report.total_queries
      << " queries, knee reduction " << real_text(knee_row.reduction_pct) << "%\n";
  return report;
}

MetricRow cmd_evaluate(const AttackConfig& config, const fs::path& solution_path) {
  validate_config(config);
  std::ifstream in(solution_path);
  if (!in) throw ConfigError({"cannot open solution " + solution_path.string()});
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError({"solution " + solution_path.string() + " is not valid JSON: " + e.what()});
  }
  Solution sol;
  try {
    sol = solution_from_json(j);
  } catch (const std::exception& e) {
    throw ConfigError({e.what()});
  }
  const Image image = load_image(config.image);
  const RegionMask mask = load_mask(config.mask);
  std::unique_ptr<Oracle> oracle = make_oracle(config, image, mask);
  return cmd_evaluate(config, sol, *oracle);
}

MetricRow cmd_evaluate(const AttackConfig& config, const Solution& solution, Oracle& oracle) {
  const Image image = load_image(config.image);
  const RegionMask mask = load_mask(config.mask);
  check_oracle_input(oracle, image);
  const Layout layout = build_layout(config, mask);
  if (solution.map_genes.size() != layout.block_count() ||
      solution.pattern_genes.size() != config.bounds.pattern_gene_count())
    throw ConfigError({"solution does not match the configured layout and bounds"});
  const long long before = oracle.ledger().total_queries();
  const DepthMap original = oracle.estimate(image);
  const TargetSpec target = build_target(config, mask, original);
  const PerturbationField field = render_perturbation(solution, layout, config.bounds);
  const DepthMap est = oracle.estimate(apply_to_image(image, field));
  MetricRow row;
  row.scene = config.scene;
  row.f1 = depth_error(est, target);
  row.f2 = perturbation_norm(field);
  row.v_original = pseudo_volume(original, target);
  row.v_adv = pseudo_volume(est, target);
  row.reduction_pct = row.v_original > 0.0 ? reduction_rate(row.v_original, row.v_adv) : 0.0;
  row.queries = oracle.ledger().total_queries() - before;
  return row;
}

}  // namespace evodepth
