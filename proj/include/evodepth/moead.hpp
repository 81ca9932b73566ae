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

#ifndef EVODEPTH_MOEAD_HPP
#define EVODEPTH_MOEAD_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "evodepth/errors.hpp"
#include "evodepth/genome.hpp"
#include "evodepth/objectives.hpp"
#include "evodepth/pareto.hpp"
#include "evodepth/rng.hpp"

namespace evodepth {

// Decomposition-based multi-objective optimizer (MOEA/D) with DE variation,
// polynomial mutation and constraint-aware replacement, for two objectives.

struct WeightVector {
  std::array<double, 2> lambda{};
};

// Componentwise best objective values seen so far.
using ReferencePoint = ObjectiveVector;

struct Evaluation {
  ObjectiveVector objectives;
  double vio = 0.0;  // constraint violation, 0 iff feasible
};

class Evaluator {
 public:
  virtual ~Evaluator() = default;
  virtual Evaluation evaluate(const Genome& genes) = 0;
  // Results in input order. The default evaluates sequentially.
  virtual std::vector<Evaluation> evaluate_batch(std::span<const Genome> batch);
};

// Wraps a callable. With concurrent = true the batch path runs the callable
// from several OpenMP threads, so it must be thread-safe.
class FunctionEvaluator : public Evaluator {
 public:
  using Fn = std::function<Evaluation(const Genome&)>;
  explicit FunctionEvaluator(Fn fn, bool concurrent = false)
      : fn_(std::move(fn)), concurrent_(concurrent) {}
  Evaluation evaluate(const Genome& genes) override { return fn_(genes); }
  std::vector<Evaluation> evaluate_batch(std::span<const Genome> batch) override;

 private:
  Fn fn_;
  bool concurrent_;
};

// Thrown when the evaluator fails; carries the genome being evaluated.
class EvaluationError : public Error {
 public:
  EvaluationError(const std::string& what, Genome genes)
      : Error(what), genes_(std::move(genes)) {}
  const Genome& genes() const { return genes_; }

 private:
  Genome genes_;
};

enum class SelectionMode {
  kSweep,       // every subproblem once per generation, index order
  kTournament,  // per-objective bests, then binary tournaments on g
};

enum class EvaluationMode {
  kSteadyState,  // create, evaluate and insert one offspring at a time
  kBatch,        // create a generation's offspring, evaluate them together,
                 // then insert in selection order
};

struct MoeadConfig {
  int population_size = 100;
  int neighborhood_size = 10;
  double neighborhood_probability = 0.8;  // delta
  int max_replacements = 1;               // n_r
  int generations = 5000;
  double scale_factor = 0.5;              // DE F
  double crossover_rate = 0.9;            // DE CR
  double mutation_probability = -1.0;     // < 0: 1 / genome length
  double distribution_index = 20.0;       // eta
  std::uint64_t seed = 0;
  long long query_budget = 0;             // evaluations; 0 = unlimited
  SelectionMode selection = SelectionMode::kSweep;
  EvaluationMode evaluation = EvaluationMode::kSteadyState;

  void validate() const;
};

// Replaces zero weights inside the scalarization only.
inline constexpr double kZeroWeightGuard = 1e-6;

std::vector<WeightVector> generate_weights(int population_size, int objective_count = 2);

// Each list holds the neighborhood_size nearest weight indices by Euclidean
// distance, self included, ties broken by lower index.
std::vector<std::vector<std::size_t>> build_neighborhoods(const std::vector<WeightVector>& weights,
                                                          int neighborhood_size);

double tchebycheff(const ObjectiveVector& f, const WeightVector& w, const ReferencePoint& z);

// Neighborhood of i with probability delta, otherwise every index.
std::vector<std::size_t> select_mating_range(std::size_t i,
                                             const std::vector<std::vector<std::size_t>>& nbrs,
                                             std::size_t population_size, double delta, Rng& rng);

Genome de_crossover(std::span<const double> base, std::span<const double> r1,
                    std::span<const double> r2, double scale_factor, double crossover_rate,
                    const BoxBounds& box, Rng& rng);

// Mutation step for a uniform draw u in [0, 1].
double polynomial_delta(double u, double distribution_index);
// Moves the gene by delta * (distance to its nearer bound), then clamps.
double mutate_gene(double gene, double u, double distribution_index, double lower, double upper);
void polynomial_mutation(std::span<double> genes, double probability, double distribution_index,
                         const BoxBounds& box, Rng& rng);

ReferencePoint update_reference(const ReferencePoint& z, const ObjectiveVector& f);

struct Subproblem {
  std::size_t index = 0;
  WeightVector weight;
  std::vector<std::size_t> neighbors;
  Genome current;
  ObjectiveVector objectives;
  double vio = 0.0;
};

// Offspring acceptance against one incumbent under weight w.
bool replaces(const Evaluation& offspring, const Subproblem& incumbent, const ReferencePoint& z);

// Draws incumbents from range without reuse and replaces them per
// replaces(), stopping after max_replacements or when range is exhausted.
int try_replace(const Genome& offspring, const Evaluation& eval, std::vector<std::size_t> range,
                int max_replacements, std::vector<Subproblem>& population,
                const ReferencePoint& z, Rng& rng);

struct GenerationRecord {
  int gen = 0;
  double best_f1 = 0.0;
  double best_f2 = 0.0;
  ReferencePoint z;
  long long queries = 0;
  std::size_t archive_size = 0;
  int max_replacements = 0;  // most replacements made by one offspring
  int offspring = 0;
};

nlohmann::ordered_json trace_record_json(const GenerationRecord& rec);

class Moead {
 public:
  using Initializer = std::function<Genome(Rng&)>;
  using Observer = std::function<void(const Moead&, const GenerationRecord&)>;

  Moead(MoeadConfig config, BoxBounds box, Evaluator& evaluator);

  // Optional sampler for the initial population; default is uniform in box.
  void set_initializer(Initializer init) { initializer_ = std::move(init); }
  // Called after initialization (gen 0) and after every generation.
  void set_observer(Observer obs) { observer_ = std::move(obs); }

  void initialize();
  // Runs one generation. Returns false once the generation limit or the
  // query budget is reached.
  bool step();
  // initialize() when needed, then step() until done.
  void run();

  bool initialized() const { return initialized_; }
  bool done() const;
  int generation() const { return generation_; }
  long long evaluations() const { return evaluations_; }
  const MoeadConfig& config() const { return config_; }
  const BoxBounds& box() const { return box_; }
  const std::vector<Subproblem>& population() const { return population_; }
  const ReferencePoint& reference() const { return z_; }
  const ParetoArchive& archive() const { return archive_; }
  const std::vector<GenerationRecord>& trace() const { return trace_; }

  nlohmann::json checkpoint() const;
  // Restores population, archive, counters and random state. The weights
  // and neighborhoods are rebuilt from the config.
  void restore(const nlohmann::json& checkpoint);

 private:
  std::vector<std::size_t> selection_order();
  std::vector<Evaluation> evaluate_all(std::span<const Genome> batch);
  Genome make_offspring(std::size_t i, const std::vector<std::size_t>& range);
  void absorb(const Genome& genes, const Evaluation& eval);
  GenerationRecord record(int offspring, int max_repl) const;
  void setup_structure();
  long long remaining_budget() const;

  MoeadConfig config_;
  BoxBounds box_;
  Evaluator& evaluator_;
  Initializer initializer_;
  Observer observer_;
  Rng rng_;
  double mutation_probability_ = 0.0;
  std::vector<std::vector<std::size_t>> neighborhoods_;
  std::vector<Subproblem> population_;
  ReferencePoint z_;
  ParetoArchive archive_;
  std::vector<GenerationRecord> trace_;
  int generation_ = 0;
  long long evaluations_ = 0;
  bool initialized_ = false;
  bool budget_hit_ = false;
};

}  // namespace evodepth

#endif  // EVODEPTH_MOEAD_HPP
