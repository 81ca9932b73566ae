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

#include "evodepth/moead.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <string>

namespace evodepth {

std::vector<Evaluation> Evaluator::evaluate_batch(std::span<const Genome> batch) {
  std::vector<Evaluation> out;
  out.reserve(batch.size());
  for (const auto& g : batch) out.push_back(evaluate(g));
  return out;
}

std::vector<Evaluation> FunctionEvaluator::evaluate_batch(std::span<const Genome> batch) {
  if (!concurrent_) return Evaluator::evaluate_batch(batch);
  std::vector<Evaluation> out(batch.size());
  std::vector<std::exception_ptr> errors(batch.size());
  const auto n = static_cast<long long>(batch.size());
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      out[k] = fn_(batch[k]);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

void MoeadConfig::validate() const {
  if (population_size < 2) throw InvalidArgument("population size must be at least 2");
  if (neighborhood_size < 2 || neighborhood_size > population_size)
    throw InvalidArgument("neighborhood size must lie in [2, population size]");
  if (!(neighborhood_probability >= 0.0 && neighborhood_probability <= 1.0))
    throw InvalidArgument("neighborhood probability must lie in [0, 1]");
  if (max_replacements < 1) throw InvalidArgument("max replacements must be at least 1");
  if (generations < 0) throw InvalidArgument("generation limit must be nonnegative");
  if (!(scale_factor > 0.0)) throw InvalidArgument("DE scale factor must be positive");
  if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0))
    throw InvalidArgument("DE crossover rate must lie in [0, 1]");
  if (mutation_probability > 1.0) throw InvalidArgument("mutation probability must be <= 1");
  if (!(distribution_index >= 0.0)) throw InvalidArgument("distribution index must be >= 0");
  if (query_budget < 0) throw InvalidArgument("query budget must be nonnegative");
  if (query_budget > 0 && query_budget < population_size)
    throw InvalidArgument("query budget must cover the initial population");
}

std::vector<WeightVector> generate_weights(int population_size, int objective_count) {
  if (objective_count != 2) throw InvalidArgument("only two objectives are supported");
  if (population_size < 2) throw InvalidArgument("need at least two weight vectors");
  std::vector<WeightVector> weights(static_cast<std::size_t>(population_size));
  const double steps = population_size - 1;
  for (int j = 0; j < population_size; ++j) {
    const double a = j / steps;
    weights[static_cast<std::size_t>(j)].lambda = {a, 1.0 - a};
  }
  return weights;
}

std::vector<std::vector<std::size_t>> build_neighborhoods(const std::vector<WeightVector>& weights,
                                                          int neighborhood_size) {
  const std::size_t n = weights.size();
  if (neighborhood_size < 1 || static_cast<std::size_t>(neighborhood_size) > n)
    throw InvalidArgument("neighborhood size must lie in [1, number of weights]");
  std::vector<std::vector<std::size_t>> out(n);
  std::vector<std::pair<double, std::size_t>> dist(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double d0 = weights[i].lambda[0] - weights[j].lambda[0];
      const double d1 = weights[i].lambda[1] - weights[j].lambda[1];
      dist[j] = {std::sqrt(d0 * d0 + d1 * d1), j};
    }
    std::sort(dist.begin(), dist.end());
    for (int k = 0; k < neighborhood_size; ++k) out[i].push_back(dist[static_cast<std::size_t>(k)].second);
  }
  return out;
}

double tchebycheff(const ObjectiveVector& f, const WeightVector& w, const ReferencePoint& z) {
  const auto weight = [](double l) { return l == 0.0 ? kZeroWeightGuard : l; };
  return std::max(weight(w.lambda[0]) * std::abs(f.f1 - z.f1),
                  weight(w.lambda[1]) * std::abs(f.f2 - z.f2));
}

std::vector<std::size_t> select_mating_range(std::size_t i,
                                             const std::vector<std::vector<std::size_t>>& nbrs,
                                             std::size_t population_size, double delta, Rng& rng) {
  if (rng.uniform() < delta) return nbrs.at(i);
  std::vector<std::size_t> all(population_size);
  std::iota(all.begin(), all.end(), std::size_t{0});
  return all;
}

Genome de_crossover(std::span<const double> base, std::span<const double> r1,
                    std::span<const double> r2, double scale_factor, double crossover_rate,
                    const BoxBounds& box, Rng& rng) {
  if (base.size() != r1.size() || base.size() != r2.size() || base.size() != box.size())
    throw DimensionError("crossover parents differ in length");
  Genome child(base.begin(), base.end());
  for (std::size_t k = 0; k < child.size(); ++k)
    if (rng.uniform() < crossover_rate) child[k] = base[k] + scale_factor * (r1[k] - r2[k]);
  clamp_to_box(child, box);
  return child;
}

double polynomial_delta(double u, double distribution_index) {
  const double exponent = 1.0 / (distribution_index + 1.0);
  if (u < 0.5) return std::pow(2.0 * u, exponent) - 1.0;
  return 1.0 - std::pow(2.0 * (1.0 - u), exponent);
}

double mutate_gene(double gene, double u, double distribution_index, double lower, double upper) {
  const double x = std::clamp(gene, lower, upper);
  const double reach = std::min(x - lower, upper - x);
  return std::clamp(x + polynomial_delta(u, distribution_index) * reach, lower, upper);
}

void polynomial_mutation(std::span<double> genes, double probability, double distribution_index,
                         const BoxBounds& box, Rng& rng) {
  if (genes.size() != box.size()) throw DimensionError("genome length does not match bounds");
  for (std::size_t k = 0; k < genes.size(); ++k) {
    if (!rng.bernoulli(probability)) continue;
    genes[k] = mutate_gene(genes[k], rng.uniform_closed(), distribution_index, box.lower[k],
                           box.upper[k]);
  }
}

ReferencePoint update_reference(const ReferencePoint& z, const ObjectiveVector& f) {
  return {std::min(z.f1, f.f1), std::min(z.f2, f.f2)};
}

bool replaces(const Evaluation& offspring, const Subproblem& incumbent, const ReferencePoint& z) {
  const bool child_ok = offspring.vio == 0.0;
  const bool incumbent_ok = incumbent.vio == 0.0;
  if (!child_ok && !incumbent_ok) return offspring.vio < incumbent.vio;
  if (child_ok && !incumbent_ok) return true;
  if (child_ok && incumbent_ok)
    return tchebycheff(offspring.objectives, incumbent.weight, z) <=
           tchebycheff(incumbent.objectives, incumbent.weight, z);
  return false;
}

int try_replace(const Genome& offspring, const Evaluation& eval, std::vector<std::size_t> range,
                int max_replacements, std::vector<Subproblem>& population,
                const ReferencePoint& z, Rng& rng) {
  int count = 0;
  while (count < max_replacements && !range.empty()) {
    const std::size_t pos = rng.index(range.size());
    const std::size_t k = range[pos];
    range[pos] = range.back();
    range.pop_back();
    Subproblem& incumbent = population.at(k);
    if (!replaces(eval, incumbent, z)) continue;
    incumbent.current = offspring;
    incumbent.objectives = eval.objectives;
    incumbent.vio = eval.vio;
    ++count;
  }
  return count;
}

nlohmann::ordered_json trace_record_json(const GenerationRecord& rec) {
  nlohmann::ordered_json j;
  j["gen"] = rec.gen;
  j["best_f1"] = rec.best_f1;
  j["best_f2"] = rec.best_f2;
  j["z"] = {rec.z.f1, rec.z.f2};
  j["queries"] = rec.queries;
  j["archive_size"] = rec.archive_size;
  return j;
}

Moead::Moead(MoeadConfig config, BoxBounds box, Evaluator& evaluator)
    : config_(std::move(config)), box_(std::move(box)), evaluator_(evaluator), rng_(config_.seed) {
  config_.validate();
  if (box_.size() == 0 || box_.lower.size() != box_.upper.size())
    throw InvalidArgument("gene bounds are empty or inconsistent");
  for (std::size_t k = 0; k < box_.size(); ++k)
    if (!(box_.lower[k] <= box_.upper[k])) throw InvalidArgument("gene lower bound above upper bound");
  mutation_probability_ = config_.mutation_probability < 0.0
                              ? 1.0 / static_cast<double>(box_.size())
                              : config_.mutation_probability;
}

void Moead::setup_structure() {
  const auto weights = generate_weights(config_.population_size);
  neighborhoods_ = build_neighborhoods(weights, config_.neighborhood_size);
  population_.assign(weights.size(), Subproblem{});
  for (std::size_t i = 0; i < weights.size(); ++i) {
    population_[i].index = i;
    population_[i].weight = weights[i];
    population_[i].neighbors = neighborhoods_[i];
  }
}

long long Moead::remaining_budget() const {
  if (config_.query_budget == 0) return -1;
  return std::max(0LL, config_.query_budget - evaluations_);
}

bool Moead::done() const {
  if (!initialized_) return false;
  return generation_ >= config_.generations || budget_hit_ || remaining_budget() == 0;
}

std::vector<Evaluation> Moead::evaluate_all(std::span<const Genome> batch) {
  std::vector<Evaluation> out;
  try {
    if (config_.evaluation == EvaluationMode::kBatch) {
      out = evaluator_.evaluate_batch(batch);
      if (out.size() != batch.size())
        throw Error("evaluator returned " + std::to_string(out.size()) + " results for " +
                    std::to_string(batch.size()) + " candidates");
    } else {
      out.reserve(batch.size());
      for (const auto& g : batch) out.push_back(evaluator_.evaluate(g));
    }
  } catch (const EvaluationError&) {
    throw;
  } catch (const std::exception& e) {
    const std::size_t at = config_.evaluation == EvaluationMode::kBatch
                               ? 0
                               : std::min(out.size(), batch.size() - 1);
    throw EvaluationError(std::string("evaluation failed: ") + e.what(), batch[at]);
  }
  for (std::size_t k = 0; k < out.size(); ++k) {
    const auto& e = out[k];
    if (!std::isfinite(e.objectives.f1) || !std::isfinite(e.objectives.f2) ||
        !std::isfinite(e.vio) || e.vio < 0.0)
      throw EvaluationError("evaluator returned a non-finite or negative result", batch[k]);
  }
  evaluations_ += static_cast<long long>(out.size());
  return out;
}

void Moead::absorb(const Genome& genes, const Evaluation& eval) {
  z_ = update_reference(z_, eval.objectives);
  if (eval.vio == 0.0) archive_.insert(eval.objectives, genes);
}

GenerationRecord Moead::record(int offspring, int max_repl) const {
  GenerationRecord rec;
  rec.gen = generation_;
  rec.best_f1 = population_.front().objectives.f1;
  rec.best_f2 = population_.front().objectives.f2;
  for (const auto& s : population_) {
    rec.best_f1 = std::min(rec.best_f1, s.objectives.f1);
    rec.best_f2 = std::min(rec.best_f2, s.objectives.f2);
  }
  rec.z = z_;
  rec.queries = evaluations_;
  rec.archive_size = archive_.size();
  rec.max_replacements = max_repl;
  rec.offspring = offspring;
  return rec;
}

void Moead::initialize() {
  setup_structure();
  rng_ = Rng(config_.seed);
  archive_.clear();
  trace_.clear();
  evaluations_ = 0;
  generation_ = 0;
  budget_hit_ = false;

  std::vector<Genome> initial;
  initial.reserve(population_.size());
  for (std::size_t i = 0; i < population_.size(); ++i) {
    if (initializer_) {
      initial.push_back(initializer_(rng_));
      if (initial.back().size() != box_.size())
        throw DimensionError("initializer produced a genome of the wrong length");
    } else {
      Genome g(box_.size());
      for (std::size_t k = 0; k < g.size(); ++k) g[k] = rng_.uniform(box_.lower[k], box_.upper[k]);
      initial.push_back(std::move(g));
    }
  }
  const auto evals = evaluate_all(initial);
  z_ = evals.front().objectives;
  for (std::size_t i = 0; i < population_.size(); ++i) {
    population_[i].current = std::move(initial[i]);
    population_[i].objectives = evals[i].objectives;
    population_[i].vio = evals[i].vio;
    absorb(population_[i].current, evals[i]);
  }
  initialized_ = true;
  trace_.push_back(record(0, 0));
  if (observer_) observer_(*this, trace_.back());
}

std::vector<std::size_t> Moead::selection_order() {
  const std::size_t n = population_.size();
  std::vector<std::size_t> order;
  order.reserve(n);
  if (config_.selection == SelectionMode::kSweep) {
    for (std::size_t i = 0; i < n; ++i) order.push_back(i);
    return order;
  }
  std::size_t best1 = 0, best2 = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (population_[i].objectives.f1 < population_[best1].objectives.f1) best1 = i;
    if (population_[i].objectives.f2 < population_[best2].objectives.f2) best2 = i;
  }
  order.push_back(best1);
  order.push_back(best2);
  const auto score = [&](std::size_t i) {
    return tchebycheff(population_[i].objectives, population_[i].weight, z_);
  };
  while (order.size() < n) {
    const std::size_t a = rng_.index(n);
    const std::size_t b = rng_.index(n);
    const double ga = score(a), gb = score(b);
    order.push_back(ga < gb || (ga == gb && a <= b) ? a : b);
  }
  return order;
}

Genome Moead::make_offspring(std::size_t i, const std::vector<std::size_t>& range) {
  std::vector<std::size_t> pool;
  for (std::size_t k : range)
    if (k != i) pool.push_back(k);
  if (pool.size() < 2) {
    pool.clear();
    for (std::size_t k = 0; k < population_.size(); ++k)
      if (k != i) pool.push_back(k);
  }
  if (pool.size() < 2) {
    pool.resize(population_.size());
    std::iota(pool.begin(), pool.end(), std::size_t{0});
  }
  const std::size_t p1 = rng_.index(pool.size());
  const std::size_t r1 = pool[p1];
  pool[p1] = pool.back();
  pool.pop_back();
  const std::size_t r2 = pool[rng_.index(pool.size())];
  Genome child = de_crossover(population_[i].current, population_[r1].current,
                              population_[r2].current, config_.scale_factor,
                              config_.crossover_rate, box_, rng_);
  polynomial_mutation(child, mutation_probability_, config_.distribution_index, box_, rng_);
  return child;
}

bool Moead::step() {
  if (!initialized_) initialize();
  if (done()) return false;
  const auto order = selection_order();
  int produced = 0;
  int max_repl = 0;
  const auto& nbrs = neighborhoods_;

  if (config_.evaluation == EvaluationMode::kSteadyState) {
    for (std::size_t i : order) {
      if (remaining_budget() == 0) {
        budget_hit_ = true;
        break;
      }
      auto range = select_mating_range(i, nbrs, population_.size(),
                                       config_.neighborhood_probability, rng_);
      Genome child = make_offspring(i, range);
      const Genome one[] = {child};
      const Evaluation eval = evaluate_all(one).front();
      absorb(child, eval);
      max_repl = std::max(max_repl, try_replace(child, eval, std::move(range),
                                                config_.max_replacements, population_, z_, rng_));
      ++produced;
    }
  } else {
    std::vector<std::vector<std::size_t>> ranges;
    std::vector<Genome> children;
    for (std::size_t i : order) {
      const long long left = remaining_budget();
      if (left >= 0 && static_cast<long long>(children.size()) >= left) {
        budget_hit_ = true;
        break;
      }
      ranges.push_back(select_mating_range(i, nbrs, population_.size(),
                                           config_.neighborhood_probability, rng_));
      children.push_back(make_offspring(i, ranges.back()));
    }
    if (!children.empty()) {
      const auto evals = evaluate_all(children);
      for (std::size_t c = 0; c < children.size(); ++c) {
        absorb(children[c], evals[c]);
        max_repl = std::max(max_repl, try_replace(children[c], evals[c], std::move(ranges[c]),
                                                  config_.max_replacements, population_, z_,
                                                  rng_));
      }
    }
    produced = static_cast<int>(children.size());
  }
  ++generation_;
  trace_.push_back(record(produced, max_repl));
  if (observer_) observer_(*this, trace_.back());
  return !done();
}

void Moead::run() {
  if (!initialized_) initialize();
  while (step()) {
  }
}

nlohmann::json Moead::checkpoint() const {
  nlohmann::json pop = nlohmann::json::array();
  for (const auto& s : population_)
    pop.push_back({{"genes", s.current}, {"f", {s.objectives.f1, s.objectives.f2}}, {"vio", s.vio}});
  nlohmann::json arch = nlohmann::json::array();
  for (const auto& e : archive_.entries())
    arch.push_back({{"genes", e.genes}, {"f", {e.objectives.f1, e.objectives.f2}}});
  return {{"generation", generation_}, {"evaluations", evaluations_},
          {"budget_hit", budget_hit_},  {"rng", rng_.state()},
          {"z", {z_.f1, z_.f2}},        {"population", pop},
          {"archive", arch}};
}

void Moead::restore(const nlohmann::json& cp) {
  setup_structure();
  const auto& pop = cp.at("population");
  if (pop.size() != population_.size())
    throw InvalidArgument("checkpoint population size does not match the config");
  for (std::size_t i = 0; i < population_.size(); ++i) {
    auto& s = population_[i];
    s.current = pop[i].at("genes").get<Genome>();
    if (s.current.size() != box_.size())
      throw DimensionError("checkpoint genome length does not match the bounds");
    s.objectives = {pop[i].at("f")[0].get<double>(), pop[i].at("f")[1].get<double>()};
    s.vio = pop[i].at("vio").get<double>();
  }
  archive_.clear();
  for (const auto& e : cp.at("archive"))
    archive_.insert({e.at("f")[0].get<double>(), e.at("f")[1].get<double>()},
                    e.at("genes").get<Genome>());
  z_ = {cp.at("z")[0].get<double>(), cp.at("z")[1].get<double>()};
  rng_.restore(cp.at("rng").get<std::string>());
  generation_ = cp.at("generation").get<int>();
  evaluations_ = cp.at("evaluations").get<long long>();
  budget_hit_ = cp.at("budget_hit").get<bool>();
  trace_.clear();
  initialized_ = true;
}

}  // namespace evodepth
