// Copyright 2026 The advscene Authors
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

#include "advscene/optimizers/genetic_algorithm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "advscene/errors.hpp"
#include "advscene/optimizers/random_search.hpp"

namespace advscene
{

void GAConfig::validate() const
{
  if (population < 2 || elite < 1 || elite >= population) {
    throw ConfigError("GA needs 1 <= elite < population");
  }
  if (!(mutation_prob >= 0.0 && mutation_prob <= 1.0)) {
    throw ConfigError("GA mutation_prob must lie in [0, 1]");
  }
  if (!(mutation_scale >= 0.0)) {
    throw ConfigError("GA mutation_scale must be >= 0");
  }
  if (!(selection_temp > 0.0)) {
    throw ConfigError("GA selection_temp must be > 0");
  }
}

std::vector<double> selection_probabilities(std::span<const Individual> population, double temp)
{
  std::vector<double> p(population.size());
  double max_f = -INFINITY;
  for (const auto & ind : population) {
    max_f = std::max(max_f, ind.fitness);
  }
  double z = 0.0;
  for (std::size_t i = 0; i < population.size(); ++i) {
    p[i] = std::exp((population[i].fitness - max_f) / temp);
    z += p[i];
  }
  for (auto & v : p) {
    v /= z;
  }
  return p;
}

std::vector<double> uniform_crossover(std::span<const double> a, std::span<const double> b, Rng & rng)
{
  std::vector<double> child(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    child[i] = rng.bernoulli(0.5) ? a[i] : b[i];
  }
  return child;
}

void mutate(std::vector<double> & x, const GAConfig & config, Rng & rng)
{
  for (auto & v : x) {
    if (rng.bernoulli(config.mutation_prob)) {
      v += rng.uniform(-config.mutation_scale, config.mutation_scale);
    }
    v = std::clamp(v, -1.0, 1.0);
  }
}

std::vector<std::size_t> elite_indices(std::span<const Individual> population, std::size_t count)
{
  std::vector<std::size_t> order(population.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return population[a].fitness > population[b].fitness;
  });
  order.resize(std::min(count, order.size()));
  return order;
}

namespace
{
std::size_t sample_index(std::span<const double> p, Rng & rng)
{
  const double u = rng.uniform();
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    acc += p[i];
    if (u < acc) {
      return i;
    }
  }
  return p.size() - 1;
}
}  // namespace

std::vector<std::vector<double>> ga_step(std::span<const Individual> population, const GAConfig & config, Rng & rng)
{
  std::vector<std::vector<double>> next;
  for (const std::size_t i : elite_indices(population, static_cast<std::size_t>(config.elite))) {
    next.push_back(population[i].x);
  }
  const auto probs = selection_probabilities(population, config.selection_temp);
  while (static_cast<int>(next.size()) < config.population) {
    const auto & a = population[sample_index(probs, rng)].x;
    const auto & b = population[sample_index(probs, rng)].x;
    auto child = uniform_crossover(a, b, rng);
    mutate(child, config, rng);
    next.push_back(std::move(child));
  }
  return next;
}

std::size_t project_unqueried(std::span<const double> candidate, const FeasibleSet & q, const History & history)
{
  const auto queried = queried_mask(history, q.size());
  std::size_t best = q.size();
  double best_d = INFINITY;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (queried[i]) {
      continue;
    }
    double d = 0.0;
    for (std::size_t c = 0; c < candidate.size(); ++c) {
      const double diff = candidate[c] - q.elements[i][c];
      d += diff * diff;
    }
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best == q.size() ? project(candidate, q) : best;
}

GeneticAlgorithm::GeneticAlgorithm(GAConfig config, std::uint64_t seed) : config_(config), rng_(seed)
{
  config_.validate();
}

void GeneticAlgorithm::start_next_generation()
{
  const auto best = std::max_element(population_.begin(), population_.end(), [](const auto & a, const auto & b) {
    return a.fitness < b.fitness;
  });
  generation_best_.push_back(best->fitness);

  auto members = ga_step(population_, config_, rng_);
  next_.clear();
  for (const std::size_t i : elite_indices(population_, static_cast<std::size_t>(config_.elite))) {
    next_.push_back(population_[i]);
  }
  queue_.assign(members.begin() + static_cast<std::ptrdiff_t>(next_.size()), members.end());
  expected_ = static_cast<std::size_t>(config_.population);
}

std::vector<double> GeneticAlgorithm::propose(const History & history, const FeasibleSet & q)
{
  q_ = &q;
  if (!initialized_) {
    initialized_ = true;
    expected_ = static_cast<std::size_t>(config_.population);
    for (const auto & obs : history) {
      if (next_.size() >= expected_) {
        break;
      }
      next_.push_back({obs.x, -obs.loss, obs.q_index});
    }
    History pending = history;
    for (std::size_t i = next_.size(); i < expected_; ++i) {
      const std::size_t idx = draw_unqueried(pending, q, rng_);
      pending.push_back({idx, q.elements[idx], 0.0});
      queue_.push_back(q.elements[idx]);
    }
    if (queue_.empty()) {
      population_ = next_;
      start_next_generation();
    }
  }
  if (queue_.empty()) {
    // waiting on nothing; happens only if observe() was skipped by the caller
    return q.elements[draw_unqueried(history, q, rng_)];
  }
  in_flight_ = q.elements[project_unqueried(queue_.front(), q, history)];
  queue_.pop_front();
  return *in_flight_;
}

void GeneticAlgorithm::observe(std::size_t q_index, double loss)
{
  if (!in_flight_ || q_ == nullptr) {
    return;
  }
  in_flight_.reset();
  next_.push_back({q_->elements[q_index], -loss, q_index});
  if (next_.size() >= expected_ && queue_.empty()) {
    population_ = next_;
    start_next_generation();
  }
}

}  // namespace advscene
