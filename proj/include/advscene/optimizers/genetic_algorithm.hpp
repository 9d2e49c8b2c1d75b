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

#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <span>

#include "advscene/optimizers/optimizer.hpp"
#include "advscene/rng.hpp"

namespace advscene
{

struct GAConfig
{
  int population{8};
  int elite{1};
  double mutation_prob{0.1};
  /// Half-width of the uniform mutation noise, in normalized units.
  double mutation_scale{0.3};
  double selection_temp{0.1};

  void validate() const;
};

struct Individual
{
  std::vector<double> x;
  double fitness{0.0};  // -l_adv
  std::size_t q_index{0};
};

/// Parent-selection distribution softmax(fitness / temp).
std::vector<double> selection_probabilities(std::span<const Individual> population, double temp);

/// Each coordinate taken from `a` or `b` with equal probability.
std::vector<double> uniform_crossover(std::span<const double> a, std::span<const double> b, Rng & rng);

/// Per-coordinate uniform noise in +-mutation_scale with probability
/// mutation_prob, then clamped to [-1, 1].
void mutate(std::vector<double> & x, const GAConfig & config, Rng & rng);

/// Indices of the `count` fittest individuals, best first, ties to the lower index.
std::vector<std::size_t> elite_indices(std::span<const Individual> population, std::size_t count);

/// Next generation: the elite (unchanged, best first) followed by
/// population - elite children from selection, crossover and mutation.
/// Children are clamped but not projected.
std::vector<std::vector<double>> ga_step(std::span<const Individual> population, const GAConfig & config, Rng & rng);

/// Nearest element of Q (l2, ties to the lowest index) among those not yet
/// queried; falls back to plain projection once Q is exhausted.
std::size_t project_unqueried(std::span<const double> candidate, const FeasibleSet & q, const History & history);

/// Generational GA with elitism over the feasible set.
///
/// The first generation is seeded with the history (so the zero anchor is an
/// individual) topped up with random unqueried elements. Each child is
/// projected onto the unqueried part of Q before it is proposed, so a
/// converged population keeps probing the neighbourhood of its elite instead
/// of re-proposing evaluated elements. observe() stores the evaluated element
/// as the individual.
class GeneticAlgorithm final : public BlackBoxOptimizer
{
public:
  GeneticAlgorithm(GAConfig config, std::uint64_t seed);

  std::string name() const override { return "ga"; }
  std::vector<double> propose(const History & history, const FeasibleSet & q) override;
  void observe(std::size_t q_index, double loss) override;

  /// Best fitness of every completed generation, in order.
  const std::vector<double> & generation_best() const { return generation_best_; }
  const std::vector<Individual> & population() const { return population_; }

private:
  void start_next_generation();

  GAConfig config_;
  Rng rng_;
  bool initialized_{false};
  const FeasibleSet * q_{nullptr};
  std::vector<Individual> population_;
  std::vector<Individual> next_;
  std::size_t expected_{0};
  std::deque<std::vector<double>> queue_;
  std::optional<std::vector<double>> in_flight_;
  std::vector<double> generation_best_;
};

}  // namespace advscene
