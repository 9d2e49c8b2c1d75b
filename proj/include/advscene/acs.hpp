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
#include <span>
#include <vector>

#include "advscene/evaluation.hpp"
#include "advscene/rng.hpp"
#include "advscene/scene.hpp"

namespace advscene
{

struct ACSConfig
{
  int k{3};
  int k0{3};
  double tau{0.03};

  void validate() const;
};

enum class CollaboratorStrategy {
  kAttention,  // sample by weakness of pooled attention importance
  kRandom,     // uniform over combinations
};

/// Every size-k subset of the intelligent agents that contains ego, in
/// lexicographic order of sorted member ids.
std::vector<CollaborationChoice> combinations_with_ego(const Scene & scene, int k);

/// softmax(weakness / tau), computed with the maximum subtracted.
std::vector<double> weakness_distribution(std::span<const double> weakness, double tau);

/// Sequential sampling without replacement: draw one index by `probabilities`,
/// drop it, renormalize, repeat. Returns min(count, n) distinct indices in draw order.
std::vector<std::size_t> sample_without_replacement(std::span<const double> probabilities, std::size_t count, Rng & rng);

/// Ego plus its k - 1 nearest intelligent agents (ties to lower id); the
/// collaboration a scene is observed under before any search.
CollaborationChoice normal_collaboration(const Scene & scene, int k);

struct CombinationScore
{
  CollaborationChoice collab;
  double weakness{0.0};
  double probability{0.0};
  EvalReport report;
};

struct AcsResult
{
  CollaborationChoice collab;
  EvalReport report;
  /// Sampled combinations in draw order with their losses.
  std::vector<CombinationScore> sampled;
  AgentImportance importance;
  /// Sampling distribution over combinations_with_ego(), same order.
  std::vector<double> probabilities;
  int queries{0};
};

/// Adversarial collaborator search. Throws NotEnoughIntelligent when fewer
/// than k intelligent agents exist.
AcsResult acs(const Scene & scene, const ModelConfig & model, const ACSConfig & config, std::uint64_t seed,
              CollaboratorStrategy strategy = CollaboratorStrategy::kAttention);

}  // namespace advscene
