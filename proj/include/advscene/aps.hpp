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
#include <vector>

#include "advscene/evaluation.hpp"
#include "advscene/feasible_set.hpp"
#include "advscene/occlusion.hpp"
#include "advscene/optimizers/optimizer.hpp"

namespace advscene
{

struct ApsConfig
{
  int budget{50};
  int m_targets{3};
  int n_q{1000};
  SearchBounds bounds{};
  TargetOptions targets{};

  void validate() const;
};

struct TraceRecord
{
  int iteration{0};
  std::size_t q_index{0};
  Perturbation delta;
  double l_adv{0.0};
  double best_so_far{0.0};
  double elapsed_ms{0.0};
};

struct ApsResult
{
  std::vector<int> targets;
  std::size_t q_size{0};
  std::size_t best_index{0};
  Perturbation best;
  EvalReport best_report;
  std::vector<TraceRecord> trace;
  int queries_used{0};
  int cache_hits{0};
};

/// Adversarial perturbation search for a fixed collaboration.
///
/// Targets are the top-m occlusion-ranked agents, Q is built from `q_seed`,
/// and the zero element is evaluated first as the anchor. Every further
/// iteration asks the optimizer for a candidate, projects it onto Q and
/// evaluates the perturbed scene. Proposals landing on an already evaluated
/// element are answered from the cache and do not consume budget. The search
/// stops at the budget or once Q is exhausted.
ApsResult aps(const Scene & scene, const CollaborationChoice & collab, const ModelConfig & model,
              BlackBoxOptimizer & optimizer, const ApsConfig & config, std::uint64_t q_seed);

}  // namespace advscene
