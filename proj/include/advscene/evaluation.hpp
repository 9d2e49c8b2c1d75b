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

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "advscene/perception.hpp"
#include "advscene/scene.hpp"

namespace advscene
{

/// IoU threshold -> weight of AP at that threshold in the adversarial loss.
struct LossWeights
{
  std::vector<std::pair<double, double>> entries;

  /// {0.3: 1.0, 0.5: 0.8, 0.7: 0.5}
  static LossWeights defaults();
  /// Throws ConfigError unless thresholds are strictly increasing in (0, 1)
  /// and weights are positive.
  void validate() const;
};

struct EvalReport
{
  /// (threshold, AP) in threshold order.
  std::vector<std::pair<double, double>> ap;
  double l_adv{0.0};
  int n_gt{0};
  int n_det{0};

  /// AP at a threshold present in the report; throws std::out_of_range otherwise.
  double ap_at(double threshold) const;
};

/// JSON {"ap": {"0.3": ..}, "l_adv", "n_gt", "n_det"}.
std::string to_json(const EvalReport & report);

enum class MatchLabel { kTruePositive, kFalsePositive };

/// Ranking used by matching and AP: descending confidence, ties by input index.
std::vector<std::size_t> confidence_order(std::span<const Detection> detections);

/// Greedy matching. Labels are returned in input order.
std::vector<MatchLabel> match(std::span<const Detection> detections, std::span<const OrientedBox> gts, double threshold);

/// All-point AP from labels listed in rank order. Conventions: no GT and no
/// detections gives 1, no GT with detections gives 0.
double ap_from_ranked(std::span<const MatchLabel> ranked, std::size_t n_gt);

double average_precision(std::span<const Detection> detections, std::span<const OrientedBox> gts, double threshold);

EvalReport evaluate_detections(std::span<const Detection> detections, std::span<const OrientedBox> gts,
                               const LossWeights & weights);

/// Everything that defines the perception system under attack.
struct ModelConfig
{
  FusionMode mode{FusionMode::kEarlyFusion};
  DetectorParams params{};
  LossWeights weights{LossWeights::defaults()};
  /// Ground truth and detections are scored within +-range of ego in x and y.
  double eval_half_range{48.0};
};

bool in_eval_range(const Scene & scene, Vec2 point, double half_range);

/// Runs detection for the collaboration and scores it against in-range
/// ground truth.
EvalReport adversarial_loss(const Scene & scene, const CollaborationChoice & collab, const ModelConfig & model);

}  // namespace advscene
