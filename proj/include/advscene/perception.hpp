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

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "advscene/lidar.hpp"
#include "advscene/scene.hpp"

namespace advscene
{

struct Detection
{
  OrientedBox box;
  double confidence{1.0};

  friend bool operator==(const Detection &, const Detection &) = default;
};

enum class FusionMode { kNoFusion, kLateFusion, kEarlyFusion, kAttSurrogate };

/// CLI spelling: no-fusion, late, early, att.
std::string_view to_string(FusionMode mode);
FusionMode parse_fusion_mode(std::string_view text);

/// Surrogate detector parameters.
///
/// An agent v with n_v tagged points is detected iff n_v >= n_min, with
/// confidence 1 - exp(-n_v / n_sat). Its box is the ground-truth footprint
/// shifted by eps_max * (1 - conf) * (1 - 0.5 * coverage) along a direction
/// fixed per (scene seed, agent id), and turned by theta_max * (1 - conf).
struct DetectorParams
{
  int n_min{3};
  double n_sat{20.0};
  double eps_max{0.8};
  double theta_max{deg_to_rad(10.0)};
  double nms_iou{0.15};
  bool fp_enabled{true};
  double fp_conf_scale{0.3};
  /// Score collaborators as ground truth for the other members' sensors.
  bool score_collaborators{false};

  void validate() const;
};

/// Per-target statistics of the single or pooled detector.
struct TargetEvidence
{
  int agent_id{0};
  std::size_t points{0};
  /// Fraction of the four footprint edges with at least one hit.
  double edge_coverage{0.0};
};

/// Agents scored as ground truth for this collaboration.
std::vector<int> ground_truth_ids(const Scene & scene, const CollaborationChoice & collab,
                                  const DetectorParams & params);

/// Point count and edge coverage of every ground-truth agent in the pooled clouds.
std::vector<TargetEvidence> gather_evidence(const Scene & scene, std::span<const PointCloud> clouds,
                                            std::span<const int> targets);

/// Center error of a detection from its confidence and edge coverage.
double center_error(const DetectorParams & params, double confidence, double coverage);
double detection_confidence(const DetectorParams & params, std::size_t points);

/// Fixed corruption direction phi in [0, 2*pi) and yaw-error sign for an agent.
struct CorruptionDirection
{
  double phi{0.0};
  double yaw_sign{1.0};
};
CorruptionDirection corruption_direction(std::uint64_t scene_seed, int agent_id);

/// Single-view or pooled-view detector over already simulated clouds.
std::vector<Detection> detect_from_clouds(const Scene & scene, std::span<const PointCloud> clouds,
                                          std::span<const int> targets, const DetectorParams & params);

/// Greedy non-maximum suppression: descending confidence, suppressing
/// anything with IoU >= iou_threshold against a kept box.
std::vector<Detection> non_max_suppression(std::vector<Detection> detections, double iou_threshold);

/// Cooperative detection under a fusion strategy. Throws EgoNotInCollab or
/// NonIntelligentMember for invalid collaborations.
std::vector<Detection> detect(const Scene & scene, const CollaborationChoice & collab, FusionMode mode,
                              const DetectorParams & params);

void validate_collaboration(const Scene & scene, const CollaborationChoice & collab);

/// Ego-centred grid over which attention is computed.
struct AttentionGrid
{
  int rows{24};
  int cols{24};
  double cell_size{4.0};
};

/// Per-cell attention weights over candidates, row-major, candidate-minor.
struct AttentionMap
{
  int rows{0};
  int cols{0};
  double cell_size{0.0};
  Vec2 origin;  // lower-left corner of cell (0, 0)
  std::vector<int> candidates;
  std::vector<double> weights;

  double weight(int row, int col, std::size_t candidate) const
  {
    return weights[(static_cast<std::size_t>(row) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(col)) *
                     candidates.size() +
                   candidate];
  }
};

/// Pooled attention s_j per candidate agent.
using AgentImportance = std::map<int, double>;

struct AttentionResult
{
  AttentionMap map;
  AgentImportance importance;
};

/// Density-feature attention: per cell and candidate the feature is
/// log(1 + points from that candidate's scan in the cell); a softmax across
/// candidates gives the cell's attention, and the average over all cells is
/// the candidate's importance. Candidates without a sensor are granted the
/// default one. Throws EmptyCandidates.
AttentionResult attention_importance(const Scene & scene, std::span<const int> candidates,
                                     const AttentionGrid & grid = {});

}  // namespace advscene
