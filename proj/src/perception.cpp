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

#include "advscene/perception.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "advscene/errors.hpp"
#include "advscene/hash.hpp"

namespace advscene
{

std::string_view to_string(FusionMode mode)
{
  switch (mode) {
    case FusionMode::kNoFusion:
      return "no-fusion";
    case FusionMode::kLateFusion:
      return "late";
    case FusionMode::kEarlyFusion:
      return "early";
    case FusionMode::kAttSurrogate:
      return "att";
  }
  return "unknown";
}

FusionMode parse_fusion_mode(std::string_view text)
{
  if (text == "no-fusion") return FusionMode::kNoFusion;
  if (text == "late") return FusionMode::kLateFusion;
  if (text == "early") return FusionMode::kEarlyFusion;
  if (text == "att") return FusionMode::kAttSurrogate;
  throw ConfigError("unknown model '" + std::string(text) + "' (expected no-fusion, late, early or att)");
}

void DetectorParams::validate() const
{
  if (n_min < 1) throw ConfigError("n_min must be >= 1");
  if (!(n_sat > 0.0)) throw ConfigError("n_sat must be > 0");
  if (!(eps_max >= 0.0)) throw ConfigError("eps_max must be >= 0");
  if (!(theta_max >= 0.0)) throw ConfigError("theta_max must be >= 0");
  if (!(nms_iou > 0.0 && nms_iou < 1.0)) throw ConfigError("nms_iou must lie in (0, 1)");
}

std::vector<int> ground_truth_ids(const Scene & scene, const CollaborationChoice & collab,
                                  const DetectorParams & params)
{
  std::vector<int> ids;
  for (const auto & a : scene.agents) {
    if (params.score_collaborators || !collab.contains(a.id)) {
      ids.push_back(a.id);
    }
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

namespace
{
/// Index of the footprint edge nearest to a boundary point:
/// 0 front, 1 left, 2 rear, 3 right.
int nearest_edge(const OrientedBox & box, Vec2 point)
{
  const Vec2 p = to_box_frame(box, point);
  const double hl = 0.5 * box.length;
  const double hw = 0.5 * box.width;
  const double d[4] = {std::abs(p.x - hl), std::abs(p.y - hw), std::abs(p.x + hl), std::abs(p.y + hw)};
  return static_cast<int>(std::min_element(d, d + 4) - d);
}
}  // namespace

std::vector<TargetEvidence> gather_evidence(const Scene & scene, std::span<const PointCloud> clouds,
                                            std::span<const int> targets)
{
  std::vector<TargetEvidence> out;
  out.reserve(targets.size());
  for (const int id : targets) {
    const OrientedBox box = scene.agent(id).footprint();
    TargetEvidence ev;
    ev.agent_id = id;
    bool edges[4] = {false, false, false, false};
    for (const auto & cloud : clouds) {
      for (const auto & p : cloud.points) {
        if (p.kind == HitKind::kAgent && p.hit_id == id) {
          ++ev.points;
          edges[nearest_edge(box, p.position)] = true;
        }
      }
    }
    ev.edge_coverage = 0.25 * static_cast<double>(std::count(edges, edges + 4, true));
    out.push_back(ev);
  }
  return out;
}

double detection_confidence(const DetectorParams & params, std::size_t points)
{
  return 1.0 - std::exp(-static_cast<double>(points) / params.n_sat);
}

double center_error(const DetectorParams & params, double confidence, double coverage)
{
  return params.eps_max * (1.0 - confidence) * (1.0 - 0.5 * coverage);
}

CorruptionDirection corruption_direction(std::uint64_t scene_seed, int agent_id)
{
  const std::uint64_t h = hash64({scene_seed, static_cast<std::uint64_t>(static_cast<std::int64_t>(agent_id))});
  CorruptionDirection dir;
  // 53 high bits scaled by 2^-53 keep phi in [0, 2*pi)
  dir.phi = 2.0 * std::numbers::pi * (static_cast<double>(h >> 11) * 0x1.0p-53);
  dir.yaw_sign = (h & 1U) ? 1.0 : -1.0;
  return dir;
}

std::vector<Detection> detect_from_clouds(const Scene & scene, std::span<const PointCloud> clouds,
                                          std::span<const int> targets, const DetectorParams & params)
{
  std::vector<Detection> dets;
  for (const auto & ev : gather_evidence(scene, clouds, targets)) {
    if (ev.points < static_cast<std::size_t>(params.n_min)) {
      continue;
    }
    const double conf = detection_confidence(params, ev.points);
    const double eps = center_error(params, conf, ev.edge_coverage);
    const CorruptionDirection dir = corruption_direction(scene.seed, ev.agent_id);
    OrientedBox box = scene.agent(ev.agent_id).footprint();
    box.center.x += eps * std::cos(dir.phi);
    box.center.y += eps * std::sin(dir.phi);
    box.center.yaw = normalize_angle(box.center.yaw + dir.yaw_sign * params.theta_max * (1.0 - conf));
    dets.push_back({box, conf});
  }

  if (params.fp_enabled) {
    for (std::size_t i = 0; i < scene.obstacles.size(); ++i) {
      std::size_t n = 0;
      Vec2 sum;
      for (const auto & cloud : clouds) {
        for (const auto & p : cloud.points) {
          if (p.kind == HitKind::kObstacle && p.hit_id == static_cast<int>(i)) {
            ++n;
            sum = sum + p.position;
          }
        }
      }
      if (n < static_cast<std::size_t>(params.n_min) || n == 0) {
        continue;
      }
      const double inv = 1.0 / static_cast<double>(n);
      const OrientedBox box{{sum.x * inv, sum.y * inv, scene.obstacles[i].center.yaw}, 4.4, 1.8};
      const double conf = params.fp_conf_scale * detection_confidence(params, n);
      if (conf > 0.0) {
        dets.push_back({box, std::min(conf, 1.0)});
      }
    }
  }
  return dets;
}

std::vector<Detection> non_max_suppression(std::vector<Detection> detections, double iou_threshold)
{
  std::vector<std::size_t> order(detections.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return detections[a].confidence > detections[b].confidence;
  });
  std::vector<Detection> kept;
  for (const std::size_t i : order) {
    const bool suppressed = std::any_of(kept.begin(), kept.end(), [&](const Detection & k) {
      return obb_iou(k.box, detections[i].box) >= iou_threshold;
    });
    if (!suppressed) {
      kept.push_back(detections[i]);
    }
  }
  return kept;
}

void validate_collaboration(const Scene & scene, const CollaborationChoice & collab)
{
  if (!collab.contains(scene.ego_id)) {
    throw EgoNotInCollab("collaboration does not include ego " + std::to_string(scene.ego_id));
  }
  for (const int id : collab.members) {
    const Agent & a = scene.agent(id);
    if (!a.intelligent || !a.sensor) {
      throw NonIntelligentMember("collaboration member " + std::to_string(id) + " is not intelligent");
    }
  }
}

std::vector<Detection> detect(const Scene & scene, const CollaborationChoice & collab, FusionMode mode,
                              const DetectorParams & params)
{
  validate_collaboration(scene, collab);
  const std::vector<int> targets = ground_truth_ids(scene, collab, params);

  switch (mode) {
    case FusionMode::kNoFusion: {
      const PointCloud ego = scan(scene, scene.ego_id);
      return detect_from_clouds(scene, std::span(&ego, 1), targets, params);
    }
    case FusionMode::kEarlyFusion:
    case FusionMode::kAttSurrogate: {
      std::vector<PointCloud> clouds;
      for (const int id : collab.members) {
        clouds.push_back(scan(scene, id));
      }
      return detect_from_clouds(scene, clouds, targets, params);
    }
    case FusionMode::kLateFusion: {
      std::vector<Detection> proposals;
      for (const int id : collab.members) {
        const PointCloud cloud = scan(scene, id);
        auto dets = detect_from_clouds(scene, std::span(&cloud, 1), targets, params);
        proposals.insert(proposals.end(), dets.begin(), dets.end());
      }
      return non_max_suppression(std::move(proposals), params.nms_iou);
    }
  }
  return {};
}

AttentionResult attention_importance(const Scene & scene, std::span<const int> candidates, const AttentionGrid & grid)
{
  std::vector<int> ids(candidates.begin(), candidates.end());
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  if (ids.empty()) {
    throw EmptyCandidates("attention needs at least one candidate");
  }
  if (grid.rows <= 0 || grid.cols <= 0 || !(grid.cell_size > 0.0)) {
    throw ConfigError("attention grid must have positive dimensions");
  }

  AttentionResult result;
  AttentionMap & map = result.map;
  map.rows = grid.rows;
  map.cols = grid.cols;
  map.cell_size = grid.cell_size;
  map.candidates = ids;
  const Vec2 ego = scene.ego().pose.position();
  map.origin = {ego.x - 0.5 * grid.cols * grid.cell_size, ego.y - 0.5 * grid.rows * grid.cell_size};

  const std::size_t n_cells = static_cast<std::size_t>(grid.rows) * static_cast<std::size_t>(grid.cols);
  const std::size_t n = ids.size();
  std::vector<double> counts(n_cells * n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const Agent & a = scene.agent(ids[j]);
    const PointCloud cloud = scan_with_sensor(scene, a.id, a.sensor.value_or(SensorSpec{}));
    for (const auto & p : cloud.points) {
      const double cx = (p.position.x - map.origin.x) / grid.cell_size;
      const double cy = (p.position.y - map.origin.y) / grid.cell_size;
      if (cx < 0.0 || cy < 0.0 || cx >= grid.cols || cy >= grid.rows) {
        continue;
      }
      const std::size_t cell = static_cast<std::size_t>(cy) * static_cast<std::size_t>(grid.cols) + static_cast<std::size_t>(cx);
      counts[cell * n + j] += 1.0;
    }
  }

  map.weights.assign(n_cells * n, 0.0);
  std::vector<double> pooled(n, 0.0);
  for (std::size_t cell = 0; cell < n_cells; ++cell) {
    double max_f = -INFINITY;
    for (std::size_t j = 0; j < n; ++j) {
      max_f = std::max(max_f, std::log1p(counts[cell * n + j]));
    }
    double z = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double e = std::exp(std::log1p(counts[cell * n + j]) - max_f);
      map.weights[cell * n + j] = e;
      z += e;
    }
    for (std::size_t j = 0; j < n; ++j) {
      map.weights[cell * n + j] /= z;
      pooled[j] += map.weights[cell * n + j];
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    result.importance[ids[j]] = pooled[j] / static_cast<double>(n_cells);
  }
  return result;
}

}  // namespace advscene
