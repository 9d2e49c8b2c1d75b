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
#include <vector>

#include "advscene/scene.hpp"

namespace advscene
{

enum class HitKind { kAgent, kObstacle };

struct LidarPoint
{
  Vec2 position;
  int source_agent{0};
  HitKind kind{HitKind::kAgent};
  /// Agent id for kAgent hits, obstacle index for kObstacle hits.
  int hit_id{0};

  friend bool operator==(const LidarPoint &, const LidarPoint &) = default;
};

struct PointCloud
{
  int viewpoint{0};
  std::vector<LidarPoint> points;

  std::size_t count_agent(int id) const;
  std::size_t count_obstacle(int index) const;
};

/// Noise-free planar scan from the viewpoint agent's sensor. Beam i points at
/// yaw + 2*pi*i/beams; each beam returns the nearest footprint or obstacle
/// crossing within range, the viewpoint's own footprint excluded.
/// Throws NoSensor if the viewpoint has no sensor.
PointCloud scan(const Scene & scene, int viewpoint);

/// Same as scan() with an explicit sensor, for agents that are granted one
/// temporarily.
PointCloud scan_with_sensor(const Scene & scene, int viewpoint, const SensorSpec & sensor);

/// Mean, over agents that are not viewpoints, of the points tagged to that
/// agent summed across all viewpoints. Zero when there are no such agents.
double avg_points_per_box(const Scene & scene, std::span<const int> viewpoints);

/// Debug dump: header "viewpoint,x,y,hit_kind,hit_id" then one row per point.
std::string point_cloud_csv(std::span<const PointCloud> clouds);

}  // namespace advscene
