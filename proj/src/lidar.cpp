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

#include "advscene/lidar.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "advscene/errors.hpp"

namespace advscene
{

std::size_t PointCloud::count_agent(int id) const
{
  return static_cast<std::size_t>(std::count_if(points.begin(), points.end(), [id](const LidarPoint & p) {
    return p.kind == HitKind::kAgent && p.hit_id == id;
  }));
}

std::size_t PointCloud::count_obstacle(int index) const
{
  return static_cast<std::size_t>(std::count_if(points.begin(), points.end(), [index](const LidarPoint & p) {
    return p.kind == HitKind::kObstacle && p.hit_id == index;
  }));
}

namespace
{
struct Target
{
  OrientedBox box;
  HitKind kind;
  int id;
  double radius;
};
}  // namespace

PointCloud scan_with_sensor(const Scene & scene, int viewpoint, const SensorSpec & sensor)
{
  const Agent & source = scene.agent(viewpoint);
  const Vec2 origin = source.pose.position();
  const double range = sensor.range_m;

  // entities that can possibly be hit within range
  std::vector<Target> targets;
  const auto consider = [&](const OrientedBox & box, HitKind kind, int id) {
    const double radius = 0.5 * std::hypot(box.length, box.width);
    if (norm(box.center.position() - origin) - radius <= range) {
      targets.push_back({box, kind, id, radius});
    }
  };
  for (const auto & a : scene.agents) {
    if (a.id != viewpoint) {
      consider(a.footprint(), HitKind::kAgent, a.id);
    }
  }
  for (std::size_t i = 0; i < scene.obstacles.size(); ++i) {
    consider(scene.obstacles[i], HitKind::kObstacle, static_cast<int>(i));
  }

  PointCloud cloud;
  cloud.viewpoint = viewpoint;
  const double step = 2.0 * std::numbers::pi / static_cast<double>(sensor.beams);
  for (int beam = 0; beam < sensor.beams; ++beam) {
    const Ray ray = Ray::from_angle(origin, source.pose.yaw + step * static_cast<double>(beam));
    double best = std::numeric_limits<double>::infinity();
    const Target * best_target = nullptr;
    Vec2 best_point;
    for (const auto & t : targets) {
      // bounding-circle rejection
      const Vec2 to_center = t.box.center.position() - origin;
      const double along = dot(to_center, ray.direction);
      if (along < -t.radius || std::abs(cross(ray.direction, to_center)) > t.radius) {
        continue;
      }
      const auto hit = ray_box_hit(ray, t.box, range);
      if (hit && hit->distance < best) {
        best = hit->distance;
        best_target = &t;
        best_point = hit->point;
      }
    }
    if (best_target != nullptr) {
      cloud.points.push_back({best_point, viewpoint, best_target->kind, best_target->id});
    }
  }
  return cloud;
}

PointCloud scan(const Scene & scene, int viewpoint)
{
  const Agent & source = scene.agent(viewpoint);
  if (!source.sensor) {
    throw NoSensor("agent " + std::to_string(viewpoint) + " has no sensor");
  }
  return scan_with_sensor(scene, viewpoint, *source.sensor);
}

double avg_points_per_box(const Scene & scene, std::span<const int> viewpoints)
{
  std::vector<PointCloud> clouds;
  for (const int v : viewpoints) {
    clouds.push_back(scan(scene, v));
  }
  std::size_t total = 0;
  std::size_t boxes = 0;
  for (const auto & a : scene.agents) {
    if (std::find(viewpoints.begin(), viewpoints.end(), a.id) != viewpoints.end()) {
      continue;
    }
    ++boxes;
    for (const auto & c : clouds) {
      total += c.count_agent(a.id);
    }
  }
  return boxes == 0 ? 0.0 : static_cast<double>(total) / static_cast<double>(boxes);
}

std::string point_cloud_csv(std::span<const PointCloud> clouds)
{
  std::ostringstream out;
  out.precision(17);
  out << "viewpoint,x,y,hit_kind,hit_id\n";
  for (const auto & c : clouds) {
    for (const auto & p : c.points) {
      out << c.viewpoint << ',' << p.position.x << ',' << p.position.y << ','
          << (p.kind == HitKind::kAgent ? "agent" : "obstacle") << ',' << p.hit_id << '\n';
    }
  }
  return out.str();
}

}  // namespace advscene
