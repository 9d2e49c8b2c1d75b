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

#include "advscene/scene.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "advscene/errors.hpp"
#include "advscene/rng.hpp"

namespace advscene
{

const Agent * Scene::find(int id) const
{
  const auto it = std::find_if(agents.begin(), agents.end(), [id](const Agent & a) { return a.id == id; });
  return it == agents.end() ? nullptr : &*it;
}

const Agent & Scene::agent(int id) const
{
  const Agent * a = find(id);
  if (a == nullptr) {
    throw UnknownTarget("no agent with id " + std::to_string(id));
  }
  return *a;
}

std::vector<int> Scene::intelligent_ids() const
{
  std::vector<int> ids;
  for (const auto & a : agents) {
    if (a.intelligent) {
      ids.push_back(a.id);
    }
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

namespace
{
bool finite_pose(const Pose2 & p)
{
  return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.yaw);
}

bool inside_bounds(const MapBounds & bounds, const OrientedBox & box)
{
  for (const auto & c : corners(box)) {
    if (!bounds.contains(c)) {
      return false;
    }
  }
  return true;
}

void check_box(const OrientedBox & box, const std::string & what)
{
  if (!finite_pose(box.center) || !std::isfinite(box.length) || !std::isfinite(box.width)) {
    throw InvariantViolation(what + " has non-finite fields");
  }
  if (!(box.length > 0.0) || !(box.width > 0.0)) {
    throw InvariantViolation(what + " must have positive length and width");
  }
}
}  // namespace

void Scene::validate() const
{
  if (!(bounds.xmax > bounds.xmin) || !(bounds.ymax > bounds.ymin)) {
    throw InvariantViolation("map_bounds must have positive extent");
  }
  std::set<int> ids;
  for (const auto & a : agents) {
    const std::string what = "agent " + std::to_string(a.id);
    if (!ids.insert(a.id).second) {
      throw InvariantViolation("duplicate agent id " + std::to_string(a.id));
    }
    check_box(a.footprint(), what);
    if (a.intelligent && !a.sensor) {
      throw InvariantViolation(what + " is intelligent but has no sensor");
    }
    if (a.sensor) {
      if (!(a.sensor->range_m > 0.0) || !std::isfinite(a.sensor->range_m)) {
        throw InvariantViolation(what + " sensor range must be positive");
      }
      if (a.sensor->beams < 8) {
        throw InvariantViolation(what + " sensor needs at least 8 beams");
      }
    }
    if (!inside_bounds(bounds, a.footprint())) {
      throw InvariantViolation(what + " footprint leaves the map bounds");
    }
  }
  const Agent * e = find(ego_id);
  if (e == nullptr || !e->intelligent) {
    throw InvariantViolation("ego_id must refer to an intelligent agent");
  }
  for (std::size_t i = 0; i < obstacles.size(); ++i) {
    check_box(obstacles[i], "obstacle " + std::to_string(i));
  }

  std::vector<std::pair<std::string, OrientedBox>> boxes;
  for (const auto & a : agents) {
    boxes.emplace_back("agent " + std::to_string(a.id), a.footprint());
  }
  for (std::size_t i = 0; i < obstacles.size(); ++i) {
    boxes.emplace_back("obstacle " + std::to_string(i), obstacles[i]);
  }
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    for (std::size_t j = i + 1; j < boxes.size(); ++j) {
      if (obb_intersects(boxes[i].second, boxes[j].second)) {
        throw InvariantViolation(boxes[i].first + " intersects " + boxes[j].first);
      }
    }
  }
}

bool CollaborationChoice::contains(int id) const
{
  return std::binary_search(members.begin(), members.end(), id);
}

CollaborationChoice make_collaboration(std::vector<int> members)
{
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return CollaborationChoice{std::move(members)};
}

Perturbation Perturbation::negated() const
{
  Perturbation out;
  out.targets = targets;
  for (const auto & d : deltas) {
    out.deltas.push_back({-d.dx, -d.dy, -d.dtheta});
  }
  return out;
}

double canonical_yaw(double radians)
{
  double r = deg_to_rad(rad_to_deg(normalize_angle(radians)));
  if (r > std::numbers::pi) {
    r = deg_to_rad(rad_to_deg(r - 2.0 * std::numbers::pi));
  }
  return r;
}

Scene apply_perturbation(const Scene & scene, const Perturbation & perturbation)
{
  if (perturbation.targets.size() != perturbation.deltas.size()) {
    throw UnknownTarget("perturbation has mismatched target and delta counts");
  }
  Scene out = scene;
  for (std::size_t i = 0; i < perturbation.targets.size(); ++i) {
    const int id = perturbation.targets[i];
    auto it = std::find_if(out.agents.begin(), out.agents.end(), [id](const Agent & a) { return a.id == id; });
    if (it == out.agents.end()) {
      throw UnknownTarget("perturbation target " + std::to_string(id) + " is not an agent");
    }
    const PoseDelta & d = perturbation.deltas[i];
    if (d.dx == 0.0 && d.dy == 0.0 && d.dtheta == 0.0) {
      continue;
    }
    it->pose.x += d.dx;
    it->pose.y += d.dy;
    it->pose.yaw = canonical_yaw(it->pose.yaw + d.dtheta);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Procedural generation

namespace
{
constexpr int kMaxAttempts = 10000;

class Placer
{
public:
  Placer(const SceneGenConfig & config, int & attempts) : config_(config), attempts_(attempts)
  {
  }

  bool fits(const OrientedBox & box) const
  {
    const OrientedBox inflated{box.center, box.length + config_.clearance, box.width + config_.clearance};
    if (!inside_bounds(config_.bounds, box)) {
      return false;
    }
    return std::none_of(placed_.begin(), placed_.end(), [&](const OrientedBox & other) {
      return obb_intersects(inflated, other);
    });
  }

  /// Draws candidates from `sample` until one fits.
  template <typename Sampler>
  OrientedBox place(Sampler && sample)
  {
    while (true) {
      if (++attempts_ > kMaxAttempts) {
        throw GenerationFailed("scene generation exhausted " + std::to_string(kMaxAttempts) + " placement attempts");
      }
      OrientedBox box = sample();
      box.center.yaw = canonical_yaw(box.center.yaw);
      if (fits(box)) {
        placed_.push_back(box);
        return box;
      }
    }
  }

private:
  const SceneGenConfig & config_;
  int & attempts_;
  std::vector<OrientedBox> placed_;
};

double lane_center(const SceneGenConfig & c, int lane)
{
  return (static_cast<double>(lane) - 0.5 * static_cast<double>(c.lanes - 1)) * c.lane_width;
}
}  // namespace

Scene generate_scene(const SceneGenConfig & config, std::uint64_t seed)
{
  if (config.n_agents < 1 || config.n_agents > 40) {
    throw GenerationFailed("agent count must lie in [1, 40]");
  }
  if (config.n_intelligent < 1 || config.n_intelligent > config.n_agents) {
    throw GenerationFailed("intelligent count must lie in [1, n_agents]");
  }
  if (config.n_infrastructure < 0 || config.n_infrastructure > config.n_intelligent - 1) {
    throw GenerationFailed("infrastructure units must be non-ego intelligent agents");
  }
  if (config.bounds.xmax - config.bounds.xmin < 20.0 || config.bounds.ymax - config.bounds.ymin < 20.0) {
    throw GenerationFailed("map bounds must be at least 20 x 20 m");
  }
  if (config.lanes < 1) {
    throw GenerationFailed("corridor needs at least one lane");
  }

  Rng rng(seed);
  int attempts = 0;
  Placer placer(config, attempts);
  const MapBounds & b = config.bounds;
  const double cx = 0.5 * (b.xmin + b.xmax);
  const double cy = 0.5 * (b.ymin + b.ymax);
  const double road_half = 0.5 * config.lanes * config.lane_width;
  const double jitter = deg_to_rad(5.0);

  const auto vehicle_sampler = [&](double x_lo, double x_hi) {
    return [&, x_lo, x_hi]() {
      OrientedBox box{{}, config.vehicle_length, config.vehicle_width};
      if (config.layout == Layout::kCorridor) {
        const int lane = static_cast<int>(rng.uniform_index(static_cast<std::size_t>(config.lanes)));
        const double y = lane_center(config, lane);
        const double heading = y < 0.0 ? 0.0 : std::numbers::pi;
        box.center = {rng.uniform(x_lo, x_hi), cy + y + rng.uniform(-0.4, 0.4), heading + rng.uniform(-jitter, jitter)};
      } else {
        const double span_y = 0.5 * (x_hi - x_lo) * (b.ymax - b.ymin) / (b.xmax - b.xmin);
        box.center = {rng.uniform(x_lo, x_hi), rng.uniform(cy - span_y, cy + span_y),
                      rng.uniform(-std::numbers::pi, std::numbers::pi)};
      }
      return box;
    };
  };

  Scene scene;
  scene.seed = seed;
  scene.bounds = b;
  scene.ego_id = 0;

  SensorSpec vehicle_sensor = config.sensor;
  vehicle_sensor.mount = SensorMount::kVehicle;
  SensorSpec rsu_sensor = config.sensor;
  rsu_sensor.mount = SensorMount::kInfrastructure;

  const double margin = 3.0;
  {
    Agent ego;
    ego.id = 0;
    ego.pose = placer.place(vehicle_sampler(cx - 5.0, cx + 5.0)).center;
    ego.length = config.vehicle_length;
    ego.width = config.vehicle_width;
    ego.intelligent = true;
    ego.sensor = vehicle_sensor;
    scene.agents.push_back(ego);
  }

  int next_id = 1;
  for (int i = 0; i < config.n_infrastructure; ++i) {
    Agent rsu;
    rsu.id = next_id++;
    rsu.length = 1.0;
    rsu.width = 1.0;
    rsu.intelligent = true;
    rsu.infrastructure = true;
    rsu.sensor = rsu_sensor;
    rsu.pose = placer.place([&]() {
      const double side = rng.bernoulli(0.5) ? 1.0 : -1.0;
      const double y = config.layout == Layout::kCorridor ? cy + side * (road_half + 1.5) : rng.uniform(b.ymin + margin, b.ymax - margin);
      return OrientedBox{{rng.uniform(b.xmin + margin, b.xmax - margin), y, 0.0}, 1.0, 1.0};
    }).center;
    scene.agents.push_back(rsu);
  }

  const int n_vehicles = config.n_agents - 1 - config.n_infrastructure;
  std::vector<int> vehicle_ids;
  for (int i = 0; i < n_vehicles; ++i) {
    Agent v;
    v.id = next_id++;
    v.length = config.vehicle_length;
    v.width = config.vehicle_width;
    v.pose = placer.place(vehicle_sampler(b.xmin + margin, b.xmax - margin)).center;
    vehicle_ids.push_back(v.id);
    scene.agents.push_back(v);
  }

  // intelligent vehicles: partial Fisher-Yates over the vehicle ids
  const int n_smart = config.n_intelligent - 1 - config.n_infrastructure;
  if (n_smart > static_cast<int>(vehicle_ids.size())) {
    throw GenerationFailed("not enough vehicles for the requested intelligent count");
  }
  for (int i = 0; i < n_smart; ++i) {
    const std::size_t j = static_cast<std::size_t>(i) + rng.uniform_index(vehicle_ids.size() - static_cast<std::size_t>(i));
    std::swap(vehicle_ids[static_cast<std::size_t>(i)], vehicle_ids[j]);
  }
  std::vector<int> smart(vehicle_ids.begin(), vehicle_ids.begin() + n_smart);
  std::sort(smart.begin(), smart.end());
  for (auto & a : scene.agents) {
    if (std::binary_search(smart.begin(), smart.end(), a.id)) {
      a.intelligent = true;
      a.sensor = vehicle_sensor;
    }
  }
  if (config.weak_sensor_range) {
    std::vector<int> candidates;
    for (const auto & a : scene.agents) {
      if (a.intelligent && a.id != scene.ego_id && !a.infrastructure) {
        candidates.push_back(a.id);
      }
    }
    if (candidates.empty()) {
      throw GenerationFailed("weak sensor requested but no non-ego intelligent vehicle exists");
    }
    const int weak = candidates[rng.uniform_index(candidates.size())];
    for (auto & a : scene.agents) {
      if (a.id == weak) {
        a.sensor->range_m = *config.weak_sensor_range;
      }
    }
  }

  for (int i = 0; i < config.n_obstacles; ++i) {
    scene.obstacles.push_back(placer.place([&]() {
      const double length = rng.uniform(4.0, 12.0);
      const double width = rng.uniform(2.0, 5.0);
      if (config.layout == Layout::kCorridor) {
        const double side = rng.bernoulli(0.5) ? 1.0 : -1.0;
        const double y = cy + side * (road_half + 0.8 + 0.5 * width + rng.uniform(0.0, 4.0));
        return OrientedBox{{rng.uniform(b.xmin + 8.0, b.xmax - 8.0), y, 0.0}, length, width};
      }
      return OrientedBox{
        {rng.uniform(b.xmin + 8.0, b.xmax - 8.0), rng.uniform(b.ymin + 8.0, b.ymax - 8.0),
         rng.uniform(-std::numbers::pi, std::numbers::pi)},
        length, width};
    }));
  }

  scene.validate();
  return scene;
}

}  // namespace advscene
