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
#include <optional>
#include <span>
#include <vector>

#include "advscene/geometry.hpp"

namespace advscene
{

enum class SensorMount { kVehicle, kInfrastructure };

/// Planar LiDAR. The mount is a label only; both mounts scan identically.
struct SensorSpec
{
  double range_m{60.0};
  int beams{720};
  SensorMount mount{SensorMount::kVehicle};

  friend bool operator==(const SensorSpec &, const SensorSpec &) = default;
};

struct Agent
{
  int id{0};
  Pose2 pose;
  double length{4.4};
  double width{1.8};
  bool intelligent{false};
  std::optional<SensorSpec> sensor;
  /// Roadside unit: never moved by the perturbation search unless explicitly allowed.
  bool infrastructure{false};

  OrientedBox footprint() const { return {pose, length, width}; }
  friend bool operator==(const Agent &, const Agent &) = default;
};

struct MapBounds
{
  double xmin{-50.0};
  double ymin{-50.0};
  double xmax{50.0};
  double ymax{50.0};

  bool contains(Vec2 p) const { return p.x >= xmin && p.x <= xmax && p.y >= ymin && p.y <= ymax; }
  friend bool operator==(const MapBounds &, const MapBounds &) = default;
};

/// A single-frame multi-agent scene in one world frame.
struct Scene
{
  static constexpr int kVersion = 1;

  int version{kVersion};
  std::uint64_t seed{0};
  MapBounds bounds;
  int ego_id{0};
  std::vector<Agent> agents;
  std::vector<OrientedBox> obstacles;

  /// nullptr when no agent has this id.
  const Agent * find(int id) const;
  /// Throws UnknownTarget when no agent has this id.
  const Agent & agent(int id) const;
  const Agent & ego() const { return agent(ego_id); }

  std::vector<int> intelligent_ids() const;

  /// Throws InvariantViolation describing the first broken invariant.
  void validate() const;

  friend bool operator==(const Scene &, const Scene &) = default;
};

/// The set of intelligent agents sharing observations, ego included.
/// Members are kept sorted ascending.
struct CollaborationChoice
{
  std::vector<int> members;

  bool contains(int id) const;
  friend bool operator==(const CollaborationChoice &, const CollaborationChoice &) = default;
};

CollaborationChoice make_collaboration(std::vector<int> members);

struct PoseDelta
{
  double dx{0.0};
  double dy{0.0};
  double dtheta{0.0};

  friend bool operator==(const PoseDelta &, const PoseDelta &) = default;
};

struct Perturbation
{
  std::vector<int> targets;
  std::vector<PoseDelta> deltas;

  Perturbation negated() const;

  friend bool operator==(const Perturbation &, const Perturbation &) = default;
};

/// Translates each target by (dx, dy) and rotates it in place by dtheta.
/// Throws UnknownTarget for ids that are not agents of the scene.
Scene apply_perturbation(const Scene & scene, const Perturbation & perturbation);

/// Snaps a yaw onto the set of radian values that survive the degree-based
/// scene file format bit-exactly.
double canonical_yaw(double radians);

enum class Layout { kUniform, kCorridor };

struct SceneGenConfig
{
  int n_agents{25};
  int n_intelligent{5};
  /// Of the intelligent agents (excluding ego), this many are roadside units.
  int n_infrastructure{0};
  int n_obstacles{4};
  Layout layout{Layout::kCorridor};
  MapBounds bounds{};
  double vehicle_length{4.4};
  double vehicle_width{1.8};
  /// Minimum clearance enforced between generated footprints.
  double clearance{0.5};
  int lanes{4};
  double lane_width{3.5};
  SensorSpec sensor{};
  /// When set, one non-ego intelligent agent gets a sensor with this range.
  std::optional<double> weak_sensor_range;
};

/// Rejection-samples a collision-free scene. Ego is agent 0, placed near the
/// map center. Deterministic per seed; throws GenerationFailed after 10,000
/// rejected placements.
Scene generate_scene(const SceneGenConfig & config, std::uint64_t seed);

}  // namespace advscene
