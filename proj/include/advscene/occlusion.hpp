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
#include <vector>

#include "advscene/scene.hpp"

namespace advscene
{

/// Rays cast from a sensor to each examined agent's footprint boundary.
inline constexpr int kOcclusionSamples = 16;

/// Evenly spaced points along the footprint perimeter, offset half a step
/// from the front-left corner.
std::vector<Vec2> boundary_samples(const OrientedBox & box, int count = kOcclusionSamples);

/// Occlusion level per agent, summed over viewpoints.
///
/// From each viewpoint, rays go to the boundary samples of every other agent
/// that lie within sensor range. An agent scores 1 (intrinsic) when at least
/// one of its rays is blocked by another entity and at least one is clear,
/// and scores 1 (extrinsic) for every other agent it blocks at least one ray
/// of. Throws NoSensor.
std::map<int, int> occlusion_scores(const Scene & scene, std::span<const int> viewpoints);

struct TargetOptions
{
  bool allow_collaborators{false};
  bool allow_infrastructure{false};
};

/// Top-m agents by occlusion score with the collaboration as viewpoints,
/// ties to ascending id. Throws NotEnoughAgents.
std::vector<int> select_targets(const Scene & scene, const CollaborationChoice & collab, int m,
                                const TargetOptions & options = {});

}  // namespace advscene
