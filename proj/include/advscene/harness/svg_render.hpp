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

#include <optional>
#include <string>
#include <vector>

#include "advscene/perception.hpp"
#include "advscene/scene.hpp"

namespace advscene::harness
{

struct RenderOptions
{
  std::optional<CollaborationChoice> collab;
  std::vector<int> targets;
  std::vector<Detection> detections;
  bool draw_points{true};
  double pixels_per_meter{6.0};
};

/// Bird's-eye SVG of a scene. The scene is not validated, so an empty scene
/// renders as the map frame alone. Each agent gets exactly one text label
/// (its id); no other text is emitted.
std::string render_svg(const Scene & scene, const RenderOptions & options = {});

}  // namespace advscene::harness
