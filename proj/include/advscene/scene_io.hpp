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

#include <filesystem>
#include <string>
#include <string_view>

#include "advscene/scene.hpp"

namespace advscene
{

/// Canonical JSON text for a scene. Yaw is written in degrees; a yaw that
/// went through canonical_yaw() round-trips bit-exactly.
///
///   {"version", "seed", "map_bounds": [xmin, ymin, xmax, ymax], "ego_id",
///    "agents": [{"id", "x", "y", "yaw_deg", "length", "width", "intelligent",
///                "sensor": {"range_m", "beams"} | null, "infrastructure"?}],
///    "obstacles": [{"x", "y", "yaw_deg", "length", "width"}]}
std::string save_scene(const Scene & scene);

/// Parses and validates. Throws ParseError for missing, mistyped or unknown
/// fields and InvariantViolation for documents that parse but describe an
/// invalid scene.
Scene load_scene(std::string_view text);

Scene load_scene_file(const std::filesystem::path & path);
void save_scene_file(const Scene & scene, const std::filesystem::path & path);

/// Degree value whose conversion back to radians reproduces `radians`
/// exactly whenever such a double exists near the direct conversion.
double yaw_to_degrees(double radians);

}  // namespace advscene
