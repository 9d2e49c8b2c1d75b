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

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

namespace advscene
{

struct Vec2
{
  double x{0.0};
  double y{0.0};

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
  friend bool operator==(Vec2, Vec2) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }

/// Wraps an angle to (-pi, pi].
double normalize_angle(double radians);

inline double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

/// Planar pose. Yaw is counter-clockwise from +x, kept in (-pi, pi] by
/// every operation that produces a Pose2.
struct Pose2
{
  double x{0.0};
  double y{0.0};
  double yaw{0.0};

  Vec2 position() const { return {x, y}; }
  friend bool operator==(const Pose2 &, const Pose2 &) = default;
};

/// Oriented rectangle: `length` runs along the heading, `width` across it.
struct OrientedBox
{
  Pose2 center;
  double length{1.0};
  double width{1.0};

  double area() const { return length * width; }
  friend bool operator==(const OrientedBox &, const OrientedBox &) = default;
};

struct Ray
{
  Vec2 origin;
  Vec2 direction;  // unit length

  static Ray from_angle(Vec2 origin, double angle)
  {
    return {origin, {std::cos(angle), std::sin(angle)}};
  }
};

struct RayHit
{
  double distance{0.0};
  Vec2 point;
};

/// Intersection areas at or below this are treated as empty.
inline constexpr double kAreaEpsilon = 1e-9;

/// Corners in counter-clockwise order starting at the front-left one
/// in the box frame, i.e. (+l/2, +w/2), (-l/2, +w/2), (-l/2, -w/2), (+l/2, -w/2).
std::array<Vec2, 4> corners(const OrientedBox & box);

/// Point expressed in the box frame (origin at the center, +x along heading).
Vec2 to_box_frame(const OrientedBox & box, Vec2 world);

bool contains(const OrientedBox & box, Vec2 point, double tolerance = 0.0);

/// Area of a simple polygon with vertices in either winding.
double polygon_area(std::span<const Vec2> polygon);

/// Sutherland-Hodgman clip of a convex polygon against a convex CCW clip polygon.
std::vector<Vec2> clip_convex(std::span<const Vec2> subject, std::span<const Vec2> clip);

double intersection_area(const OrientedBox & a, const OrientedBox & b);

/// Bird's-eye IoU of two oriented rectangles, in [0, 1].
double obb_iou(const OrientedBox & a, const OrientedBox & b);

/// Separating-axis overlap test. Boundary contact counts as intersecting.
bool obb_intersects(const OrientedBox & a, const OrientedBox & b);

/// Nearest crossing of the ray with the box boundary within max_range.
/// A ray starting inside the box reports the exit point.
std::optional<RayHit> ray_box_hit(const Ray & ray, const OrientedBox & box, double max_range);

/// True if the open segment (from, to) crosses the box. Touching the box only
/// at `to` does not count, so a segment ending on a box boundary is not
/// blocked by that box unless it passes through its interior first.
bool segment_blocked_by(Vec2 from, Vec2 to, const OrientedBox & box, double end_margin = 1e-6);

}  // namespace advscene
