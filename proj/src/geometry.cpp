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

#include "advscene/geometry.hpp"

#include <algorithm>
#include <limits>
#include <tuple>

namespace advscene
{

double normalize_angle(double radians)
{
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double a = std::fmod(radians, two_pi);
  if (a <= -std::numbers::pi) {
    a += two_pi;
  } else if (a > std::numbers::pi) {
    a -= two_pi;
  }
  return a;
}

std::array<Vec2, 4> corners(const OrientedBox & box)
{
  const double c = std::cos(box.center.yaw);
  const double s = std::sin(box.center.yaw);
  const double hl = 0.5 * box.length;
  const double hw = 0.5 * box.width;
  const std::array<Vec2, 4> local{{{hl, hw}, {-hl, hw}, {-hl, -hw}, {hl, -hw}}};
  std::array<Vec2, 4> out{};
  for (std::size_t i = 0; i < 4; ++i) {
    out[i] = {
      box.center.x + c * local[i].x - s * local[i].y,
      box.center.y + s * local[i].x + c * local[i].y};
  }
  return out;
}

Vec2 to_box_frame(const OrientedBox & box, Vec2 world)
{
  const double c = std::cos(box.center.yaw);
  const double s = std::sin(box.center.yaw);
  const double dx = world.x - box.center.x;
  const double dy = world.y - box.center.y;
  return {c * dx + s * dy, -s * dx + c * dy};
}

bool contains(const OrientedBox & box, Vec2 point, double tolerance)
{
  const Vec2 p = to_box_frame(box, point);
  return std::abs(p.x) <= 0.5 * box.length + tolerance &&
         std::abs(p.y) <= 0.5 * box.width + tolerance;
}

double polygon_area(std::span<const Vec2> polygon)
{
  if (polygon.size() < 3) {
    return 0.0;
  }
  double twice = 0.0;
  for (std::size_t i = 0; i < polygon.size(); ++i) {
    twice += cross(polygon[i], polygon[(i + 1) % polygon.size()]);
  }
  return 0.5 * std::abs(twice);
}

std::vector<Vec2> clip_convex(std::span<const Vec2> subject, std::span<const Vec2> clip)
{
  std::vector<Vec2> output(subject.begin(), subject.end());
  for (std::size_t e = 0; e < clip.size() && !output.empty(); ++e) {
    const Vec2 a = clip[e];
    const Vec2 b = clip[(e + 1) % clip.size()];
    const Vec2 edge = b - a;
    // inside means on the left of a->b (CCW clip polygon)
    const auto side = [&](Vec2 p) { return cross(edge, p - a); };

    std::vector<Vec2> input;
    input.swap(output);
    for (std::size_t i = 0; i < input.size(); ++i) {
      const Vec2 cur = input[i];
      const Vec2 prev = input[(i + input.size() - 1) % input.size()];
      const double s_cur = side(cur);
      const double s_prev = side(prev);
      if (s_cur >= 0.0) {
        if (s_prev < 0.0) {
          const double t = s_prev / (s_prev - s_cur);
          output.push_back(prev + t * (cur - prev));
        }
        output.push_back(cur);
      } else if (s_prev >= 0.0) {
        const double t = s_prev / (s_prev - s_cur);
        output.push_back(prev + t * (cur - prev));
      }
    }
  }
  return output;
}

namespace
{
bool box_less(const OrientedBox & a, const OrientedBox & b)
{
  return std::tie(a.center.x, a.center.y, a.center.yaw, a.length, a.width) <
         std::tie(b.center.x, b.center.y, b.center.yaw, b.length, b.width);
}
}  // namespace

double intersection_area(const OrientedBox & a, const OrientedBox & b)
{
  // clip in a fixed argument order so the result is exactly symmetric
  const bool swap = box_less(b, a);
  const auto ca = corners(swap ? b : a);
  const auto cb = corners(swap ? a : b);
  const auto poly = clip_convex(ca, cb);
  const double area = polygon_area(poly);
  return area <= kAreaEpsilon ? 0.0 : area;
}

double obb_iou(const OrientedBox & a, const OrientedBox & b)
{
  if (a == b) {
    return 1.0;
  }
  const double inter = intersection_area(a, b);
  if (inter <= 0.0) {
    return 0.0;
  }
  const double uni = a.area() + b.area() - inter;
  return std::clamp(inter / uni, 0.0, 1.0);
}

namespace
{
struct Interval
{
  double lo;
  double hi;
};

Interval project(const std::array<Vec2, 4> & pts, Vec2 axis)
{
  Interval out{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const auto & p : pts) {
    const double d = dot(p, axis);
    out.lo = std::min(out.lo, d);
    out.hi = std::max(out.hi, d);
  }
  return out;
}
}  // namespace

bool obb_intersects(const OrientedBox & a, const OrientedBox & b)
{
  const auto ca = corners(a);
  const auto cb = corners(b);
  const std::array<Vec2, 4> axes{{
    {std::cos(a.center.yaw), std::sin(a.center.yaw)},
    {-std::sin(a.center.yaw), std::cos(a.center.yaw)},
    {std::cos(b.center.yaw), std::sin(b.center.yaw)},
    {-std::sin(b.center.yaw), std::cos(b.center.yaw)},
  }};
  for (const auto & axis : axes) {
    const Interval pa = project(ca, axis);
    const Interval pb = project(cb, axis);
    if (pa.hi < pb.lo || pb.hi < pa.lo) {
      return false;
    }
  }
  return true;
}

std::optional<RayHit> ray_box_hit(const Ray & ray, const OrientedBox & box, double max_range)
{
  const double c = std::cos(box.center.yaw);
  const double s = std::sin(box.center.yaw);
  const Vec2 o = to_box_frame(box, ray.origin);
  const Vec2 d{c * ray.direction.x + s * ray.direction.y, -s * ray.direction.x + c * ray.direction.y};
  const double half[2] = {0.5 * box.length, 0.5 * box.width};
  const double origin[2] = {o.x, o.y};
  const double dir[2] = {d.x, d.y};

  double t_enter = -std::numeric_limits<double>::infinity();
  double t_exit = std::numeric_limits<double>::infinity();
  for (int axis = 0; axis < 2; ++axis) {
    if (std::abs(dir[axis]) < 1e-15) {
      if (std::abs(origin[axis]) > half[axis]) {
        return std::nullopt;
      }
      continue;
    }
    double t1 = (-half[axis] - origin[axis]) / dir[axis];
    double t2 = (half[axis] - origin[axis]) / dir[axis];
    if (t1 > t2) {
      std::swap(t1, t2);
    }
    t_enter = std::max(t_enter, t1);
    t_exit = std::min(t_exit, t2);
  }
  if (t_exit < t_enter || t_exit < 0.0) {
    return std::nullopt;
  }
  const double t = t_enter >= 0.0 ? t_enter : t_exit;
  if (t > max_range) {
    return std::nullopt;
  }
  return RayHit{t, ray.origin + t * ray.direction};
}

bool segment_blocked_by(Vec2 from, Vec2 to, const OrientedBox & box, double end_margin)
{
  const Vec2 delta = to - from;
  const double length = norm(delta);
  if (length <= end_margin) {
    return false;
  }
  const Ray ray{from, (1.0 / length) * delta};
  return ray_box_hit(ray, box, length - end_margin).has_value();
}

}  // namespace advscene
