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

// Reference implementations used only by tests. They are written for
// clarity rather than speed and share no code with the library beyond the
// plain data types.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "advscene/geometry.hpp"
#include "advscene/scene.hpp"

namespace advscene::oracle
{

inline bool inside_box(const OrientedBox & b, Vec2 p)
{
  const double c = std::cos(b.center.yaw);
  const double s = std::sin(b.center.yaw);
  const double dx = p.x - b.center.x;
  const double dy = p.y - b.center.y;
  const double u = c * dx + s * dy;
  const double v = -s * dx + c * dy;
  return std::abs(u) <= 0.5 * b.length && std::abs(v) <= 0.5 * b.width;
}

/// IoU by uniform point membership sampling over the joint bounding square.
inline double monte_carlo_iou(const OrientedBox & a, const OrientedBox & b, int samples, std::uint64_t seed)
{
  const double ra = 0.5 * std::hypot(a.length, a.width);
  const double rb = 0.5 * std::hypot(b.length, b.width);
  const double xmin = std::min(a.center.x - ra, b.center.x - rb);
  const double xmax = std::max(a.center.x + ra, b.center.x + rb);
  const double ymin = std::min(a.center.y - ra, b.center.y - rb);
  const double ymax = std::max(a.center.y + ra, b.center.y + rb);

  // membership with the box rotation hoisted out of the sampling loop
  struct Frame
  {
    double cx, cy, c, s, hl, hw;
    bool inside(double x, double y) const
    {
      const double dx = x - cx;
      const double dy = y - cy;
      return std::abs(c * dx + s * dy) <= hl && std::abs(-s * dx + c * dy) <= hw;
    }
  };
  const auto frame = [](const OrientedBox & box) {
    return Frame{box.center.x, box.center.y, std::cos(box.center.yaw), std::sin(box.center.yaw),
                 0.5 * box.length, 0.5 * box.width};
  };
  const Frame fa = frame(a);
  const Frame fb = frame(b);

  std::mt19937_64 gen(seed);
  const double sx = (xmax - xmin) * 0x1.0p-32;
  const double sy = (ymax - ymin) * 0x1.0p-32;
  long in_a = 0;
  long in_b = 0;
  long both = 0;
  for (int i = 0; i < samples; ++i) {
    // one engine word gives both coordinates at 32-bit resolution
    const std::uint64_t w = gen();
    const double x = xmin + sx * static_cast<double>(w >> 32);
    const double y = ymin + sy * static_cast<double>(w & 0xffffffffu);
    const bool ia = fa.inside(x, y);
    const bool ib = fb.inside(x, y);
    in_a += ia;
    in_b += ib;
    both += ia && ib;
  }
  const long uni = in_a + in_b - both;
  return uni == 0 ? 0.0 : static_cast<double>(both) / static_cast<double>(uni);
}

/// Ray against one segment; distance along the ray or nullopt.
inline std::optional<double> ray_segment(Vec2 origin, Vec2 dir, Vec2 p, Vec2 q)
{
  const Vec2 e = q - p;
  const double denom = cross(dir, e);
  if (std::abs(denom) < 1e-15) {
    return std::nullopt;
  }
  const Vec2 w = p - origin;
  const double t = cross(w, e) / denom;
  const double u = cross(w, dir) / denom;
  if (t < 0.0 || u < -1e-12 || u > 1.0 + 1e-12) {
    return std::nullopt;
  }
  return t;
}

/// Distances at which a ray crosses the four edges of a box, ascending.
inline std::vector<double> ray_box_crossings(Vec2 origin, Vec2 dir, const OrientedBox & box)
{
  const auto c = corners(box);
  std::vector<double> out;
  for (int i = 0; i < 4; ++i) {
    if (const auto t = ray_segment(origin, dir, c[i], c[(i + 1) % 4])) {
      out.push_back(*t);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Nearest hit distance over every entity of the scene except `self`,
/// within range. Returns the entity (agent id, or -1 - obstacle index).
struct NearestHit
{
  double distance{0.0};
  int entity{0};
};

inline std::optional<NearestHit> nearest_hit(const Scene & scene, int self, Vec2 origin, Vec2 dir, double range)
{
  std::optional<NearestHit> best;
  const auto consider = [&](const OrientedBox & box, int entity) {
    for (const double t : ray_box_crossings(origin, dir, box)) {
      if (t <= range && (!best || t < best->distance)) {
        best = NearestHit{t, entity};
      }
    }
  };
  for (const auto & a : scene.agents) {
    if (a.id != self) {
      consider(a.footprint(), a.id);
    }
  }
  for (std::size_t i = 0; i < scene.obstacles.size(); ++i) {
    consider(scene.obstacles[i], -1 - static_cast<int>(i));
  }
  return best;
}

/// Exact rational arithmetic, enough for precision/recall of small lists.
struct Fraction
{
  std::int64_t num{0};
  std::int64_t den{1};

  static Fraction make(std::int64_t n, std::int64_t d)
  {
    const std::int64_t g = std::gcd(n, d);
    return g == 0 ? Fraction{0, 1} : Fraction{n / g, d / g};
  }
  friend Fraction operator+(Fraction a, Fraction b) { return make(a.num * b.den + b.num * a.den, a.den * b.den); }
  friend Fraction operator-(Fraction a, Fraction b) { return make(a.num * b.den - b.num * a.den, a.den * b.den); }
  friend Fraction operator*(Fraction a, Fraction b) { return make(a.num * b.num, a.den * b.den); }
  friend bool operator<(Fraction a, Fraction b) { return a.num * b.den < b.num * a.den; }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// All-point AP from labels already in rank order: enumerate every cutoff,
/// build the PR curve, interpolate precision with the running max from the
/// right and sum rectangle areas.
inline Fraction brute_force_ap(const std::vector<bool> & ranked_tp, int n_gt)
{
  if (n_gt == 0) {
    return ranked_tp.empty() ? Fraction{1, 1} : Fraction{0, 1};
  }
  const std::size_t n = ranked_tp.size();
  std::vector<Fraction> precision(n);
  std::vector<Fraction> recall(n);
  int tp = 0;
  for (std::size_t k = 0; k < n; ++k) {
    tp += ranked_tp[k] ? 1 : 0;
    precision[k] = Fraction::make(tp, static_cast<std::int64_t>(k + 1));
    recall[k] = Fraction::make(tp, n_gt);
  }
  Fraction ap{0, 1};
  Fraction prev{0, 1};
  for (std::size_t k = 0; k < n; ++k) {
    Fraction best = precision[k];
    for (std::size_t j = k; j < n; ++j) {
      if (best < precision[j]) {
        best = precision[j];
      }
    }
    ap = ap + (recall[k] - prev) * best;
    prev = recall[k];
  }
  return ap;
}

}  // namespace advscene::oracle
