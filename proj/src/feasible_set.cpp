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

#include "advscene/feasible_set.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "advscene/errors.hpp"
#include "advscene/evaluation.hpp"
#include "advscene/rng.hpp"

namespace advscene
{

void SearchBounds::validate() const
{
  if (!(dx_max > 0.0) || !(dy_max > 0.0) || !(dtheta_max > 0.0)) {
    throw ConfigError("search bounds must be positive");
  }
}

Perturbation denormalize(std::span<const double> normalized, std::span<const int> targets, const SearchBounds & bounds)
{
  Perturbation p;
  p.targets.assign(targets.begin(), targets.end());
  for (std::size_t i = 0; i < targets.size(); ++i) {
    p.deltas.push_back({normalized[3 * i] * bounds.dx_max, normalized[3 * i + 1] * bounds.dy_max,
                        normalized[3 * i + 2] * bounds.dtheta_max});
  }
  return p;
}

Perturbation FeasibleSet::denormalize(std::size_t index) const
{
  return advscene::denormalize(elements.at(index), targets, bounds);
}

bool is_feasible(const Scene & scene, std::span<const int> targets, const SearchBounds & bounds,
                 std::span<const double> normalized, double eval_half_range)
{
  const Scene moved = apply_perturbation(scene, denormalize(normalized, targets, bounds));
  std::vector<OrientedBox> moved_boxes;
  for (const int id : targets) {
    const Agent & a = moved.agent(id);
    const OrientedBox box = a.footprint();
    if (!in_eval_range(moved, box.center.position(), eval_half_range)) {
      return false;
    }
    for (const auto & c : corners(box)) {
      if (!moved.bounds.contains(c)) {
        return false;
      }
    }
    moved_boxes.push_back(box);
  }
  for (std::size_t i = 0; i < targets.size(); ++i) {
    for (const auto & other : moved.agents) {
      if (std::find(targets.begin(), targets.end(), other.id) != targets.end()) {
        continue;
      }
      if (obb_intersects(moved_boxes[i], other.footprint())) {
        return false;
      }
    }
    for (const auto & obstacle : moved.obstacles) {
      if (obb_intersects(moved_boxes[i], obstacle)) {
        return false;
      }
    }
    for (std::size_t j = i + 1; j < targets.size(); ++j) {
      if (obb_intersects(moved_boxes[i], moved_boxes[j])) {
        return false;
      }
    }
  }
  return true;
}

FeasibleSet build_feasible_set(const Scene & scene, std::span<const int> targets, const SearchBounds & bounds,
                               int n_q, std::uint64_t seed, double eval_half_range)
{
  if (n_q < 1) {
    throw ConfigError("feasible set needs n_q >= 1");
  }
  bounds.validate();
  for (const int id : targets) {
    scene.agent(id);
  }
  FeasibleSet q;
  q.targets.assign(targets.begin(), targets.end());
  q.bounds = bounds;
  const std::size_t dim = 3 * targets.size();
  q.elements.emplace_back(dim, 0.0);

  Rng rng(seed);
  std::vector<double> sample(dim);
  for (int i = 0; i < n_q; ++i) {
    for (auto & v : sample) {
      v = rng.uniform(-1.0, 1.0);
    }
    if (std::all_of(sample.begin(), sample.end(), [](double v) { return v == 0.0; })) {
      continue;
    }
    if (is_feasible(scene, targets, bounds, sample, eval_half_range)) {
      q.elements.push_back(sample);
    }
  }
  return q;
}

std::size_t project(std::span<const double> candidate, const FeasibleSet & q)
{
  if (q.elements.empty()) {
    throw EmptyFeasibleSet("cannot project onto an empty feasible set");
  }
  std::size_t best = 0;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < q.elements.size(); ++i) {
    const auto & e = q.elements[i];
    double d2 = 0.0;
    for (std::size_t k = 0; k < e.size(); ++k) {
      const double diff = e[k] - candidate[k];
      d2 += diff * diff;
    }
    if (d2 < best_d2) {
      best_d2 = d2;
      best = i;
    }
  }
  return best;
}

}  // namespace advscene
