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
#include <span>
#include <vector>

#include "advscene/scene.hpp"

namespace advscene
{

/// Per-coordinate perturbation bounds; normalized coordinates are the raw
/// deltas divided by these.
struct SearchBounds
{
  double dx_max{2.5};
  double dy_max{2.5};
  double dtheta_max{deg_to_rad(45.0)};

  void validate() const;
};

/// Finite set of joint, collision-free perturbations of `targets`.
/// Element i is a vector in [-1, 1]^(3m) laid out (x_1, y_1, theta_1, x_2, ...).
/// Element 0 is always the zero perturbation.
struct FeasibleSet
{
  std::vector<int> targets;
  std::vector<std::vector<double>> elements;
  SearchBounds bounds;

  std::size_t size() const { return elements.size(); }
  std::size_t dimension() const { return 3 * targets.size(); }
  Perturbation denormalize(std::size_t index) const;
};

Perturbation denormalize(std::span<const double> normalized, std::span<const int> targets, const SearchBounds & bounds);

/// True if applying the normalized joint perturbation keeps every perturbed
/// footprint clear of all other agents, obstacles and the other perturbed
/// targets, inside the map bounds, and with its center in the evaluation
/// range around ego.
bool is_feasible(const Scene & scene, std::span<const int> targets, const SearchBounds & bounds,
                 std::span<const double> normalized, double eval_half_range);

/// Samples n_q joint vectors uniformly in [-1, 1]^(3m), keeps the feasible
/// ones, and prepends the zero perturbation. Deterministic per seed.
FeasibleSet build_feasible_set(const Scene & scene, std::span<const int> targets, const SearchBounds & bounds,
                               int n_q, std::uint64_t seed, double eval_half_range = 48.0);

/// Index of the element nearest to `candidate` in l2 distance, ties to the
/// lowest index. Throws EmptyFeasibleSet for an empty set.
std::size_t project(std::span<const double> candidate, const FeasibleSet & q);

}  // namespace advscene
