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
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "advscene/optimizers/factory.hpp"
#include "advscene/pipeline.hpp"

namespace advscene::harness
{

struct ExperimentConfig
{
  std::vector<std::filesystem::path> scenes;
  std::vector<FusionMode> models{FusionMode::kEarlyFusion};
  std::vector<std::string> optimizers{"bo"};
  std::vector<std::uint64_t> seeds{0};
  AttackConfig attack{};
  OptimizerSettings optimizer_settings{};
  DetectorParams detector{};
  double eval_half_range{48.0};
  std::filesystem::path out_dir{"out"};
  int jobs{1};
  bool timing{false};

  void validate() const;
  ModelConfig model_config(FusionMode mode) const;
};

/// Reads a sectioned key-value file (INI grammar) on top of `config`.
///
/// Recognized sections and keys:
///
///   [run]     out, jobs, seeds, timing
///   [scenes]  paths
///   [model]   modes, n_min, n_sat, eps_max, theta_max_deg, nms_iou,
///             fp_enabled, fp_conf_scale, score_collaborators, eval_half_range
///   [acs]     k, k0, tau, strategy (attention | random)
///   [aps]     optimizers, budget, m_targets, nq, dx_max, dy_max,
///             dtheta_max_deg, allow_collaborators, allow_infrastructure
///   [ga]      population, elite, mutation_prob, mutation_scale, selection_temp
///   [bo]      n_init, lengthscale, variance, noise, select_lengthscale,
///             lengthscale_grid
///
/// List values are comma separated. Unknown sections or keys are rejected.
void apply_config_text(ExperimentConfig & config, std::string_view text);
void apply_config_file(ExperimentConfig & config, const std::filesystem::path & path);

/// Expands directories to their `*.json` entries (sorted); plain files are
/// kept as given.
std::vector<std::filesystem::path> expand_scene_paths(std::span<const std::filesystem::path> inputs);

inline std::string scene_id_of(const std::filesystem::path & path) { return path.stem().string(); }

/// Seed shared by every optimizer run on one (scene, repetition) pair, so ACS
/// and the feasible set line up across optimizers.
std::uint64_t scene_seed(std::uint64_t repetition_seed, std::string_view scene_id);
std::uint64_t optimizer_seed(std::uint64_t scene_seed, std::string_view optimizer);

std::vector<std::string> split_list(std::string_view text);

}  // namespace advscene::harness
