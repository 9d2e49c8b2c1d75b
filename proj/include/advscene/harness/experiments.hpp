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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "advscene/harness/experiment_config.hpp"
#include "advscene/harness/results.hpp"

namespace advscene::harness
{

struct GenScenesOptions
{
  SceneGenConfig generator{};
  int count{20};
  std::uint64_t seed{0};
  std::filesystem::path out_dir{"scenes"};
};

/// Writes `count` scenes named scene_0000.json, scene_0001.json, ...; scene i
/// uses seed hash64(seed, i).
std::vector<std::filesystem::path> cmd_gen_scenes(const GenScenesOptions & options);

enum class ViewpointMode { kEgo, kCollab, kAll };

ViewpointMode parse_viewpoint_mode(std::string_view text);

/// Viewpoints whose scans count toward a scene's point density: the ego alone,
/// the normal collaboration of size k, or every intelligent agent.
std::vector<int> curation_viewpoints(const Scene & scene, ViewpointMode mode, int k);

struct CurateEntry
{
  std::filesystem::path file;
  std::string scene_id;
  double avg_points{0.0};
  bool kept{false};
  std::string error;
};

struct CurateResult
{
  std::vector<CurateEntry> entries;
  std::vector<std::filesystem::path> kept;
  int failures{0};

  std::string summary() const;
};

CurateResult cmd_curate(std::span<const std::filesystem::path> scenes, double threshold, ViewpointMode mode,
                        int k = 3);

struct JobOutcome
{
  std::string scene_id;
  std::filesystem::path scene_file;
  FusionMode model{FusionMode::kEarlyFusion};
  std::string optimizer;
  std::uint64_t seed{0};
  bool ok{false};
  std::string error;
  std::vector<ResultRow> rows;
  std::filesystem::path report_file;
  std::filesystem::path adversarial_file;
  std::optional<AttackResult> result;
};

struct RunSummary
{
  std::vector<JobOutcome> jobs;

  std::vector<ResultRow> rows() const;
  int failures() const;
  int exit_code() const { return failures() == 0 ? 0 : 1; }
};

/// Runs one attack per (scene, model, optimizer, seed) on the worker pool.
/// With `write_files`, reports go to <out>/reports and perturbed scenes to
/// <out>/adversarial. Failures are recorded per job and do not stop the run.
RunSummary run_attacks(const ExperimentConfig & config, bool write_files);

/// run_attacks plus <out>/results.csv.
RunSummary cmd_attack(const ExperimentConfig & config);

struct OptimizerStat
{
  std::string model;
  std::string optimizer;
  double median{0.0};
  double mean{0.0};
  std::size_t samples{0};
};

struct BenchSummary
{
  RunSummary run;
  std::vector<ResultRow> rows;  // final (post_aps) rows only
  std::vector<OptimizerStat> stats;
  std::string markdown;
};

/// Requires at least 2 optimizers, 5 scenes and 3 seeds. Writes
/// <out>/bench.csv and <out>/bench.md.
BenchSummary cmd_bench(const ExperimentConfig & config);

double median(std::vector<double> values);

struct TransferSummary
{
  std::vector<FusionMode> models;
  std::vector<std::vector<double>> matrix;  // [target][source], mean l_adv
  std::vector<double> normal;               // per model, mean l_adv on the original scenes
  std::vector<std::vector<std::vector<double>>> per_scene;  // [target][source][job]
  RunSummary run;
  std::string markdown;
  std::string csv;
};

/// Requires at least 2 models. Generates adversarial scenes with each source
/// model (first configured optimizer), then reloads every saved scene and its
/// stored collaboration and evaluates it under each target model. Writes
/// <out>/transfer.csv and <out>/transfer.md.
TransferSummary cmd_transfer(const ExperimentConfig & config);

}  // namespace advscene::harness
