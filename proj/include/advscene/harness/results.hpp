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

#include "advscene/evaluation.hpp"
#include "advscene/pipeline.hpp"

namespace advscene::harness
{

enum class Stage { kNormal, kPostAcs, kPostAps };

std::string_view to_string(Stage stage);
Stage parse_stage(std::string_view text);

struct ResultRow
{
  std::string scene_id;
  std::string model;
  Stage stage{Stage::kNormal};
  std::string optimizer;
  std::uint64_t seed{0};
  double ap03{0.0};
  double ap05{0.0};
  double ap07{0.0};
  double l_adv{0.0};
  int queries_used{0};
  double elapsed_ms{0.0};

  friend bool operator==(const ResultRow &, const ResultRow &) = default;
};

inline constexpr std::string_view kResultsHeader =
  "scene_id,model,stage,optimizer,seed,ap03,ap05,ap07,l_adv,queries_used,elapsed_ms";

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

ResultRow make_row(std::string scene_id, std::string model, Stage stage, std::string optimizer, std::uint64_t seed,
                   const EvalReport & report, int queries_used, double elapsed_ms);

std::string to_csv_line(const ResultRow & row);
std::string results_csv(std::span<const ResultRow> rows);
std::vector<ResultRow> parse_results_csv(std::string_view text);

std::string detections_csv(std::string_view scene_id, FusionMode mode, std::span<const Detection> detections);

struct ReportContext
{
  std::string scene_id;
  std::string optimizer;
  int budget{0};
  std::uint64_t seed{0};
  std::string scene_file;
  std::string adversarial_scene_file;
};

std::string attack_report_json(const AttackResult & result, const ReportContext & context);

/// Fields read back from an attack report, enough to re-evaluate it.
struct StoredReport
{
  std::string scene_id;
  CollaborationChoice collab;
  std::vector<int> targets;
  double original{0.0};
  double post_acs{0.0};
  double post_aps{0.0};
  std::string optimizer;
  std::uint64_t seed{0};
  std::string scene_file;
  std::string adversarial_scene_file;
};

StoredReport parse_attack_report(std::string_view text);

void write_text_file(const std::filesystem::path & path, std::string_view text);
std::string read_text_file(const std::filesystem::path & path);

}  // namespace advscene::harness
