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

#include "advscene/harness/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "advscene/errors.hpp"
#include "advscene/hash.hpp"
#include "advscene/harness/worker_pool.hpp"
#include "advscene/lidar.hpp"
#include "advscene/scene_io.hpp"

namespace advscene::harness
{

std::vector<std::filesystem::path> cmd_gen_scenes(const GenScenesOptions & options)
{
  if (options.count < 0) {
    throw ConfigError("scene count must be >= 0");
  }
  std::vector<std::filesystem::path> written;
  for (int i = 0; i < options.count; ++i) {
    const Scene scene = generate_scene(options.generator, hash64({options.seed, static_cast<std::uint64_t>(i)}));
    char name[32];
    std::snprintf(name, sizeof(name), "scene_%04d.json", i);
    const auto path = options.out_dir / name;
    write_text_file(path, save_scene(scene));
    written.push_back(path);
  }
  return written;
}

ViewpointMode parse_viewpoint_mode(std::string_view text)
{
  if (text == "ego") return ViewpointMode::kEgo;
  if (text == "collab") return ViewpointMode::kCollab;
  if (text == "all") return ViewpointMode::kAll;
  throw ConfigError("viewpoints must be ego, collab or all, got '" + std::string(text) + "'");
}

std::vector<int> curation_viewpoints(const Scene & scene, ViewpointMode mode, int k)
{
  switch (mode) {
    case ViewpointMode::kEgo:
      return {scene.ego_id};
    case ViewpointMode::kCollab: {
      const int available = static_cast<int>(scene.intelligent_ids().size());
      return normal_collaboration(scene, std::min(k, available)).members;
    }
    case ViewpointMode::kAll:
      return scene.intelligent_ids();
  }
  return {scene.ego_id};
}

std::string CurateResult::summary() const
{
  std::ostringstream out;
  out << "kept " << kept.size() << " of " << entries.size() << " scenes";
  if (failures > 0) {
    out << " (" << failures << " failed to load)";
  }
  return out.str();
}

CurateResult cmd_curate(std::span<const std::filesystem::path> scenes, double threshold, ViewpointMode mode, int k)
{
  if (!(threshold > 0.0)) {
    throw ConfigError("curation threshold must be > 0");
  }
  CurateResult result;
  for (const auto & file : scenes) {
    CurateEntry entry;
    entry.file = file;
    entry.scene_id = scene_id_of(file);
    try {
      const Scene scene = load_scene_file(file);
      const auto viewpoints = curation_viewpoints(scene, mode, k);
      entry.avg_points = avg_points_per_box(scene, viewpoints);
      entry.kept = entry.avg_points < threshold;
    } catch (const Error & e) {
      entry.error = e.what();
      ++result.failures;
    }
    if (entry.kept) {
      result.kept.push_back(file);
    }
    result.entries.push_back(std::move(entry));
  }
  return result;
}

std::vector<ResultRow> RunSummary::rows() const
{
  std::vector<ResultRow> out;
  for (const auto & job : jobs) {
    out.insert(out.end(), job.rows.begin(), job.rows.end());
  }
  return out;
}

int RunSummary::failures() const
{
  return static_cast<int>(std::count_if(jobs.begin(), jobs.end(), [](const JobOutcome & j) { return !j.ok; }));
}

namespace
{

std::string job_stem(const JobOutcome & job)
{
  return job.scene_id + "__" + std::string(to_string(job.model)) + "__" + job.optimizer + "__" + std::to_string(job.seed);
}

void run_job(const ExperimentConfig & config, bool write_files, JobOutcome & job)
{
  const Scene scene = load_scene_file(job.scene_file);
  const ModelConfig model = config.model_config(job.model);
  const std::uint64_t sseed = scene_seed(job.seed, job.scene_id);
  auto optimizer = make_optimizer(job.optimizer, optimizer_seed(sseed, job.optimizer), config.optimizer_settings);

  const auto start = std::chrono::steady_clock::now();
  AttackResult result = generate_challenging(scene, model, config.attack, *optimizer, sseed);
  const double total_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  double acs_ms = 0.0;
  double aps_ms = 0.0;
  if (config.timing) {
    aps_ms = result.aps.trace.empty() ? 0.0 : result.aps.trace.back().elapsed_ms;
    acs_ms = std::max(0.0, total_ms - aps_ms);
  }
  const std::string mode(to_string(job.model));
  job.rows.push_back(make_row(job.scene_id, mode, Stage::kNormal, job.optimizer, job.seed, result.original, 1, 0.0));
  job.rows.push_back(
    make_row(job.scene_id, mode, Stage::kPostAcs, job.optimizer, job.seed, result.post_acs, result.acs.queries, acs_ms));
  job.rows.push_back(make_row(job.scene_id, mode, Stage::kPostAps, job.optimizer, job.seed, result.post_aps,
                              result.aps.queries_used, aps_ms));

  if (write_files) {
    const std::string stem = job_stem(job);
    const auto relative_adv = std::filesystem::path("adversarial") / (stem + ".json");
    job.adversarial_file = config.out_dir / relative_adv;
    job.report_file = config.out_dir / "reports" / (stem + ".json");
    write_text_file(job.adversarial_file, save_scene(result.adversarial));

    ReportContext context;
    context.scene_id = job.scene_id;
    context.optimizer = job.optimizer;
    context.budget = config.attack.aps.budget;
    context.seed = job.seed;
    context.scene_file = job.scene_file.generic_string();
    context.adversarial_scene_file = job.adversarial_file.generic_string();
    write_text_file(job.report_file, attack_report_json(result, context));
  }
  job.result = std::move(result);
  job.ok = true;
}

}  // namespace

RunSummary run_attacks(const ExperimentConfig & config, bool write_files)
{
  config.validate();
  const auto files = expand_scene_paths(config.scenes);

  RunSummary summary;
  for (const auto & file : files) {
    for (const auto mode : config.models) {
      for (const auto & optimizer : config.optimizers) {
        for (const auto seed : config.seeds) {
          JobOutcome job;
          job.scene_id = scene_id_of(file);
          job.scene_file = file;
          job.model = mode;
          job.optimizer = optimizer;
          job.seed = seed;
          summary.jobs.push_back(std::move(job));
        }
      }
    }
  }

  parallel_for(summary.jobs.size(), config.jobs, [&](std::size_t i) {
    JobOutcome & job = summary.jobs[i];
    try {
      run_job(config, write_files, job);
    } catch (const std::exception & e) {
      job.ok = false;
      job.error = e.what();
      job.rows.clear();
      job.result.reset();
    }
  });
  return summary;
}

RunSummary cmd_attack(const ExperimentConfig & config)
{
  RunSummary summary = run_attacks(config, true);
  const auto rows = summary.rows();
  write_text_file(config.out_dir / "results.csv", results_csv(rows));
  return summary;
}

double median(std::vector<double> values)
{
  if (values.empty()) {
    return 0.0;
  }
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

BenchSummary cmd_bench(const ExperimentConfig & config)
{
  const auto files = expand_scene_paths(config.scenes);
  if (config.optimizers.size() < 2) throw ConfigError("bench needs at least 2 optimizers");
  if (files.size() < 5) throw ConfigError("bench needs at least 5 scenes");
  if (config.seeds.size() < 3) throw ConfigError("bench needs at least 3 seeds");

  BenchSummary bench;
  bench.run = run_attacks(config, true);
  for (const auto & job : bench.run.jobs) {
    if (job.ok) {
      bench.rows.push_back(job.rows.back());
    }
  }

  for (const auto mode : config.models) {
    for (const auto & name : config.optimizers) {
      const bool seen = std::any_of(bench.stats.begin(), bench.stats.end(), [&](const OptimizerStat & s) {
        return s.model == to_string(mode) && s.optimizer == name;
      });
      if (seen) {
        continue;
      }
      std::vector<double> finals;
      for (const auto & row : bench.rows) {
        if (row.model == to_string(mode) && row.optimizer == name) {
          finals.push_back(row.l_adv);
        }
      }
      OptimizerStat stat;
      stat.model = std::string(to_string(mode));
      stat.optimizer = name;
      stat.samples = finals.size();
      stat.median = median(finals);
      stat.mean = finals.empty() ? 0.0 : std::accumulate(finals.begin(), finals.end(), 0.0) / static_cast<double>(finals.size());
      bench.stats.push_back(std::move(stat));
    }
  }

  std::ostringstream md;
  md << "| model | optimizer | median l_adv | mean l_adv | runs |\n|---|---|---|---|---|\n";
  for (const auto & s : bench.stats) {
    md << "| " << s.model << " | " << s.optimizer << " | " << format_double(s.median) << " | "
       << format_double(s.mean) << " | " << s.samples << " |\n";
  }
  md << "\nPer-scene final l_adv (scene, seed):\n\n| model | scene | seed |";
  std::vector<std::string> names;
  for (const auto & s : bench.stats) {
    if (std::find(names.begin(), names.end(), s.optimizer) == names.end()) {
      names.push_back(s.optimizer);
    }
  }
  for (const auto & n : names) {
    md << ' ' << n << " |";
  }
  md << "\n|---|---|---|";
  for (std::size_t i = 0; i < names.size(); ++i) {
    md << "---|";
  }
  md << '\n';
  for (const auto mode : config.models) {
    for (const auto & file : files) {
      for (const auto seed : config.seeds) {
        md << "| " << to_string(mode) << " | " << scene_id_of(file) << " | " << seed << " |";
        for (const auto & n : names) {
          const auto it = std::find_if(bench.rows.begin(), bench.rows.end(), [&](const ResultRow & r) {
            return r.model == to_string(mode) && r.scene_id == scene_id_of(file) && r.seed == seed && r.optimizer == n;
          });
          md << ' ' << (it == bench.rows.end() ? std::string("failed") : format_double(it->l_adv)) << " |";
        }
        md << '\n';
      }
    }
  }
  bench.markdown = md.str();

  write_text_file(config.out_dir / "bench.csv", results_csv(bench.rows));
  write_text_file(config.out_dir / "bench.md", bench.markdown);
  return bench;
}

TransferSummary cmd_transfer(const ExperimentConfig & config)
{
  if (config.models.size() < 2) {
    throw ConfigError("transfer needs at least 2 models");
  }
  ExperimentConfig run_config = config;
  run_config.optimizers = {config.optimizers.front()};

  TransferSummary transfer;
  transfer.models = config.models;
  transfer.run = cmd_attack(run_config);

  const std::size_t n = transfer.models.size();
  transfer.matrix.assign(n, std::vector<double>(n, 0.0));
  transfer.per_scene.assign(n, std::vector<std::vector<double>>(n));
  transfer.normal.assign(n, 0.0);

  // normal performance on each distinct original scene
  const auto files = expand_scene_paths(config.scenes);
  for (std::size_t t = 0; t < n; ++t) {
    const ModelConfig model = config.model_config(transfer.models[t]);
    double sum = 0.0;
    std::size_t count = 0;
    for (const auto & file : files) {
      try {
        const Scene scene = load_scene_file(file);
        sum += adversarial_loss(scene, normal_collaboration(scene, config.attack.acs.k), model).l_adv;
        ++count;
      } catch (const Error &) {
      }
    }
    transfer.normal[t] = count == 0 ? 0.0 : sum / static_cast<double>(count);
  }

  for (const auto & job : transfer.run.jobs) {
    if (!job.ok) {
      continue;
    }
    const auto s = static_cast<std::size_t>(
      std::find(transfer.models.begin(), transfer.models.end(), job.model) - transfer.models.begin());
    const StoredReport report = parse_attack_report(read_text_file(job.report_file));
    const Scene adversarial = load_scene_file(report.adversarial_scene_file);
    for (std::size_t t = 0; t < n; ++t) {
      const double l = adversarial_loss(adversarial, report.collab, config.model_config(transfer.models[t])).l_adv;
      transfer.per_scene[t][s].push_back(l);
    }
  }
  for (std::size_t t = 0; t < n; ++t) {
    for (std::size_t s = 0; s < n; ++s) {
      const auto & v = transfer.per_scene[t][s];
      transfer.matrix[t][s] = v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    }
  }

  std::ostringstream csv;
  std::ostringstream md;
  csv << "target,normal";
  md << "| target \\ source | normal |";
  for (const auto m : transfer.models) {
    csv << ',' << to_string(m);
    md << ' ' << to_string(m) << " |";
  }
  csv << '\n';
  md << "\n|---|---|";
  for (std::size_t s = 0; s < n; ++s) {
    md << "---|";
  }
  md << '\n';
  for (std::size_t t = 0; t < n; ++t) {
    csv << to_string(transfer.models[t]) << ',' << format_double(transfer.normal[t]);
    md << "| " << to_string(transfer.models[t]) << " | " << format_double(transfer.normal[t]) << " |";
    for (std::size_t s = 0; s < n; ++s) {
      csv << ',' << format_double(transfer.matrix[t][s]);
      md << ' ' << format_double(transfer.matrix[t][s]) << " |";
    }
    csv << '\n';
    md << '\n';
  }
  transfer.csv = csv.str();
  transfer.markdown = md.str();
  write_text_file(config.out_dir / "transfer.csv", transfer.csv);
  write_text_file(config.out_dir / "transfer.md", transfer.markdown);
  return transfer;
}

}  // namespace advscene::harness
