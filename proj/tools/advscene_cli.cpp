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

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "advscene/errors.hpp"
#include "advscene/harness/experiments.hpp"
#include "advscene/harness/svg_render.hpp"
#include "advscene/scene_io.hpp"

namespace fs = std::filesystem;
using namespace advscene;
using namespace advscene::harness;

namespace
{

struct SharedFlags
{
  std::optional<std::string> config;
  std::vector<std::string> scenes;
  std::vector<std::string> models;
  std::vector<std::string> optimizers;
  std::optional<int> budget;
  std::optional<int> k;
  std::optional<int> k0;
  std::optional<double> tau;
  std::optional<int> m_targets;
  std::optional<int> nq;
  std::optional<std::string> strategy;
  std::vector<std::uint64_t> seeds;
  std::optional<int> jobs;
  std::optional<std::string> out;
  bool timing{false};
};

void add_shared_flags(CLI::App & cmd, SharedFlags & f)
{
  cmd.add_option("--config", f.config, "Sectioned key-value config file; flags override it");
  cmd.add_option("--scenes", f.scenes, "Scene files or directories of *.json");
  cmd.add_option("--model", f.models, "Fusion model(s): no-fusion, late, early, att")->delimiter(',');
  cmd.add_option("--optimizer", f.optimizers, "Optimizer(s): rs, ga, bo")->delimiter(',');
  cmd.add_option("--budget", f.budget, "APS query budget");
  cmd.add_option("--k", f.k, "Collaboration size including ego");
  cmd.add_option("--k0", f.k0, "Number of sampled collaborator combinations");
  cmd.add_option("--tau", f.tau, "Weakness softmax temperature");
  cmd.add_option("--m-targets", f.m_targets, "Number of perturbed targets");
  cmd.add_option("--nq", f.nq, "Feasible set size");
  cmd.add_option("--strategy", f.strategy, "Collaborator sampling: attention or random");
  cmd.add_option("--seed", f.seeds, "Repetition seed(s)")->delimiter(',');
  cmd.add_option("--jobs", f.jobs, "Worker threads");
  cmd.add_option("--out", f.out, "Output directory");
  cmd.add_flag("--timing", f.timing, "Record wall-clock elapsed_ms (breaks byte reproducibility)");
}

ExperimentConfig build_config(const SharedFlags & f)
{
  ExperimentConfig config;
  if (f.config) {
    apply_config_file(config, *f.config);
  }
  if (!f.scenes.empty()) {
    config.scenes.assign(f.scenes.begin(), f.scenes.end());
  }
  if (!f.models.empty()) {
    config.models.clear();
    for (const auto & m : f.models) {
      config.models.push_back(parse_fusion_mode(m));
    }
  }
  if (!f.optimizers.empty()) config.optimizers = f.optimizers;
  if (f.budget) config.attack.aps.budget = *f.budget;
  if (f.k) config.attack.acs.k = *f.k;
  if (f.k0) config.attack.acs.k0 = *f.k0;
  if (f.tau) config.attack.acs.tau = *f.tau;
  if (f.m_targets) config.attack.aps.m_targets = *f.m_targets;
  if (f.nq) config.attack.aps.n_q = *f.nq;
  if (f.strategy) {
    if (*f.strategy == "attention") {
      config.attack.strategy = CollaboratorStrategy::kAttention;
    } else if (*f.strategy == "random") {
      config.attack.strategy = CollaboratorStrategy::kRandom;
    } else {
      throw ConfigError("--strategy must be attention or random");
    }
  }
  if (!f.seeds.empty()) config.seeds = f.seeds;
  if (f.jobs) config.jobs = *f.jobs;
  if (f.out) config.out_dir = *f.out;
  if (f.timing) config.timing = true;
  return config;
}

void report_failures(const RunSummary & run)
{
  for (const auto & job : run.jobs) {
    if (!job.ok) {
      std::cerr << "failed: " << job.scene_id << " model=" << to_string(job.model) << " optimizer=" << job.optimizer
                << " seed=" << job.seed << ": " << job.error << "\n";
    }
  }
}

}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"advscene: adversarial scene generation for cooperative perception"};
  app.require_subcommand(1);

  // gen-scenes
  auto * gen = app.add_subcommand("gen-scenes", "Generate random scenes");
  GenScenesOptions gen_opts;
  std::string gen_out = "scenes";
  std::string layout = "corridor";
  std::optional<double> weak_range;
  gen->add_option("--count", gen_opts.count, "Number of scenes")->capture_default_str();
  gen->add_option("--seed", gen_opts.seed, "Master seed")->capture_default_str();
  gen->add_option("--out", gen_out, "Output directory")->capture_default_str();
  gen->add_option("--agents", gen_opts.generator.n_agents, "Agents per scene")->capture_default_str();
  gen->add_option("--intelligent", gen_opts.generator.n_intelligent, "Intelligent agents")->capture_default_str();
  gen->add_option("--infrastructure", gen_opts.generator.n_infrastructure, "Roadside units among intelligent")
    ->capture_default_str();
  gen->add_option("--obstacles", gen_opts.generator.n_obstacles, "Static obstacles")->capture_default_str();
  gen->add_option("--layout", layout, "uniform or corridor")->capture_default_str();
  gen->add_option("--range", gen_opts.generator.sensor.range_m, "Sensor range (m)")->capture_default_str();
  gen->add_option("--beams", gen_opts.generator.sensor.beams, "Beams per scan")->capture_default_str();
  gen->add_option("--weak-sensor-range", weak_range, "Plant one short-range intelligent agent");

  // curate
  auto * curate = app.add_subcommand("curate", "Keep sparse scenes");
  std::vector<std::string> curate_scenes;
  double threshold = 25.0;
  std::string viewpoints = "collab";
  int curate_k = 3;
  std::optional<std::string> curate_out;
  curate->add_option("--scenes", curate_scenes, "Scene files or directories")->required();
  curate->add_option("--threshold", threshold, "Keep scenes with avg points per box below this")->capture_default_str();
  curate->add_option("--viewpoints", viewpoints, "ego, collab or all")->capture_default_str();
  curate->add_option("--k", curate_k, "Collaboration size for collab viewpoints")->capture_default_str();
  curate->add_option("--out", curate_out, "Write kept scene paths to this file");

  SharedFlags attack_flags;
  auto * attack = app.add_subcommand("attack", "Generate challenging scenes");
  add_shared_flags(*attack, attack_flags);

  SharedFlags bench_flags;
  auto * bench = app.add_subcommand("bench", "Benchmark black-box optimizers");
  add_shared_flags(*bench, bench_flags);

  SharedFlags transfer_flags;
  auto * transfer = app.add_subcommand("transfer", "Transferability matrix across models");
  add_shared_flags(*transfer, transfer_flags);

  // render
  auto * render = app.add_subcommand("render", "Render a scene as SVG");
  std::string render_scene;
  std::optional<std::string> render_report;
  std::optional<std::string> render_model;
  std::string render_out = "scene.svg";
  bool no_points = false;
  render->add_option("--scene", render_scene, "Scene file")->required();
  render->add_option("--report", render_report, "Attack report for collaborators and targets");
  render->add_option("--model", render_model, "Draw predicted boxes from this model");
  render->add_option("--out", render_out, "Output SVG")->capture_default_str();
  render->add_flag("--no-points", no_points, "Skip LiDAR points");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      gen_opts.out_dir = gen_out;
      if (layout == "uniform") {
        gen_opts.generator.layout = Layout::kUniform;
      } else if (layout == "corridor") {
        gen_opts.generator.layout = Layout::kCorridor;
      } else {
        throw ConfigError("--layout must be uniform or corridor");
      }
      gen_opts.generator.weak_sensor_range = weak_range;
      const auto files = cmd_gen_scenes(gen_opts);
      std::cout << "wrote " << files.size() << " scenes to " << gen_out << "\n";
      return 0;
    }
    if (curate->parsed()) {
      std::vector<fs::path> inputs(curate_scenes.begin(), curate_scenes.end());
      const auto result = cmd_curate(expand_scene_paths(inputs), threshold, parse_viewpoint_mode(viewpoints), curate_k);
      for (const auto & e : result.entries) {
        std::cout << (e.kept ? "keep " : "drop ") << e.file.generic_string() << " avg_points=" << format_double(e.avg_points);
        if (!e.error.empty()) {
          std::cout << " error=" << e.error;
        }
        std::cout << "\n";
      }
      std::cout << result.summary() << "\n";
      if (curate_out) {
        std::string list;
        for (const auto & p : result.kept) {
          list += p.generic_string() + "\n";
        }
        write_text_file(*curate_out, list);
      }
      return result.failures == 0 ? 0 : 1;
    }
    if (attack->parsed()) {
      const auto config = build_config(attack_flags);
      const auto run = cmd_attack(config);
      report_failures(run);
      std::cout << "attack: " << run.jobs.size() - static_cast<std::size_t>(run.failures()) << " of " << run.jobs.size()
                << " jobs done, results in " << (config.out_dir / "results.csv").generic_string() << "\n";
      return run.exit_code();
    }
    if (bench->parsed()) {
      auto config = build_config(bench_flags);
      if (bench_flags.optimizers.empty() && config.optimizers.size() < 2) {
        config.optimizers = {"rs", "ga", "bo"};
      }
      if (bench_flags.seeds.empty() && config.seeds.size() < 3) {
        config.seeds = {0, 1, 2};
      }
      const auto summary = cmd_bench(config);
      report_failures(summary.run);
      std::cout << summary.markdown;
      return summary.run.exit_code();
    }
    if (transfer->parsed()) {
      auto config = build_config(transfer_flags);
      if (transfer_flags.models.empty() && config.models.size() < 2) {
        config.models = {FusionMode::kLateFusion, FusionMode::kEarlyFusion, FusionMode::kAttSurrogate};
      }
      const auto summary = cmd_transfer(config);
      report_failures(summary.run);
      std::cout << summary.markdown;
      return summary.run.exit_code();
    }
    if (render->parsed()) {
      const Scene scene = load_scene_file(render_scene);
      RenderOptions options;
      options.draw_points = !no_points;
      if (render_report) {
        const auto stored = parse_attack_report(read_text_file(*render_report));
        options.collab = stored.collab;
        options.targets = stored.targets;
      }
      if (render_model) {
        const auto collab = options.collab ? *options.collab : make_collaboration({scene.ego_id});
        options.detections = detect(scene, collab, parse_fusion_mode(*render_model), DetectorParams{});
      }
      write_text_file(render_out, render_svg(scene, options));
      std::cout << "wrote " << render_out << "\n";
      return 0;
    }
  } catch (const std::exception & e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
