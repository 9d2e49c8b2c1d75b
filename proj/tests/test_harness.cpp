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

#include <gtest/gtest.h>

#include <atomic>
#include <filesystem>
#include <random>
#include <regex>

#include "advscene/errors.hpp"
#include "advscene/harness/experiment_config.hpp"
#include "advscene/harness/experiments.hpp"
#include "advscene/harness/results.hpp"
#include "advscene/harness/svg_render.hpp"
#include "advscene/harness/worker_pool.hpp"
#include "advscene/scene_io.hpp"

using namespace advscene;
using namespace advscene::harness;
namespace fs = std::filesystem;

namespace
{

fs::path fresh_dir(const std::string & name)
{
  const fs::path dir = fs::temp_directory_path() / ("advscene_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path make_scenes(const std::string & name, int count, std::uint64_t seed = 3)
{
  GenScenesOptions opts;
  opts.count = count;
  opts.seed = seed;
  opts.out_dir = fresh_dir(name) / "scenes";
  cmd_gen_scenes(opts);
  return opts.out_dir;
}

ExperimentConfig quick_config(const fs::path & scenes, const fs::path & out)
{
  ExperimentConfig c;
  c.scenes = {scenes};
  c.attack.aps.budget = 6;
  c.attack.aps.n_q = 120;
  c.out_dir = out;
  return c;
}

std::size_t count_of(const std::string & text, const std::string & needle)
{
  std::size_t n = 0;
  for (std::size_t pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) {
    ++n;
  }
  return n;
}

}  // namespace

TEST(Config, ParsesSections)
{
  ExperimentConfig c;
  apply_config_text(c, R"(
[run]
out = results/x
jobs = 3
seeds = 4, 5,6
timing = true

[model]
modes = late, att
n_min = 5
theta_max_deg = 20
eval_half_range = 40

[acs]
k = 2
tau = 0.5
strategy = random

[aps]
optimizers = rs,ga
budget = 17
nq = 250
dx_max = 1.5
dtheta_max_deg = 30

[ga]
population = 10

[bo]
lengthscale_grid = 0.1, 0.2
select_lengthscale = true
)");
  EXPECT_EQ(c.out_dir, fs::path("results/x"));
  EXPECT_EQ(c.jobs, 3);
  EXPECT_EQ(c.seeds, (std::vector<std::uint64_t>{4, 5, 6}));
  EXPECT_TRUE(c.timing);
  EXPECT_EQ(c.models, (std::vector<FusionMode>{FusionMode::kLateFusion, FusionMode::kAttSurrogate}));
  EXPECT_EQ(c.detector.n_min, 5);
  EXPECT_NEAR(c.detector.theta_max, deg_to_rad(20.0), 1e-15);
  EXPECT_EQ(c.eval_half_range, 40.0);
  EXPECT_EQ(c.model_config(FusionMode::kLateFusion).eval_half_range, 40.0);
  EXPECT_EQ(c.attack.acs.k, 2);
  EXPECT_EQ(c.attack.acs.tau, 0.5);
  EXPECT_EQ(c.attack.strategy, CollaboratorStrategy::kRandom);
  EXPECT_EQ(c.optimizers, (std::vector<std::string>{"rs", "ga"}));
  EXPECT_EQ(c.attack.aps.budget, 17);
  EXPECT_EQ(c.attack.aps.n_q, 250);
  EXPECT_EQ(c.attack.aps.bounds.dx_max, 1.5);
  EXPECT_NEAR(c.attack.aps.bounds.dtheta_max, deg_to_rad(30.0), 1e-15);
  EXPECT_EQ(c.optimizer_settings.ga.population, 10);
  EXPECT_EQ(c.optimizer_settings.bo.lengthscale_grid, (std::vector<double>{0.1, 0.2}));
  EXPECT_TRUE(c.optimizer_settings.bo.select_lengthscale);
}

TEST(Config, RejectsUnknownAndMalformed)
{
  ExperimentConfig c;
  EXPECT_THROW(apply_config_text(c, "[aps]\nbudgett = 3\n"), ConfigError);
  EXPECT_THROW(apply_config_text(c, "[weather]\nrain = 1\n"), ConfigError);
  EXPECT_THROW(apply_config_text(c, "[aps]\nbudget = lots\n"), ConfigError);
  EXPECT_THROW(apply_config_text(c, "[model]\nmodes = pointpillar\n"), ConfigError);
  EXPECT_THROW(apply_config_text(c, "[acs\nk = 3\n"), ConfigError);
  EXPECT_THROW(apply_config_file(c, "/nonexistent/advscene.ini"), std::exception);
}

TEST(Config, LaterValuesOverride)
{
  ExperimentConfig c;
  apply_config_text(c, "[aps]\nbudget = 10\n");
  apply_config_text(c, "[aps]\nbudget = 20\n");
  EXPECT_EQ(c.attack.aps.budget, 20);
  EXPECT_EQ(c.attack.aps.n_q, 1000);
}

TEST(Config, Validation)
{
  ExperimentConfig c;
  EXPECT_THROW(c.validate(), ConfigError);  // no scenes
  c.scenes = {"x.json"};
  EXPECT_NO_THROW(c.validate());
  c.seeds.clear();
  EXPECT_THROW(c.validate(), ConfigError);
}

TEST(Seeds, SharedAcrossOptimizers)
{
  EXPECT_EQ(scene_seed(1, "scene_0001"), scene_seed(1, "scene_0001"));
  EXPECT_NE(scene_seed(1, "scene_0001"), scene_seed(2, "scene_0001"));
  EXPECT_NE(scene_seed(1, "scene_0001"), scene_seed(1, "scene_0002"));
  const auto s = scene_seed(0, "a");
  EXPECT_NE(optimizer_seed(s, "rs"), optimizer_seed(s, "bo"));
  EXPECT_EQ(split_list(" a, b ,c,, "), (std::vector<std::string>{"a", "b", "c"}));
}

TEST(ResultsCsv, RoundTrip)
{
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<ResultRow> rows;
  for (int i = 0; i < 50; ++i) {
    EvalReport r;
    r.ap = {{0.3, u(gen)}, {0.5, u(gen)}, {0.7, u(gen)}};
    r.l_adv = r.ap[0].second + 0.8 * r.ap[1].second + 0.5 * r.ap[2].second;
    rows.push_back(make_row("scene_" + std::to_string(i), "early", static_cast<Stage>(i % 3), "bo",
                            static_cast<std::uint64_t>(i) * 977, r, i, u(gen) * 1000));
  }
  const std::string csv = results_csv(rows);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), kResultsHeader);
  const auto parsed = parse_results_csv(csv);
  EXPECT_EQ(parsed, rows);
  for (const auto & row : parsed) {
    EXPECT_NEAR(row.l_adv, row.ap03 + 0.8 * row.ap05 + 0.5 * row.ap07, 1e-9);
  }
  for (const double v : {0.1, 1.0 / 3.0, 2.3, 1e-300, 123456789.125}) {
    EXPECT_EQ(std::stod(format_double(v)), v);
  }
  EXPECT_THROW(parse_results_csv("wrong,header\n"), ParseError);
  EXPECT_EQ(parse_stage("post_acs"), Stage::kPostAcs);
  EXPECT_THROW(parse_stage("final"), ParseError);
}

TEST(DetectionsCsv, Header)
{
  const std::vector<Detection> dets{{OrientedBox{{1, 2, 0}, 4.4, 1.8}, 0.9}};
  const std::string csv = detections_csv("s", FusionMode::kLateFusion, dets);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "scene_id,mode,x,y,yaw_deg,length,width,confidence");
  EXPECT_EQ(count_of(csv, "\n"), 2u);
  EXPECT_EQ(csv.find("s,late,1,2,0,"), csv.find('\n') + 1);
}

TEST(GenScenes, CountZeroAndDeterminism)
{
  GenScenesOptions opts;
  opts.count = 0;
  opts.out_dir = fresh_dir("gen0") / "none";
  EXPECT_TRUE(cmd_gen_scenes(opts).empty());

  const fs::path a = make_scenes("gen_a", 4, 9);
  const fs::path b = make_scenes("gen_b", 4, 9);
  for (int i = 0; i < 4; ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "scene_%04d.json", i);
    const std::string text = read_text_file(a / name);
    EXPECT_EQ(text, read_text_file(b / name));
    EXPECT_NO_THROW(load_scene(text).validate());
  }
  opts.count = -1;
  EXPECT_THROW(cmd_gen_scenes(opts), ConfigError);
}

TEST(GenScenes, DenseSpecReloadsValid)
{
  GenScenesOptions opts;
  opts.count = 5;
  opts.generator.n_agents = 35;
  opts.generator.n_obstacles = 6;
  opts.out_dir = fresh_dir("gen_dense");
  for (const auto & f : cmd_gen_scenes(opts)) {
    EXPECT_NO_THROW(load_scene_file(f).validate());
  }
}

TEST(Curate, Conventions)
{
  const fs::path empty = fresh_dir("curate_empty");
  const std::vector<fs::path> dirs{empty};
  const auto none = cmd_curate(expand_scene_paths(dirs), 25, ViewpointMode::kCollab);
  EXPECT_TRUE(none.kept.empty());
  EXPECT_EQ(none.summary(), "kept 0 of 0 scenes");

  const std::vector<fs::path> scenes{make_scenes("curate", 3)};
  const auto files = expand_scene_paths(scenes);
  EXPECT_EQ(cmd_curate(files, std::numeric_limits<double>::infinity(), ViewpointMode::kAll).kept.size(), 3u);
  EXPECT_EQ(cmd_curate(files, 1e-9, ViewpointMode::kEgo).kept.size(), 0u);
  EXPECT_THROW(cmd_curate(files, 0.0, ViewpointMode::kEgo), ConfigError);
}

TEST(Curate, SparseSceneKeptAndBadFileRecorded)
{
  const fs::path dir = fresh_dir("curate_sparse");
  Scene s;
  Agent ego;
  ego.id = 0;
  ego.intelligent = true;
  ego.sensor = SensorSpec{};
  Agent far;
  far.id = 1;
  far.pose = {45, 40, 0};
  s.agents = {ego, far};
  write_text_file(dir / "sparse.json", save_scene(s));
  write_text_file(dir / "broken.json", "{\"version\": 1");
  const std::vector<fs::path> dirs{dir};
  const auto res = cmd_curate(expand_scene_paths(dirs), 25, ViewpointMode::kEgo);
  ASSERT_EQ(res.entries.size(), 2u);
  EXPECT_EQ(res.failures, 1);
  ASSERT_EQ(res.kept.size(), 1u);
  EXPECT_EQ(res.kept[0].filename(), "sparse.json");
  const std::vector<int> vp{0};
  const auto & sparse = res.entries[0].file.filename() == "sparse.json" ? res.entries[0] : res.entries[1];
  EXPECT_EQ(sparse.avg_points, avg_points_per_box(s, vp));
  EXPECT_LT(sparse.avg_points, 25.0);
  EXPECT_EQ(res.summary(), "kept 1 of 2 scenes (1 failed to load)");
}

TEST(Attack, BudgetOneSingleScene)
{
  const fs::path scenes = make_scenes("attack1", 1);
  ExperimentConfig c = quick_config(scenes, fresh_dir("attack1_out"));
  c.attack.aps.budget = 1;
  const auto run = cmd_attack(c);
  ASSERT_EQ(run.jobs.size(), 1u);
  ASSERT_TRUE(run.jobs[0].ok) << run.jobs[0].error;
  EXPECT_EQ(run.exit_code(), 0);
  const auto rows = run.rows();
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[2].stage, Stage::kPostAps);
  EXPECT_EQ(rows[2].queries_used, 1);
  EXPECT_TRUE(fs::exists(c.out_dir / "results.csv"));
  EXPECT_TRUE(fs::exists(run.jobs[0].report_file));
  EXPECT_EQ(std::distance(fs::directory_iterator(c.out_dir / "reports"), fs::directory_iterator{}), 1);
}

TEST(Attack, RowsReportsAndDeterminism)
{
  const fs::path scenes = make_scenes("attack3", 3);
  const fs::path root = fresh_dir("attack3_out");
  ExperimentConfig c = quick_config(scenes, root / "a");
  c.optimizers = {"rs", "bo"};
  c.seeds = {0, 1};
  const auto first = cmd_attack(c);
  EXPECT_EQ(first.exit_code(), 0);
  EXPECT_EQ(first.jobs.size(), 12u);

  const auto rows = first.rows();
  for (std::size_t i = 0; i + 2 < rows.size(); i += 3) {
    EXPECT_LE(rows[i + 2].l_adv, rows[i + 1].l_adv);
    EXPECT_LE(rows[i + 1].l_adv, rows[i].l_adv);
    EXPECT_EQ(rows[i].elapsed_ms, 0.0);
  }
  for (const auto & row : rows) {
    EXPECT_NEAR(row.l_adv, row.ap03 + 0.8 * row.ap05 + 0.5 * row.ap07, 1e-9);
  }

  ExperimentConfig again = c;
  again.out_dir = root / "b";
  again.jobs = 4;
  cmd_attack(again);
  EXPECT_EQ(read_text_file(c.out_dir / "results.csv"), read_text_file(again.out_dir / "results.csv"));
  for (const auto & job : first.jobs) {
    const auto twin = again.out_dir / "reports" / job.report_file.filename();
    const std::string a = read_text_file(job.report_file);
    std::string b = read_text_file(twin);
    // only the output directory differs between the two runs
    b = std::regex_replace(b, std::regex((again.out_dir.generic_string())), c.out_dir.generic_string());
    EXPECT_EQ(a, b);

    const StoredReport report = parse_attack_report(a);
    ASSERT_TRUE(fs::exists(report.scene_file));
    ASSERT_TRUE(fs::exists(report.adversarial_scene_file));
    const Scene adv = load_scene_file(report.adversarial_scene_file);
    EXPECT_NO_THROW(load_scene_file(report.scene_file));
    const double l = adversarial_loss(adv, report.collab, c.model_config(FusionMode::kEarlyFusion)).l_adv;
    EXPECT_EQ(l, report.post_aps);
    EXPECT_LE(report.post_aps, report.post_acs);
  }
}

TEST(Attack, FailuresAreIsolated)
{
  const fs::path scenes = make_scenes("attack_fail", 2);
  write_text_file(scenes / "zz_broken.json", "not json");
  ExperimentConfig c = quick_config(scenes, fresh_dir("attack_fail_out"));
  const auto run = cmd_attack(c);
  EXPECT_EQ(run.failures(), 1);
  EXPECT_EQ(run.exit_code(), 1);
  EXPECT_EQ(run.rows().size(), 6u);
  EXPECT_FALSE(run.jobs.back().error.empty());
}

TEST(Bench, RowCountAndSelfComparison)
{
  const fs::path scenes = make_scenes("bench", 5);
  ExperimentConfig c = quick_config(scenes, fresh_dir("bench_out"));
  c.attack.aps.budget = 4;
  c.seeds = {0, 1, 2};
  c.optimizers = {"rs"};
  EXPECT_THROW(cmd_bench(c), ConfigError);

  c.optimizers = {"ga", "ga"};
  const auto bench = cmd_bench(c);
  ASSERT_EQ(bench.rows.size(), 5u * 2u * 3u);
  std::vector<double> first;
  std::vector<double> second;
  for (std::size_t i = 0; i < bench.rows.size(); ++i) {
    ((i / 3) % 2 == 0 ? first : second).push_back(bench.rows[i].l_adv);
  }
  EXPECT_EQ(median(first), median(second));
  EXPECT_TRUE(fs::exists(c.out_dir / "bench.csv"));
  EXPECT_TRUE(fs::exists(c.out_dir / "bench.md"));
  EXPECT_EQ(parse_results_csv(read_text_file(c.out_dir / "bench.csv")).size(), bench.rows.size());

  c.seeds = {0, 1};
  c.optimizers = {"rs", "bo"};
  EXPECT_THROW(cmd_bench(c), ConfigError);
}

TEST(Bench, Median)
{
  EXPECT_EQ(median({}), 0.0);
  EXPECT_EQ(median({3.0}), 3.0);
  EXPECT_EQ(median({4.0, 1.0, 2.0}), 2.0);
  EXPECT_EQ(median({4.0, 1.0, 2.0, 3.0}), 2.5);
}

TEST(Transfer, ShapeAndRecomputation)
{
  const fs::path scenes = make_scenes("transfer", 2);
  ExperimentConfig c = quick_config(scenes, fresh_dir("transfer_out"));
  c.models = {FusionMode::kLateFusion, FusionMode::kEarlyFusion};
  EXPECT_THROW(
    [&] {
      ExperimentConfig one = c;
      one.models = {FusionMode::kLateFusion};
      cmd_transfer(one);
    }(),
    ConfigError);

  const auto t = cmd_transfer(c);
  ASSERT_EQ(t.matrix.size(), 2u);
  ASSERT_EQ(t.matrix[0].size(), 2u);
  ASSERT_EQ(t.normal.size(), 2u);
  for (std::size_t target = 0; target < 2; ++target) {
    for (std::size_t source = 0; source < 2; ++source) {
      const auto & v = t.per_scene[target][source];
      ASSERT_EQ(v.size(), 2u);
      EXPECT_NEAR(t.matrix[target][source], 0.5 * (v[0] + v[1]), 1e-15);
    }
  }

  // each entry re-evaluated from the saved reports and scenes
  for (const auto & job : t.run.jobs) {
    ASSERT_TRUE(job.ok) << job.error;
    const StoredReport report = parse_attack_report(read_text_file(job.report_file));
    const Scene adv = load_scene_file(report.adversarial_scene_file);
    const std::size_t source = job.model == FusionMode::kLateFusion ? 0 : 1;
    const std::size_t scene_index = job.scene_id == "scene_0000" ? 0 : 1;
    for (std::size_t target = 0; target < 2; ++target) {
      const double l = adversarial_loss(adv, report.collab, c.model_config(t.models[target])).l_adv;
      EXPECT_EQ(l, t.per_scene[target][source][scene_index]);
    }
    EXPECT_EQ(t.per_scene[source][source][scene_index], report.post_aps);
  }
  const std::string csv = read_text_file(c.out_dir / "transfer.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "target,normal,late,early");
  EXPECT_EQ(count_of(csv, "\n"), 3u);
}

TEST(Render, EmptySceneIsFrameOnly)
{
  const std::string svg = render_svg(Scene{});
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  EXPECT_EQ(count_of(svg, "<text"), 0u);
  EXPECT_EQ(count_of(svg, "class=\"agent"), 0u);
}

TEST(Render, LabelsAndDeterminism)
{
  const Scene s = generate_scene(SceneGenConfig{}, 4);
  RenderOptions opts;
  const auto ids = s.intelligent_ids();
  opts.collab = make_collaboration({ids[0], ids[1]});
  opts.targets = {3, 4};
  opts.detections = detect(s, *opts.collab, FusionMode::kEarlyFusion, DetectorParams{});
  const std::string svg = render_svg(s, opts);
  EXPECT_EQ(svg, render_svg(s, opts));

  const std::regex label("<text class=\"agent-label\"[^>]*>([0-9]+)</text>");
  std::map<int, int> seen;
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), label); it != std::sregex_iterator(); ++it) {
    ++seen[std::stoi((*it)[1].str())];
  }
  ASSERT_EQ(seen.size(), s.agents.size());
  for (const auto & a : s.agents) {
    EXPECT_EQ(seen[a.id], 1) << a.id;
  }
  EXPECT_EQ(count_of(svg, "<text"), s.agents.size());
  EXPECT_EQ(count_of(svg, "<circle class=\"target\""), 2u);
}

TEST(WorkerPool, RunsEveryIndexOnce)
{
  for (const int workers : {1, 4}) {
    std::vector<std::atomic<int>> hits(100);
    parallel_for(hits.size(), workers, [&](std::size_t i) {
      hits[i].fetch_add(1);
      if (i == 7) {
        throw std::runtime_error("boom");
      }
    });
    for (const auto & h : hits) {
      EXPECT_EQ(h.load(), 1);
    }
  }
}
