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

// Acceptance run: one PASS/FAIL line per criterion. Tolerances, suite seeds
// and sizes are pinned below; the run is single-threaded.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <numeric>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "../oracles.hpp"
#include "advscene/evaluation.hpp"
#include "advscene/feasible_set.hpp"
#include "advscene/harness/experiment_config.hpp"
#include "advscene/harness/experiments.hpp"
#include "advscene/harness/results.hpp"
#include "advscene/occlusion.hpp"
#include "advscene/scene_io.hpp"

using namespace advscene;
using namespace advscene::harness;
namespace fs = std::filesystem;

namespace
{

// criterion 1
constexpr int kIouPairs = 1000;
constexpr int kIouSamples = 1'000'000;
constexpr double kIouTolerance = 0.01;
constexpr double kIouSeconds = 60.0;
// criterion 2
constexpr double kApTolerance = 1e-12;
// criterion 3
constexpr double kLossTolerance = 1e-12;
// criterion 4
constexpr int kFeasibleScenes = 50;
constexpr int kFeasibleNq = 1000;
// suites for criteria 6-9
constexpr int kSuiteScenes = 20;
constexpr std::uint64_t kSuiteGenSeed = 7;
constexpr std::uint64_t kWeakGenSeed = 11;
constexpr double kWeakRange = 10.0;
constexpr int kBudget = 50;
constexpr double kMinRelativeDrop = 0.15;
constexpr double kAblationSeconds = 15 * 60.0;
constexpr double kMinAttentionWinRate = 0.70;
const std::vector<std::uint64_t> kSeeds{0, 1, 2};
// criterion 10
constexpr double kSingleAttackSeconds = 10.0;

struct Outcome
{
  bool pass{false};
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start)
{
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(const char * format, auto... args)
{
  char buf[512];
  std::snprintf(buf, sizeof(buf), format, args...);
  return buf;
}

double mean(const std::vector<double> & v)
{
  return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

fs::path generate_suite(const fs::path & dir, std::uint64_t seed, std::optional<double> weak_range)
{
  fs::remove_all(dir);
  GenScenesOptions opts;
  opts.count = kSuiteScenes;
  opts.seed = seed;
  opts.out_dir = dir;
  opts.generator.weak_sensor_range = weak_range;
  cmd_gen_scenes(opts);
  return dir;
}

ExperimentConfig suite_config(const fs::path & scenes, const fs::path & out)
{
  ExperimentConfig c;
  c.scenes = {scenes};
  c.attack.aps.budget = kBudget;
  c.attack.aps.n_q = kFeasibleNq;
  c.out_dir = out;
  c.jobs = 1;
  return c;
}

// Search-loop invariants, checked on every attack the run performs.
struct TraceAudit
{
  int runs{0};
  int violations{0};
  std::string first_violation;

  void check(const JobOutcome & job, int budget)
  {
    if (!job.ok || !job.result) {
      note(job, "job failed: " + job.error);
      return;
    }
    ++runs;
    const auto & r = *job.result;
    const auto & trace = r.aps.trace;
    if (trace.empty() || static_cast<int>(trace.size()) > budget) {
      note(job, "trace length " + std::to_string(trace.size()));
    }
    for (std::size_t i = 1; i < trace.size(); ++i) {
      if (trace[i].best_so_far > trace[i - 1].best_so_far) {
        note(job, "best-so-far increased at iteration " + std::to_string(i + 1));
      }
    }
    if (!trace.empty() && trace.front().l_adv != r.post_acs.l_adv) {
      note(job, "first query is not the unperturbed scene");
    }
    if (r.post_aps.l_adv > r.post_acs.l_adv) {
      note(job, "final loss above unperturbed loss");
    }
  }

  void note(const JobOutcome & job, const std::string & what)
  {
    if (violations++ == 0) {
      first_violation = job.scene_id + "/" + job.optimizer + "/" + std::to_string(job.seed) + ": " + what;
    }
  }
};

Outcome criterion_iou()
{
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 gen(20260101);
  std::uniform_real_distribution<double> pos(-1.0, 1.0);
  std::uniform_real_distribution<double> off(-3.0, 3.0);
  std::uniform_real_distribution<double> len(1.0, 6.0);
  std::uniform_real_distribution<double> wid(0.5, 3.0);
  std::uniform_real_distribution<double> yaw(-std::numbers::pi, std::numbers::pi);
  double worst = 0.0;
  int overlapping = 0;
  for (int i = 0; i < kIouPairs; ++i) {
    const OrientedBox a{{pos(gen), pos(gen), yaw(gen)}, len(gen), wid(gen)};
    const OrientedBox b{{a.center.x + off(gen), a.center.y + off(gen), yaw(gen)}, len(gen), wid(gen)};
    const double iou = obb_iou(a, b);
    overlapping += iou > 0.0 ? 1 : 0;
    worst = std::max(worst, std::abs(iou - oracle::monte_carlo_iou(a, b, kIouSamples, gen())));
  }
  const double elapsed = seconds_since(start);
  return {worst <= kIouTolerance && elapsed < kIouSeconds,
          fmt("%d pairs (%d overlapping), max |iou - mc| = %.5f (tol %.2f), %.1f s (limit %.0f s)", kIouPairs,
              overlapping, worst, kIouTolerance, elapsed, kIouSeconds)};
}

Outcome criterion_ap()
{
  double worst = 0.0;
  int cases = 0;
  for (std::size_t n = 0; n <= 6; ++n) {
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      std::vector<bool> tp(n);
      std::vector<MatchLabel> labels(n);
      int n_tp = 0;
      for (std::size_t i = 0; i < n; ++i) {
        tp[i] = (mask >> i) & 1u;
        labels[i] = tp[i] ? MatchLabel::kTruePositive : MatchLabel::kFalsePositive;
        n_tp += tp[i] ? 1 : 0;
      }
      for (int n_gt = n_tp; n_gt <= 4; ++n_gt) {
        const double got = ap_from_ranked(labels, static_cast<std::size_t>(n_gt));
        worst = std::max(worst, std::abs(got - oracle::brute_force_ap(tp, n_gt).value()));
        ++cases;
      }
    }
  }

  // the worked examples, through matching
  const auto car = [](double x) { return OrientedBox{{x, 0.0, 0.0}, 4.0, 2.0}; };
  const std::vector<OrientedBox> three{car(0), car(20), car(40)};
  const std::vector<OrientedBox> one{car(0)};
  const bool ex1 = average_precision(std::vector<Detection>{{car(0), 0.9}, {car(20), 0.8}, {car(40), 0.7}}, three, 0.5) == 1.0;
  const bool ex2 = average_precision(std::vector<Detection>{{car(0), 0.9}, {car(80), 0.5}}, one, 0.5) == 1.0;
  const bool ex3 = average_precision(std::vector<Detection>{{car(80), 0.9}, {car(0), 0.5}}, one, 0.5) == 0.5;
  return {worst <= kApTolerance && ex1 && ex2 && ex3,
          fmt("%d labelings, max |ap - oracle| = %.3g (tol %.0e); examples %s/%s/%s", cases, worst, kApTolerance,
              ex1 ? "ok" : "bad", ex2 ? "ok" : "bad", ex3 ? "ok" : "bad")};
}

Outcome criterion_loss()
{
  double worst_perfect = 0.0;
  double worst_empty = 0.0;
  int scenes = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Scene s = generate_scene(SceneGenConfig{}, seed);
    std::vector<OrientedBox> gts;
    std::vector<Detection> perfect;
    for (const auto & a : s.agents) {
      if (a.id != s.ego_id) {
        gts.push_back(a.footprint());
        perfect.push_back({a.footprint(), 0.5 + 0.01 * static_cast<double>(a.id)});
      }
    }
    worst_perfect = std::max(worst_perfect, std::abs(evaluate_detections(perfect, gts, LossWeights::defaults()).l_adv - 2.3));
    worst_empty = std::max(worst_empty, std::abs(evaluate_detections({}, gts, LossWeights::defaults()).l_adv));
    ++scenes;
  }
  return {worst_perfect <= kLossTolerance && worst_empty == 0.0,
          fmt("%d scenes: max |l_adv - 2.3| = %.3g (perfect), max l_adv = %.3g (no detections)", scenes, worst_perfect,
              worst_empty)};
}

Outcome criterion_feasible()
{
  long elements = 0;
  long intersections = 0;
  long out_of_range = 0;
  long not_idempotent = 0;
  for (std::uint64_t seed = 0; seed < kFeasibleScenes; ++seed) {
    const Scene s = generate_scene(SceneGenConfig{}, 1000 + seed);
    const auto targets = select_targets(s, normal_collaboration(s, 3), 3);
    const FeasibleSet q = build_feasible_set(s, targets, SearchBounds{}, kFeasibleNq, seed);
    for (std::size_t i = 0; i < q.size(); ++i) {
      ++elements;
      const Scene moved = apply_perturbation(s, q.denormalize(i));
      std::vector<OrientedBox> boxes;
      for (const auto & a : moved.agents) {
        boxes.push_back(a.footprint());
      }
      boxes.insert(boxes.end(), moved.obstacles.begin(), moved.obstacles.end());
      for (std::size_t x = 0; x < boxes.size(); ++x) {
        for (std::size_t y = x + 1; y < boxes.size(); ++y) {
          intersections += obb_intersects(boxes[x], boxes[y]) ? 1 : 0;
        }
      }
      const Vec2 ego = moved.ego().pose.position();
      for (const int t : targets) {
        const Vec2 c = moved.agent(t).pose.position();
        out_of_range += (std::abs(c.x - ego.x) > 48.0 || std::abs(c.y - ego.y) > 48.0) ? 1 : 0;
      }
      not_idempotent += q.elements[project(q.elements[i], q)] != q.elements[i] ? 1 : 0;
    }
  }
  return {intersections == 0 && out_of_range == 0 && not_idempotent == 0,
          fmt("%d scenes, %ld elements: %ld intersections, %ld targets out of range, %ld non-idempotent projections",
              kFeasibleScenes, elements, intersections, out_of_range, not_idempotent)};
}

Outcome criterion_ablation(const RunSummary & run, double elapsed)
{
  std::vector<double> normal;
  std::vector<double> acs;
  std::vector<double> full;
  int order_violations = 0;
  for (const auto & job : run.jobs) {
    if (!job.ok) {
      return {false, "job failed: " + job.error};
    }
    normal.push_back(job.rows[0].l_adv);
    acs.push_back(job.rows[1].l_adv);
    full.push_back(job.rows[2].l_adv);
    order_violations += (job.rows[0].l_adv >= job.rows[1].l_adv && job.rows[1].l_adv >= job.rows[2].l_adv) ? 0 : 1;
  }
  const double drop = 1.0 - mean(full) / mean(normal);
  return {order_violations == 0 && drop >= kMinRelativeDrop && elapsed < kAblationSeconds &&
            static_cast<int>(normal.size()) == kSuiteScenes,
          fmt("%zu scenes: mean Normal %.4f >= ACS %.4f >= ACS+APS %.4f, drop %.1f%% (need %.0f%%), %d per-scene "
              "order violations, %.1f s",
              normal.size(), mean(normal), mean(acs), mean(full), 100 * drop, 100 * kMinRelativeDrop, order_violations,
              elapsed)};
}

Outcome criterion_acs_strategy(const fs::path & scenes, const fs::path & out)
{
  // only the collaborator stage matters here; the perturbation stage is kept minimal
  ExperimentConfig c = suite_config(scenes, out);
  c.attack.aps.budget = 1;
  c.attack.aps.n_q = 1;
  c.seeds = kSeeds;
  std::map<std::string, std::map<std::uint64_t, double>> attention;
  std::map<std::string, std::map<std::uint64_t, double>> random;
  for (const auto strategy : {CollaboratorStrategy::kAttention, CollaboratorStrategy::kRandom}) {
    c.attack.strategy = strategy;
    const RunSummary run = run_attacks(c, false);
    for (const auto & job : run.jobs) {
      if (!job.ok) {
        return {false, "job failed: " + job.error};
      }
      (strategy == CollaboratorStrategy::kAttention ? attention : random)[job.scene_id][job.seed] = job.rows[1].l_adv;
    }
  }
  int wins = 0;
  std::vector<double> la;
  std::vector<double> lr;
  for (const auto & [scene, per_seed] : attention) {
    int seed_wins = 0;
    for (const auto & [seed, l] : per_seed) {
      seed_wins += l <= random[scene][seed] ? 1 : 0;
      la.push_back(l);
      lr.push_back(random[scene][seed]);
    }
    wins += 2 * seed_wins > static_cast<int>(per_seed.size()) ? 1 : 0;
  }
  const double rate = static_cast<double>(wins) / static_cast<double>(attention.size());
  return {rate >= kMinAttentionWinRate && static_cast<int>(attention.size()) == kSuiteScenes,
          fmt("%zu weak-sensor scenes x %zu seeds: ACS-A <= ACS-R in %d scenes (%.0f%%, need %.0f%%); mean post-ACS "
              "A %.4f vs R %.4f",
              attention.size(), kSeeds.size(), wins, 100 * rate, 100 * kMinAttentionWinRate, mean(la), mean(lr))};
}

Outcome criterion_optimizers(const BenchSummary & bench)
{
  std::map<std::string, double> med;
  for (const auto & s : bench.stats) {
    med[s.optimizer] = s.median;
  }
  const bool ok = bench.run.failures() == 0 && med.count("rs") && med.count("ga") && med.count("bo") &&
                  med["bo"] < med["rs"] && med["ga"] < med["rs"];
  return {ok, fmt("median final l_adv over %zu runs each: BO %.4f, GA %.4f, RS %.4f; |BO - GA| = %.4f (%s)",
                  bench.stats.empty() ? 0 : bench.stats[0].samples, med["bo"], med["ga"], med["rs"],
                  std::abs(med["bo"] - med["ga"]), med["bo"] <= med["ga"] ? "BO <= GA" : "GA < BO")};
}

Outcome criterion_transfer(const TransferSummary & t)
{
  const std::size_t n = t.models.size();
  int off_diagonal_above = 0;
  int rows_with_diag_min = 0;
  std::ostringstream table;
  for (std::size_t r = 0; r < n; ++r) {
    bool diag_min = true;
    table << (r ? "; " : "") << to_string(t.models[r]) << ": normal " << fmt("%.4f", t.normal[r]);
    for (std::size_t c = 0; c < n; ++c) {
      table << ' ' << to_string(t.models[c]) << '=' << fmt("%.4f", t.matrix[r][c]);
      if (c != r) {
        off_diagonal_above += t.matrix[r][c] < t.normal[r] ? 0 : 1;
        diag_min = diag_min && t.matrix[r][r] <= t.matrix[r][c];
      }
    }
    rows_with_diag_min += diag_min ? 1 : 0;
  }
  return {t.run.failures() == 0 && n == 3 && off_diagonal_above == 0 && rows_with_diag_min >= 2,
          fmt("rows=target, cols=source [%s]; off-diagonal >= normal: %d; rows with diagonal minimum: %d of %zu",
              table.str().c_str(), off_diagonal_above, rows_with_diag_min, n)};
}

Outcome criterion_determinism(const fs::path & work)
{
  GenScenesOptions opts;
  opts.count = 1;
  opts.seed = 99;
  opts.out_dir = work / "single_scene";
  fs::remove_all(opts.out_dir);
  const auto files = cmd_gen_scenes(opts);
  const Scene scene = load_scene_file(files[0]);

  std::vector<std::string> csv;
  std::vector<std::string> reports;
  std::vector<std::string> adversarial;
  double slowest = 0.0;
  for (const char * name : {"run1", "run2"}) {
    ExperimentConfig c = suite_config(files[0], work / name);
    fs::remove_all(c.out_dir);
    c.optimizers = {"bo"};
    const auto start = std::chrono::steady_clock::now();
    const RunSummary run = cmd_attack(c);
    slowest = std::max(slowest, seconds_since(start));
    if (run.failures() != 0) {
      return {false, "attack failed: " + run.jobs[0].error};
    }
    csv.push_back(read_text_file(c.out_dir / "results.csv"));
    adversarial.push_back(read_text_file(run.jobs[0].adversarial_file));
    std::string report = read_text_file(run.jobs[0].report_file);
    const std::string dir = c.out_dir.string();
    for (auto at = report.find(dir); at != std::string::npos; at = report.find(dir, at)) {
      report.replace(at, dir.size(), "<out>");
    }
    reports.push_back(report);
  }
  const bool same = csv[0] == csv[1] && adversarial[0] == adversarial[1] && reports[0] == reports[1];
  return {same && slowest < kSingleAttackSeconds && scene.agents.size() == 25,
          fmt("%zu-agent scene, M=%d, BO: outputs %s across runs, slowest run %.2f s (limit %.0f s)",
              scene.agents.size(), kBudget, same ? "identical" : "DIFFER", slowest, kSingleAttackSeconds)};
}

}  // namespace

int main()
{
  const fs::path work = fs::temp_directory_path() / "advscene_acceptance";
  fs::create_directories(work);
  std::map<int, Outcome> out;
  const auto guarded = [&](int id, const std::function<Outcome()> & fn) {
    try {
      out[id] = fn();
    } catch (const std::exception & e) {
      out[id] = {false, std::string("exception: ") + e.what()};
    }
  };

  guarded(1, criterion_iou);
  guarded(2, criterion_ap);
  guarded(3, criterion_loss);
  guarded(4, criterion_feasible);

  TraceAudit audit;
  const fs::path suite = generate_suite(work / "suite", kSuiteGenSeed, std::nullopt);
  const fs::path weak = generate_suite(work / "weak", kWeakGenSeed, kWeakRange);

  guarded(6, [&] {
    ExperimentConfig c = suite_config(suite, work / "ablation");
    const auto start = std::chrono::steady_clock::now();
    const RunSummary run = run_attacks(c, false);
    const double elapsed = seconds_since(start);
    for (const auto & job : run.jobs) {
      audit.check(job, kBudget);
    }
    return criterion_ablation(run, elapsed);
  });
  guarded(7, [&] { return criterion_acs_strategy(weak, work / "acs"); });
  guarded(8, [&] {
    ExperimentConfig c = suite_config(suite, work / "bench");
    c.optimizers = {"rs", "ga", "bo"};
    c.seeds = kSeeds;
    const BenchSummary bench = cmd_bench(c);
    for (const auto & job : bench.run.jobs) {
      audit.check(job, kBudget);
    }
    return criterion_optimizers(bench);
  });
  guarded(9, [&] {
    ExperimentConfig c = suite_config(suite, work / "transfer");
    c.models = {FusionMode::kLateFusion, FusionMode::kEarlyFusion, FusionMode::kAttSurrogate};
    c.seeds = kSeeds;
    const TransferSummary t = cmd_transfer(c);
    for (const auto & job : t.run.jobs) {
      audit.check(job, kBudget);
    }
    return criterion_transfer(t);
  });
  guarded(10, [&] { return criterion_determinism(work); });
  out[5] = {audit.runs > 0 && audit.violations == 0,
            fmt("%d attack runs from criteria 6, 8 and 9: %d violations%s%s", audit.runs, audit.violations,
                audit.violations ? "; first: " : "", audit.first_violation.c_str())};

  int failed = 0;
  for (const auto & [id, o] : out) {
    std::printf("criterion %2d: %s  %s\n", id, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    failed += o.pass ? 0 : 1;
  }
  std::fflush(stdout);
  return failed == 0 ? 0 : 1;
}
