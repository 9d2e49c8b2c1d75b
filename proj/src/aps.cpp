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

#include "advscene/aps.hpp"

#include <chrono>
#include <map>

#include "advscene/errors.hpp"

namespace advscene
{

void ApsConfig::validate() const
{
  if (budget < 1) throw ConfigError("APS budget must be >= 1");
  if (m_targets < 1) throw ConfigError("APS needs at least one target");
  if (n_q < 1) throw ConfigError("APS n_q must be >= 1");
  bounds.validate();
}

ApsResult aps(const Scene & scene, const CollaborationChoice & collab, const ModelConfig & model,
              BlackBoxOptimizer & optimizer, const ApsConfig & config, std::uint64_t q_seed)
{
  config.validate();
  const auto start = std::chrono::steady_clock::now();

  ApsResult result;
  result.targets = select_targets(scene, collab, config.m_targets, config.targets);
  const FeasibleSet q =
    build_feasible_set(scene, result.targets, config.bounds, config.n_q, q_seed, model.eval_half_range);
  result.q_size = q.size();

  History history;
  std::map<std::size_t, EvalReport> cache;
  const auto evaluate = [&](std::size_t index) {
    const Perturbation delta = q.denormalize(index);
    const EvalReport report = adversarial_loss(apply_perturbation(scene, delta), collab, model);
    cache.emplace(index, report);
    history.push_back({index, q.elements[index], report.l_adv});
    ++result.queries_used;

    const bool improved = result.trace.empty() || report.l_adv < result.best_report.l_adv;
    if (improved) {
      result.best_index = index;
      result.best = delta;
      result.best_report = report;
    }
    TraceRecord rec;
    rec.iteration = result.queries_used;
    rec.q_index = index;
    rec.delta = delta;
    rec.l_adv = report.l_adv;
    rec.best_so_far = result.best_report.l_adv;
    rec.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    result.trace.push_back(std::move(rec));
    return report.l_adv;
  };

  evaluate(0);

  // bounds the number of proposals that only hit the cache
  const int max_cache_hits = 20 * config.budget + 100;
  while (result.queries_used < config.budget && cache.size() < q.size() && result.cache_hits < max_cache_hits) {
    const std::vector<double> candidate = optimizer.propose(history, q);
    const std::size_t index = project(candidate, q);
    const auto hit = cache.find(index);
    if (hit != cache.end()) {
      ++result.cache_hits;
      optimizer.observe(index, hit->second.l_adv);
      continue;
    }
    const double loss = evaluate(index);
    optimizer.observe(index, loss);
  }
  return result;
}

}  // namespace advscene
