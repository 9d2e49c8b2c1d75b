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

#include "advscene/acs.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "advscene/errors.hpp"
#include "advscene/perception.hpp"

namespace advscene
{

void ACSConfig::validate() const
{
  if (k < 1) throw ConfigError("ACS k must be >= 1");
  if (k0 < 1) throw ConfigError("ACS k0 must be >= 1");
  if (!(tau > 0.0)) throw ConfigError("ACS tau must be > 0");
}

std::vector<CollaborationChoice> combinations_with_ego(const Scene & scene, int k)
{
  std::vector<int> others;
  for (const int id : scene.intelligent_ids()) {
    if (id != scene.ego_id) {
      others.push_back(id);
    }
  }
  const int pick = k - 1;
  std::vector<CollaborationChoice> out;
  if (pick < 0 || pick > static_cast<int>(others.size())) {
    return out;
  }
  // lexicographic enumeration of index combinations
  std::vector<std::size_t> idx(static_cast<std::size_t>(pick));
  for (std::size_t i = 0; i < idx.size(); ++i) {
    idx[i] = i;
  }
  while (true) {
    std::vector<int> members{scene.ego_id};
    for (const auto i : idx) {
      members.push_back(others[i]);
    }
    out.push_back(make_collaboration(std::move(members)));
    int pos = pick - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == others.size() - static_cast<std::size_t>(pick - pos)) {
      --pos;
    }
    if (pos < 0) {
      break;
    }
    ++idx[static_cast<std::size_t>(pos)];
    for (std::size_t i = static_cast<std::size_t>(pos) + 1; i < idx.size(); ++i) {
      idx[i] = idx[i - 1] + 1;
    }
  }
  return out;
}

std::vector<double> weakness_distribution(std::span<const double> weakness, double tau)
{
  std::vector<double> p(weakness.size());
  if (weakness.empty()) {
    return p;
  }
  const double max_w = *std::max_element(weakness.begin(), weakness.end());
  double z = 0.0;
  for (std::size_t i = 0; i < weakness.size(); ++i) {
    p[i] = std::exp((weakness[i] - max_w) / tau);
    z += p[i];
  }
  for (auto & v : p) {
    v /= z;
  }
  return p;
}

std::vector<std::size_t> sample_without_replacement(std::span<const double> probabilities, std::size_t count, Rng & rng)
{
  std::vector<double> p(probabilities.begin(), probabilities.end());
  std::vector<std::size_t> drawn;
  count = std::min(count, p.size());
  while (drawn.size() < count) {
    double z = 0.0;
    for (const double v : p) {
      z += v;
    }
    std::size_t pick = p.size();
    if (z > 0.0) {
      const double u = rng.uniform() * z;
      double acc = 0.0;
      for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] <= 0.0) {
          continue;
        }
        acc += p[i];
        pick = i;
        if (u < acc) {
          break;
        }
      }
    }
    if (pick == p.size()) {
      // remaining mass underflowed; take the first undrawn index
      for (std::size_t i = 0; i < p.size(); ++i) {
        if (std::find(drawn.begin(), drawn.end(), i) == drawn.end()) {
          pick = i;
          break;
        }
      }
    }
    drawn.push_back(pick);
    p[pick] = 0.0;
  }
  return drawn;
}

CollaborationChoice normal_collaboration(const Scene & scene, int k)
{
  const Vec2 ego = scene.ego().pose.position();
  std::vector<std::pair<double, int>> by_distance;
  for (const int id : scene.intelligent_ids()) {
    if (id != scene.ego_id) {
      by_distance.emplace_back(norm(scene.agent(id).pose.position() - ego), id);
    }
  }
  if (static_cast<int>(by_distance.size()) < k - 1) {
    throw NotEnoughIntelligent("scene has " + std::to_string(by_distance.size() + 1) +
                               " intelligent agents, collaboration needs " + std::to_string(k));
  }
  std::sort(by_distance.begin(), by_distance.end());
  std::vector<int> members{scene.ego_id};
  for (int i = 0; i < k - 1; ++i) {
    members.push_back(by_distance[static_cast<std::size_t>(i)].second);
  }
  return make_collaboration(std::move(members));
}

AcsResult acs(const Scene & scene, const ModelConfig & model, const ACSConfig & config, std::uint64_t seed,
              CollaboratorStrategy strategy)
{
  config.validate();
  const std::vector<int> intelligent = scene.intelligent_ids();
  if (static_cast<int>(intelligent.size()) < config.k) {
    throw NotEnoughIntelligent("scene has " + std::to_string(intelligent.size()) +
                               " intelligent agents, ACS needs k = " + std::to_string(config.k));
  }
  const auto combos = combinations_with_ego(scene, config.k);

  AcsResult result;
  std::vector<double> weakness(combos.size(), 0.0);
  if (strategy == CollaboratorStrategy::kAttention) {
    result.importance = attention_importance(scene, intelligent).importance;
    for (std::size_t c = 0; c < combos.size(); ++c) {
      for (const int id : combos[c].members) {
        weakness[c] += 1.0 / result.importance.at(id);
      }
    }
    result.probabilities = weakness_distribution(weakness, config.tau);
  } else {
    result.probabilities.assign(combos.size(), 1.0 / static_cast<double>(combos.size()));
  }

  std::vector<std::size_t> picks;
  if (combos.size() == 1) {
    picks = {0};
  } else {
    Rng rng(seed);
    picks = sample_without_replacement(result.probabilities, static_cast<std::size_t>(config.k0), rng);
  }

  for (const std::size_t c : picks) {
    CombinationScore score;
    score.collab = combos[c];
    score.weakness = weakness[c];
    score.probability = result.probabilities[c];
    score.report = adversarial_loss(scene, combos[c], model);
    ++result.queries;
    if (result.sampled.empty() || score.report.l_adv < result.report.l_adv) {
      result.collab = score.collab;
      result.report = score.report;
    }
    result.sampled.push_back(std::move(score));
  }
  return result;
}

}  // namespace advscene
