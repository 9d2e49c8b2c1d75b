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

#include "advscene/occlusion.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "advscene/errors.hpp"

namespace advscene
{

std::vector<Vec2> boundary_samples(const OrientedBox & box, int count)
{
  const auto c = corners(box);
  const double perimeter = 2.0 * (box.length + box.width);
  const double edge_len[4] = {box.length, box.width, box.length, box.width};
  std::vector<Vec2> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    double s = (static_cast<double>(i) + 0.5) * perimeter / static_cast<double>(count);
    // walk the CCW corner loop; edge k runs c[k] -> c[k+1]
    std::size_t k = 0;
    while (k < 3 && s > edge_len[k]) {
      s -= edge_len[k];
      ++k;
    }
    const Vec2 a = c[k];
    const Vec2 b = c[(k + 1) % 4];
    out.push_back(a + (s / edge_len[k]) * (b - a));
  }
  return out;
}

namespace
{
struct Blocker
{
  OrientedBox box;
  int agent_id;  // -1 for obstacles
};
}  // namespace

std::map<int, int> occlusion_scores(const Scene & scene, std::span<const int> viewpoints)
{
  std::map<int, int> scores;
  for (const auto & a : scene.agents) {
    scores[a.id] = 0;
  }

  for (const int vp : viewpoints) {
    const Agent & viewer = scene.agent(vp);
    if (!viewer.sensor) {
      throw NoSensor("occlusion viewpoint " + std::to_string(vp) + " has no sensor");
    }
    const Vec2 origin = viewer.pose.position();
    const double range = viewer.sensor->range_m;

    std::vector<Blocker> blockers;
    for (const auto & a : scene.agents) {
      if (a.id != vp) {
        blockers.push_back({a.footprint(), a.id});
      }
    }
    for (const auto & o : scene.obstacles) {
      blockers.push_back({o, -1});
    }

    // occluder id -> occludees it blocks from this viewpoint
    std::map<int, std::set<int>> blocks;
    for (const auto & target : scene.agents) {
      if (target.id == vp) {
        continue;
      }
      int blocked = 0;
      int clear = 0;
      for (const Vec2 sample : boundary_samples(target.footprint())) {
        if (norm(sample - origin) > range) {
          continue;
        }
        bool hit = false;
        for (const auto & b : blockers) {
          if (b.agent_id == target.id) {
            continue;
          }
          if (segment_blocked_by(origin, sample, b.box)) {
            hit = true;
            if (b.agent_id >= 0) {
              blocks[b.agent_id].insert(target.id);
            }
          }
        }
        (hit ? blocked : clear) += 1;
      }
      if (blocked > 0 && clear > 0) {
        scores[target.id] += 1;
      }
    }
    for (const auto & [occluder, occludees] : blocks) {
      scores[occluder] += static_cast<int>(occludees.size());
    }
  }
  return scores;
}

std::vector<int> select_targets(const Scene & scene, const CollaborationChoice & collab, int m,
                                const TargetOptions & options)
{
  if (m < 1) {
    throw ConfigError("number of perturbation targets must be >= 1");
  }
  std::vector<int> eligible;
  for (const auto & a : scene.agents) {
    // ego anchors the evaluation window, so it is never a target
    if (a.id == scene.ego_id) {
      continue;
    }
    if (!options.allow_collaborators && collab.contains(a.id)) {
      continue;
    }
    if (!options.allow_infrastructure && a.infrastructure) {
      continue;
    }
    eligible.push_back(a.id);
  }
  if (static_cast<int>(eligible.size()) < m) {
    throw NotEnoughAgents("need " + std::to_string(m) + " perturbation targets, only " +
                          std::to_string(eligible.size()) + " eligible");
  }
  const auto scores = occlusion_scores(scene, collab.members);
  std::sort(eligible.begin(), eligible.end(), [&](int a, int b) {
    const int sa = scores.at(a);
    const int sb = scores.at(b);
    return sa != sb ? sa > sb : a < b;
  });
  eligible.resize(static_cast<std::size_t>(m));
  return eligible;
}

}  // namespace advscene
