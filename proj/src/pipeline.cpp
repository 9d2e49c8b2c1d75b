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

#include "advscene/pipeline.hpp"

#include "advscene/hash.hpp"

namespace advscene
{

AttackResult generate_challenging(const Scene & scene, const ModelConfig & model, const AttackConfig & config,
                                  BlackBoxOptimizer & optimizer, std::uint64_t seed)
{
  AttackResult result;
  result.normal_collab = normal_collaboration(scene, config.acs.k);
  result.original = adversarial_loss(scene, result.normal_collab, model);

  result.acs = acs(scene, model, config.acs, hash64({seed, 1}), config.strategy);
  if (result.acs.report.l_adv < result.original.l_adv) {
    result.collab = result.acs.collab;
    result.post_acs = result.acs.report;
  } else {
    result.collab = result.normal_collab;
    result.post_acs = result.original;
  }

  result.aps = aps(scene, result.collab, model, optimizer, config.aps, hash64({seed, 2}));
  result.post_aps = result.aps.best_report;
  result.adversarial = apply_perturbation(scene, result.aps.best);
  return result;
}

}  // namespace advscene
