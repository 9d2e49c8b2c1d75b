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

#include "advscene/acs.hpp"
#include "advscene/aps.hpp"

namespace advscene
{

struct AttackConfig
{
  ACSConfig acs{};
  CollaboratorStrategy strategy{CollaboratorStrategy::kAttention};
  ApsConfig aps{};
};

struct AttackResult
{
  Scene adversarial;
  CollaborationChoice normal_collab;
  CollaborationChoice collab;
  AcsResult acs;
  ApsResult aps;
  EvalReport original;
  EvalReport post_acs;
  EvalReport post_aps;
};

/// Two-stage challenging-scene generation: collaborator search on the
/// unperturbed scene, then perturbation search with the chosen collaboration
/// fixed.
///
/// The normal collaboration stays in the running during the first stage, so
/// post_acs never exceeds original; the zero perturbation anchors the second,
/// so post_aps never exceeds post_acs.
AttackResult generate_challenging(const Scene & scene, const ModelConfig & model, const AttackConfig & config,
                                  BlackBoxOptimizer & optimizer, std::uint64_t seed);

}  // namespace advscene
