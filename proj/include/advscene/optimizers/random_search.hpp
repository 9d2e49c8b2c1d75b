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

#include "advscene/optimizers/optimizer.hpp"
#include "advscene/rng.hpp"

namespace advscene
{

/// Uniform draws over the not-yet-queried elements of Q; once every element
/// has been queried, uniform over all of Q.
class RandomSearch final : public BlackBoxOptimizer
{
public:
  explicit RandomSearch(std::uint64_t seed) : rng_(seed) {}

  std::string name() const override { return "rs"; }
  std::vector<double> propose(const History & history, const FeasibleSet & q) override;

private:
  Rng rng_;
};

/// Uniform index among the elements of Q not in the history, or among all of
/// Q when exhausted.
std::size_t draw_unqueried(const History & history, const FeasibleSet & q, Rng & rng);

}  // namespace advscene
