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

#include "advscene/optimizers/random_search.hpp"

#include "advscene/errors.hpp"

namespace advscene
{

std::vector<bool> queried_mask(const History & history, std::size_t q_size)
{
  std::vector<bool> mask(q_size, false);
  for (const auto & obs : history) {
    if (obs.q_index < q_size) {
      mask[obs.q_index] = true;
    }
  }
  return mask;
}

std::size_t draw_unqueried(const History & history, const FeasibleSet & q, Rng & rng)
{
  if (q.size() == 0) {
    throw EmptyFeasibleSet("random draw from an empty feasible set");
  }
  const auto mask = queried_mask(history, q.size());
  std::vector<std::size_t> open;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (!mask[i]) {
      open.push_back(i);
    }
  }
  if (open.empty()) {
    return rng.uniform_index(q.size());
  }
  return open[rng.uniform_index(open.size())];
}

std::vector<double> RandomSearch::propose(const History & history, const FeasibleSet & q)
{
  return q.elements[draw_unqueried(history, q, rng_)];
}

}  // namespace advscene
