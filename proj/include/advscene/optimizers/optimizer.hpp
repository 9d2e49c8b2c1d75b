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

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "advscene/feasible_set.hpp"

namespace advscene
{

/// One evaluated query of the perturbation search.
struct Observation
{
  std::size_t q_index{0};
  std::vector<double> x;  // normalized joint perturbation (an element of Q)
  double loss{0.0};
};

using History = std::vector<Observation>;

/// Black-box strategy proposing normalized joint perturbations.
///
/// The search loop owns the history. After every proposal it projects the
/// candidate onto Q and reports the element index and its loss through
/// observe(), including proposals answered from the cache.
class BlackBoxOptimizer
{
public:
  virtual ~BlackBoxOptimizer() = default;

  virtual std::string name() const = 0;
  virtual std::vector<double> propose(const History & history, const FeasibleSet & q) = 0;
  virtual void observe(std::size_t q_index, double loss)
  {
    (void)q_index;
    (void)loss;
  }
};

/// Set of Q indices already present in the history.
std::vector<bool> queried_mask(const History & history, std::size_t q_size);

}  // namespace advscene
