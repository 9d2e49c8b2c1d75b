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
#include <memory>
#include <string_view>

#include "advscene/optimizers/bayesian_optimization.hpp"
#include "advscene/optimizers/genetic_algorithm.hpp"
#include "advscene/optimizers/random_search.hpp"

namespace advscene
{

struct OptimizerSettings
{
  GAConfig ga{};
  BOConfig bo{};
};

/// "rs", "ga" or "bo". Throws ConfigError for anything else.
std::unique_ptr<BlackBoxOptimizer> make_optimizer(std::string_view name, std::uint64_t seed,
                                                  const OptimizerSettings & settings = {});

}  // namespace advscene
