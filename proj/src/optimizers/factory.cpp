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

#include "advscene/optimizers/factory.hpp"

#include <string>

#include "advscene/errors.hpp"

namespace advscene
{

std::unique_ptr<BlackBoxOptimizer> make_optimizer(std::string_view name, std::uint64_t seed,
                                                  const OptimizerSettings & settings)
{
  if (name == "rs") {
    return std::make_unique<RandomSearch>(seed);
  }
  if (name == "ga") {
    return std::make_unique<GeneticAlgorithm>(settings.ga, seed);
  }
  if (name == "bo") {
    return std::make_unique<BayesianOptimization>(settings.bo, seed);
  }
  throw ConfigError("unknown optimizer '" + std::string(name) + "' (expected rs, ga or bo)");
}

}  // namespace advscene
