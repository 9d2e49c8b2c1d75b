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
#include <vector>

#include "advscene/optimizers/gaussian_process.hpp"
#include "advscene/optimizers/optimizer.hpp"
#include "advscene/rng.hpp"

namespace advscene
{

struct BOConfig
{
  int n_init{5};
  double lengthscale{0.5};
  double variance{1.0};
  double noise{1e-6};
  /// Pick the lengthscale from `lengthscale_grid` by leave-one-out error
  /// before every proposal.
  bool select_lengthscale{false};
  std::vector<double> lengthscale_grid{0.25, 0.5, 1.0};

  void validate() const;
};

/// GP-EI over the finite feasible set. The first n_init history entries come
/// from uniform draws; afterwards EI is evaluated at every unqueried element
/// and the argmax (lowest index on ties) is proposed.
class BayesianOptimization final : public BlackBoxOptimizer
{
public:
  BayesianOptimization(BOConfig config, std::uint64_t seed);

  std::string name() const override { return "bo"; }
  std::vector<double> propose(const History & history, const FeasibleSet & q) override;

  /// Lengthscale used by the most recent model-based proposal.
  double last_lengthscale() const { return last_lengthscale_; }

private:
  BOConfig config_;
  Rng rng_;
  double last_lengthscale_;
};

/// GP fitted to the history with the given kernel.
GaussianProcess fit_history(const History & history, const KernelParams & kernel, double noise);

}  // namespace advscene
