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

#include "advscene/optimizers/bayesian_optimization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "advscene/errors.hpp"
#include "advscene/optimizers/random_search.hpp"

namespace advscene
{

void BOConfig::validate() const
{
  if (n_init < 1) throw ConfigError("BO n_init must be >= 1");
  if (!(lengthscale > 0.0) || !(variance > 0.0)) throw ConfigError("BO kernel parameters must be > 0");
  if (!(noise >= 0.0)) throw ConfigError("BO noise must be >= 0");
  if (select_lengthscale && lengthscale_grid.empty()) throw ConfigError("BO lengthscale grid is empty");
  for (const double l : lengthscale_grid) {
    if (!(l > 0.0)) throw ConfigError("BO lengthscale grid values must be > 0");
  }
}

BayesianOptimization::BayesianOptimization(BOConfig config, std::uint64_t seed)
: config_(std::move(config)), rng_(seed), last_lengthscale_(config_.lengthscale)
{
  config_.validate();
}

GaussianProcess fit_history(const History & history, const KernelParams & kernel, double noise)
{
  std::vector<std::vector<double>> xs;
  std::vector<double> ys;
  for (const auto & obs : history) {
    xs.push_back(obs.x);
    ys.push_back(obs.loss);
  }
  return GaussianProcess(xs, ys, kernel, noise);
}

std::vector<double> BayesianOptimization::propose(const History & history, const FeasibleSet & q)
{
  if (q.size() == 0) {
    throw EmptyFeasibleSet("BO proposal over an empty feasible set");
  }
  if (static_cast<int>(history.size()) < config_.n_init) {
    return q.elements[draw_unqueried(history, q, rng_)];
  }
  const auto mask = queried_mask(history, q.size());
  std::vector<std::size_t> open;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (!mask[i]) {
      open.push_back(i);
    }
  }
  if (open.empty()) {
    return q.elements[rng_.uniform_index(q.size())];
  }
  if (open.size() == 1) {
    return q.elements[open.front()];
  }

  KernelParams kernel{config_.lengthscale, config_.variance};
  if (config_.select_lengthscale) {
    double best_err = std::numeric_limits<double>::infinity();
    for (const double l : config_.lengthscale_grid) {
      const double err = fit_history(history, {l, config_.variance}, config_.noise).loo_mse();
      if (err < best_err) {
        best_err = err;
        kernel.lengthscale = l;
      }
    }
  }
  last_lengthscale_ = kernel.lengthscale;
  const GaussianProcess gp = fit_history(history, kernel, config_.noise);

  double best_loss = std::numeric_limits<double>::infinity();
  for (const auto & obs : history) {
    best_loss = std::min(best_loss, obs.loss);
  }
  std::size_t argmax = open.front();
  double best_ei = -1.0;
  for (const std::size_t i : open) {
    const GpPrediction p = gp.predict(q.elements[i]);
    const double ei = expected_improvement(p.mean, std::sqrt(p.variance), best_loss);
    if (ei > best_ei) {
      best_ei = ei;
      argmax = i;
    }
  }
  return q.elements[argmax];
}

}  // namespace advscene
