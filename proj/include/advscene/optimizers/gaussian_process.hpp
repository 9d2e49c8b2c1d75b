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

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace advscene
{

struct KernelParams
{
  double lengthscale{0.5};
  double variance{1.0};
};

/// k(x, x') = variance * exp(-|x - x'|^2 / (2 lengthscale^2))
double squared_exponential(std::span<const double> a, std::span<const double> b, const KernelParams & kernel);

struct GpPrediction
{
  double mean{0.0};
  double variance{0.0};  // latent function variance, observation noise excluded
};

/// Exact GP regression with a constant prior mean equal to the sample mean
/// of the targets.
///
/// The kernel matrix K + noise * I is factorized by Cholesky. A failed
/// factorization is retried with 1e-8 and then 1e-6 added to the diagonal
/// before SingularKernel is thrown.
class GaussianProcess
{
public:
  GaussianProcess(const std::vector<std::vector<double>> & inputs, std::span<const double> targets,
                  const KernelParams & kernel, double noise);

  GpPrediction predict(std::span<const double> x) const;

  /// Mean squared leave-one-out residual, from the closed form
  /// r_i = [K^-1 y]_i / [K^-1]_ii.
  double loo_mse() const;

  double prior_mean() const { return mean_; }
  /// Diagonal jitter that was finally added on top of the noise.
  double jitter() const { return jitter_; }

private:
  std::vector<std::vector<double>> inputs_;
  KernelParams kernel_;
  double mean_{0.0};
  double jitter_{0.0};
  Eigen::LLT<Eigen::MatrixXd> llt_;
  Eigen::VectorXd alpha_;
};

/// Expected improvement below `best` for a Gaussian prediction. Zero when the
/// standard deviation vanishes and the mean is not below best.
double expected_improvement(double mean, double stddev, double best);

}  // namespace advscene
