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

#include "advscene/optimizers/gaussian_process.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "advscene/errors.hpp"

namespace advscene
{

double squared_exponential(std::span<const double> a, std::span<const double> b, const KernelParams & kernel)
{
  double d2 = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    d2 += d * d;
  }
  return kernel.variance * std::exp(-d2 / (2.0 * kernel.lengthscale * kernel.lengthscale));
}

GaussianProcess::GaussianProcess(const std::vector<std::vector<double>> & inputs, std::span<const double> targets,
                                 const KernelParams & kernel, double noise)
: inputs_(inputs), kernel_(kernel)
{
  const auto n = static_cast<Eigen::Index>(inputs.size());
  if (n == 0 || targets.size() != inputs.size()) {
    throw ConfigError("GP needs matching, non-empty inputs and targets");
  }
  mean_ = std::accumulate(targets.begin(), targets.end(), 0.0) / static_cast<double>(targets.size());

  Eigen::MatrixXd k(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      const double v = squared_exponential(inputs[static_cast<std::size_t>(i)], inputs[static_cast<std::size_t>(j)], kernel);
      k(i, j) = v;
      k(j, i) = v;
    }
  }
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    y(i) = targets[static_cast<std::size_t>(i)] - mean_;
  }

  static constexpr double kJitter[] = {0.0, 1e-8, 1e-6};
  bool ok = false;
  for (const double jitter : kJitter) {
    Eigen::MatrixXd kn = k;
    kn.diagonal().array() += noise + jitter;
    llt_.compute(kn);
    if (llt_.info() == Eigen::Success) {
      jitter_ = jitter;
      ok = true;
      break;
    }
  }
  if (!ok) {
    throw SingularKernel("kernel matrix is not positive definite even with 1e-6 jitter");
  }
  alpha_ = llt_.solve(y);
}

GpPrediction GaussianProcess::predict(std::span<const double> x) const
{
  const auto n = static_cast<Eigen::Index>(inputs_.size());
  Eigen::VectorXd ks(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    ks(i) = squared_exponential(inputs_[static_cast<std::size_t>(i)], x, kernel_);
  }
  GpPrediction p;
  p.mean = mean_ + ks.dot(alpha_);
  const Eigen::VectorXd v = llt_.matrixL().solve(ks);
  p.variance = std::max(0.0, kernel_.variance - v.squaredNorm());
  return p;
}

double GaussianProcess::loo_mse() const
{
  const auto n = static_cast<Eigen::Index>(inputs_.size());
  const Eigen::MatrixXd inv = llt_.solve(Eigen::MatrixXd::Identity(n, n));
  double sum = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double r = alpha_(i) / inv(i, i);
    sum += r * r;
  }
  return sum / static_cast<double>(n);
}

double expected_improvement(double mean, double stddev, double best)
{
  const double gain = best - mean;
  if (!(stddev > 1e-12)) {
    return std::max(gain, 0.0);
  }
  const double z = gain / stddev;
  const double cdf = 0.5 * std::erfc(-z / std::numbers::sqrt2);
  const double pdf = std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
  return std::max(0.0, gain * cdf + stddev * pdf);
}

}  // namespace advscene
