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

#include "advscene/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

#include "advscene/errors.hpp"

namespace advscene
{

LossWeights LossWeights::defaults()
{
  return LossWeights{{{0.3, 1.0}, {0.5, 0.8}, {0.7, 0.5}}};
}

void LossWeights::validate() const
{
  if (entries.empty()) {
    throw ConfigError("loss weights must not be empty");
  }
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto [t, w] = entries[i];
    if (!(t > 0.0 && t < 1.0)) {
      throw ConfigError("IoU thresholds must lie in (0, 1)");
    }
    if (!(w > 0.0)) {
      throw ConfigError("loss weights must be positive");
    }
    if (i > 0 && !(t > entries[i - 1].first)) {
      throw ConfigError("IoU thresholds must be strictly increasing");
    }
  }
}

double EvalReport::ap_at(double threshold) const
{
  for (const auto & [t, v] : ap) {
    if (t == threshold) {
      return v;
    }
  }
  throw std::out_of_range("no AP at threshold " + std::to_string(threshold));
}

namespace
{
std::string threshold_key(double t)
{
  // thresholds are configured with at most a few decimals
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", t);
  std::string s(buf);
  if (s.find('.') == std::string::npos) {
    s += ".0";
  }
  return s;
}
}  // namespace

std::string to_json(const EvalReport & report)
{
  nlohmann::json ap = nlohmann::json::object();
  for (const auto & [t, v] : report.ap) {
    ap[threshold_key(t)] = v;
  }
  nlohmann::json doc{{"ap", ap}, {"l_adv", report.l_adv}, {"n_gt", report.n_gt}, {"n_det", report.n_det}};
  return doc.dump();
}

std::vector<std::size_t> confidence_order(std::span<const Detection> detections)
{
  std::vector<std::size_t> order(detections.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return detections[a].confidence > detections[b].confidence;
  });
  return order;
}

std::vector<MatchLabel> match(std::span<const Detection> detections, std::span<const OrientedBox> gts, double threshold)
{
  std::vector<MatchLabel> labels(detections.size(), MatchLabel::kFalsePositive);
  std::vector<bool> taken(gts.size(), false);
  for (const std::size_t d : confidence_order(detections)) {
    double best_iou = -1.0;
    std::size_t best_gt = gts.size();
    for (std::size_t g = 0; g < gts.size(); ++g) {
      if (taken[g]) {
        continue;
      }
      const double iou = obb_iou(detections[d].box, gts[g]);
      if (iou >= threshold && iou > best_iou) {
        best_iou = iou;
        best_gt = g;
      }
    }
    if (best_gt < gts.size()) {
      taken[best_gt] = true;
      labels[d] = MatchLabel::kTruePositive;
    }
  }
  return labels;
}

double ap_from_ranked(std::span<const MatchLabel> ranked, std::size_t n_gt)
{
  if (n_gt == 0) {
    return ranked.empty() ? 1.0 : 0.0;
  }
  const std::size_t n = ranked.size();
  std::vector<double> precision(n);
  std::vector<double> recall(n);
  std::size_t tp = 0;
  for (std::size_t i = 0; i < n; ++i) {
    tp += ranked[i] == MatchLabel::kTruePositive ? 1 : 0;
    precision[i] = static_cast<double>(tp) / static_cast<double>(i + 1);
    recall[i] = static_cast<double>(tp) / static_cast<double>(n_gt);
  }
  // right-max interpolation: p_interp(r_i) = max_{j >= i} p_j
  for (std::size_t i = n; i-- > 1;) {
    precision[i - 1] = std::max(precision[i - 1], precision[i]);
  }
  double ap = 0.0;
  double prev_recall = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ap += (recall[i] - prev_recall) * precision[i];
    prev_recall = recall[i];
  }
  return std::clamp(ap, 0.0, 1.0);
}

double average_precision(std::span<const Detection> detections, std::span<const OrientedBox> gts, double threshold)
{
  const auto labels = match(detections, gts, threshold);
  std::vector<MatchLabel> ranked;
  ranked.reserve(labels.size());
  for (const std::size_t d : confidence_order(detections)) {
    ranked.push_back(labels[d]);
  }
  return ap_from_ranked(ranked, gts.size());
}

EvalReport evaluate_detections(std::span<const Detection> detections, std::span<const OrientedBox> gts,
                               const LossWeights & weights)
{
  weights.validate();
  EvalReport report;
  report.n_gt = static_cast<int>(gts.size());
  report.n_det = static_cast<int>(detections.size());
  for (const auto & [t, w] : weights.entries) {
    const double ap = average_precision(detections, gts, t);
    report.ap.emplace_back(t, ap);
    report.l_adv += w * ap;
  }
  return report;
}

bool in_eval_range(const Scene & scene, Vec2 point, double half_range)
{
  const Vec2 ego = scene.ego().pose.position();
  return std::abs(point.x - ego.x) <= half_range && std::abs(point.y - ego.y) <= half_range;
}

EvalReport adversarial_loss(const Scene & scene, const CollaborationChoice & collab, const ModelConfig & model)
{
  const auto all = detect(scene, collab, model.mode, model.params);
  std::vector<Detection> dets;
  for (const auto & d : all) {
    if (in_eval_range(scene, d.box.center.position(), model.eval_half_range)) {
      dets.push_back(d);
    }
  }
  std::vector<OrientedBox> gts;
  for (const int id : ground_truth_ids(scene, collab, model.params)) {
    const OrientedBox box = scene.agent(id).footprint();
    if (in_eval_range(scene, box.center.position(), model.eval_half_range)) {
      gts.push_back(box);
    }
  }
  return evaluate_detections(dets, gts, model.weights);
}

}  // namespace advscene
