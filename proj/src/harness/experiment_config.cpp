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

#include "advscene/harness/experiment_config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "advscene/errors.hpp"
#include "advscene/hash.hpp"

namespace advscene::harness
{

namespace pt = boost::property_tree;

void ExperimentConfig::validate() const
{
  if (scenes.empty()) throw ConfigError("at least one scene is required");
  if (seeds.empty()) throw ConfigError("at least one seed is required");
  if (models.empty()) throw ConfigError("at least one model is required");
  if (optimizers.empty()) throw ConfigError("at least one optimizer is required");
  if (jobs < 1) throw ConfigError("jobs must be >= 1");
  if (!(eval_half_range > 0.0)) throw ConfigError("eval_half_range must be > 0");
  attack.acs.validate();
  attack.aps.validate();
  detector.validate();
  optimizer_settings.ga.validate();
  optimizer_settings.bo.validate();
  for (const auto & name : optimizers) {
    (void)make_optimizer(name, 0, optimizer_settings);
  }
}

ModelConfig ExperimentConfig::model_config(FusionMode mode) const
{
  ModelConfig model;
  model.mode = mode;
  model.params = detector;
  model.eval_half_range = eval_half_range;
  return model;
}

std::vector<std::string> split_list(std::string_view text)
{
  std::vector<std::string> out;
  std::string item;
  std::istringstream in{std::string(text)};
  while (std::getline(in, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    if (first == std::string::npos) {
      continue;
    }
    const auto last = item.find_last_not_of(" \t");
    out.push_back(item.substr(first, last - first + 1));
  }
  return out;
}

namespace
{

class SectionReader
{
public:
  SectionReader(const pt::ptree & tree, std::string section) : tree_(tree), section_(std::move(section)) {}

  template <typename T>
  void get(const std::string & key, T & value)
  {
    seen_.insert(key);
    const auto node = tree_.get_child_optional(key);
    if (!node) {
      return;
    }
    try {
      value = node->get_value<T>();
    } catch (const pt::ptree_bad_data &) {
      throw ConfigError("bad value for " + section_ + "." + key + ": '" + node->data() + "'");
    }
  }

  std::optional<std::string> raw(const std::string & key)
  {
    seen_.insert(key);
    const auto node = tree_.get_child_optional(key);
    if (!node) {
      return std::nullopt;
    }
    return node->data();
  }

  void get_degrees(const std::string & key, double & radians)
  {
    double deg = rad_to_deg(radians);
    get(key, deg);
    radians = deg_to_rad(deg);
  }

  void reject_unknown() const
  {
    for (const auto & [key, child] : tree_) {
      (void)child;
      if (!seen_.count(key)) {
        throw ConfigError("unknown key " + section_ + "." + key);
      }
    }
  }

private:
  const pt::ptree & tree_;
  std::string section_;
  std::set<std::string> seen_;
};

std::vector<double> parse_doubles(const std::string & text, const std::string & key)
{
  std::vector<double> out;
  for (const auto & item : split_list(text)) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception &) {
      throw ConfigError("bad number in " + key + ": '" + item + "'");
    }
  }
  return out;
}

}  // namespace

void apply_config_text(ExperimentConfig & config, std::string_view text)
{
  pt::ptree tree;
  std::istringstream in{std::string(text)};
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error & e) {
    throw ConfigError(std::string("config parse error: ") + e.message() + " at line " + std::to_string(e.line()));
  }

  static const std::set<std::string> sections{"run", "scenes", "model", "acs", "aps", "ga", "bo"};
  for (const auto & [name, child] : tree) {
    if (!sections.count(name)) {
      throw ConfigError("unknown config section [" + name + "]");
    }
    if (child.empty() && !child.data().empty()) {
      throw ConfigError("key '" + name + "' outside of any section");
    }
  }
  const pt::ptree empty;
  const auto section = [&](const std::string & name) -> const pt::ptree & {
    const auto child = tree.get_child_optional(name);
    return child ? *child : empty;
  };

  {
    SectionReader r(section("run"), "run");
    if (const auto out = r.raw("out")) config.out_dir = *out;
    r.get("jobs", config.jobs);
    r.get("timing", config.timing);
    if (const auto seeds = r.raw("seeds")) {
      config.seeds.clear();
      for (const auto & item : split_list(*seeds)) {
        try {
          config.seeds.push_back(std::stoull(item));
        } catch (const std::exception &) {
          throw ConfigError("bad seed '" + item + "'");
        }
      }
    }
    r.reject_unknown();
  }
  {
    SectionReader r(section("scenes"), "scenes");
    if (const auto paths = r.raw("paths")) {
      config.scenes.clear();
      for (const auto & item : split_list(*paths)) {
        config.scenes.emplace_back(item);
      }
    }
    r.reject_unknown();
  }
  {
    SectionReader r(section("model"), "model");
    if (const auto modes = r.raw("modes")) {
      config.models.clear();
      for (const auto & item : split_list(*modes)) {
        config.models.push_back(parse_fusion_mode(item));
      }
    }
    auto & d = config.detector;
    r.get("n_min", d.n_min);
    r.get("n_sat", d.n_sat);
    r.get("eps_max", d.eps_max);
    r.get_degrees("theta_max_deg", d.theta_max);
    r.get("nms_iou", d.nms_iou);
    r.get("fp_enabled", d.fp_enabled);
    r.get("fp_conf_scale", d.fp_conf_scale);
    r.get("score_collaborators", d.score_collaborators);
    r.get("eval_half_range", config.eval_half_range);
    r.reject_unknown();
  }
  {
    SectionReader r(section("acs"), "acs");
    r.get("k", config.attack.acs.k);
    r.get("k0", config.attack.acs.k0);
    r.get("tau", config.attack.acs.tau);
    if (const auto strategy = r.raw("strategy")) {
      if (*strategy == "attention") {
        config.attack.strategy = CollaboratorStrategy::kAttention;
      } else if (*strategy == "random") {
        config.attack.strategy = CollaboratorStrategy::kRandom;
      } else {
        throw ConfigError("acs.strategy must be attention or random, got '" + *strategy + "'");
      }
    }
    r.reject_unknown();
  }
  {
    SectionReader r(section("aps"), "aps");
    if (const auto names = r.raw("optimizers")) {
      config.optimizers = split_list(*names);
    }
    auto & a = config.attack.aps;
    r.get("budget", a.budget);
    r.get("m_targets", a.m_targets);
    r.get("nq", a.n_q);
    r.get("dx_max", a.bounds.dx_max);
    r.get("dy_max", a.bounds.dy_max);
    r.get_degrees("dtheta_max_deg", a.bounds.dtheta_max);
    r.get("allow_collaborators", a.targets.allow_collaborators);
    r.get("allow_infrastructure", a.targets.allow_infrastructure);
    r.reject_unknown();
  }
  {
    SectionReader r(section("ga"), "ga");
    auto & g = config.optimizer_settings.ga;
    r.get("population", g.population);
    r.get("elite", g.elite);
    r.get("mutation_prob", g.mutation_prob);
    r.get("mutation_scale", g.mutation_scale);
    r.get("selection_temp", g.selection_temp);
    r.reject_unknown();
  }
  {
    SectionReader r(section("bo"), "bo");
    auto & b = config.optimizer_settings.bo;
    r.get("n_init", b.n_init);
    r.get("lengthscale", b.lengthscale);
    r.get("variance", b.variance);
    r.get("noise", b.noise);
    r.get("select_lengthscale", b.select_lengthscale);
    if (const auto grid = r.raw("lengthscale_grid")) {
      b.lengthscale_grid = parse_doubles(*grid, "bo.lengthscale_grid");
    }
    r.reject_unknown();
  }
}

void apply_config_file(ExperimentConfig & config, const std::filesystem::path & path)
{
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file " + path.string());
  }
  std::ostringstream text;
  text << in.rdbuf();
  apply_config_text(config, text.str());
}

std::vector<std::filesystem::path> expand_scene_paths(std::span<const std::filesystem::path> inputs)
{
  std::vector<std::filesystem::path> out;
  for (const auto & input : inputs) {
    if (std::filesystem::is_directory(input)) {
      std::vector<std::filesystem::path> entries;
      for (const auto & entry : std::filesystem::directory_iterator(input)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") {
          entries.push_back(entry.path());
        }
      }
      std::sort(entries.begin(), entries.end());
      out.insert(out.end(), entries.begin(), entries.end());
    } else {
      out.push_back(input);
    }
  }
  return out;
}

std::uint64_t scene_seed(std::uint64_t repetition_seed, std::string_view scene_id)
{
  return hash64({repetition_seed, hash64(scene_id)});
}

std::uint64_t optimizer_seed(std::uint64_t scene_seed, std::string_view optimizer)
{
  return hash64({scene_seed, hash64(optimizer)});
}

}  // namespace advscene::harness
