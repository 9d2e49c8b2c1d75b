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

#include "advscene/scene_io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "advscene/errors.hpp"

namespace advscene
{

using nlohmann::json;

double yaw_to_degrees(double radians)
{
  const double direct = rad_to_deg(radians);
  if (deg_to_rad(direct) == radians) {
    return direct;
  }
  double up = direct;
  double down = direct;
  for (int step = 0; step < 256; ++step) {
    up = std::nextafter(up, INFINITY);
    if (deg_to_rad(up) == radians) {
      return up;
    }
    down = std::nextafter(down, -INFINITY);
    if (deg_to_rad(down) == radians) {
      return down;
    }
  }
  return direct;
}

namespace
{
json box_json(const OrientedBox & box)
{
  json j = json::object();
  j["x"] = box.center.x;
  j["y"] = box.center.y;
  j["yaw_deg"] = yaw_to_degrees(box.center.yaw);
  j["length"] = box.length;
  j["width"] = box.width;
  return j;
}

class Reader
{
public:
  Reader(const json & node, std::string path) : node_(node), path_(std::move(path)) {}

  std::string field_path(const std::string & key) const { return path_.empty() ? key : path_ + "." + key; }

  void require_object(const std::set<std::string> & allowed) const
  {
    if (!node_.is_object()) {
      throw ParseError(path_.empty() ? "<root>" : path_, "expected an object");
    }
    for (const auto & [key, value] : node_.items()) {
      if (allowed.count(key) == 0) {
        throw ParseError(field_path(key), "unknown key");
      }
    }
  }

  const json & at(const std::string & key) const
  {
    const auto it = node_.find(key);
    if (it == node_.end()) {
      throw ParseError(field_path(key), "missing");
    }
    return *it;
  }

  bool has(const std::string & key) const { return node_.contains(key); }

  double number(const std::string & key) const
  {
    const json & v = at(key);
    if (!v.is_number()) {
      throw ParseError(field_path(key), "expected a number");
    }
    const double d = v.get<double>();
    if (!std::isfinite(d)) {
      throw ParseError(field_path(key), "expected a finite number");
    }
    return d;
  }

  long long integer(const std::string & key) const
  {
    const json & v = at(key);
    if (!v.is_number_integer()) {
      throw ParseError(field_path(key), "expected an integer");
    }
    return v.get<long long>();
  }

  std::uint64_t unsigned_integer(const std::string & key) const
  {
    const json & v = at(key);
    if (v.is_number_unsigned()) {
      return v.get<std::uint64_t>();
    }
    if (v.is_number_integer() && v.get<long long>() >= 0) {
      return static_cast<std::uint64_t>(v.get<long long>());
    }
    throw ParseError(field_path(key), "expected a non-negative integer");
  }

  bool boolean(const std::string & key) const
  {
    const json & v = at(key);
    if (!v.is_boolean()) {
      throw ParseError(field_path(key), "expected true or false");
    }
    return v.get<bool>();
  }

  int small_int(const std::string & key) const
  {
    const long long v = integer(key);
    if (v < INT32_MIN || v > INT32_MAX) {
      throw ParseError(field_path(key), "integer out of range");
    }
    return static_cast<int>(v);
  }

private:
  const json & node_;
  std::string path_;
};

OrientedBox read_box(const Reader & r)
{
  OrientedBox box;
  box.center.x = r.number("x");
  box.center.y = r.number("y");
  box.center.yaw = deg_to_rad(r.number("yaw_deg"));
  box.length = r.number("length");
  box.width = r.number("width");
  return box;
}
}  // namespace

std::string save_scene(const Scene & scene)
{
  json doc = json::object();
  doc["version"] = scene.version;
  doc["seed"] = scene.seed;
  doc["map_bounds"] = json::array({scene.bounds.xmin, scene.bounds.ymin, scene.bounds.xmax, scene.bounds.ymax});
  doc["ego_id"] = scene.ego_id;
  json agents = json::array();
  for (const auto & a : scene.agents) {
    json j = box_json(a.footprint());
    j["id"] = a.id;
    j["intelligent"] = a.intelligent;
    if (a.sensor) {
      j["sensor"] = json{{"range_m", a.sensor->range_m}, {"beams", a.sensor->beams}};
    } else {
      j["sensor"] = nullptr;
    }
    if (a.infrastructure) {
      j["infrastructure"] = true;
    }
    agents.push_back(std::move(j));
  }
  doc["agents"] = std::move(agents);
  json obstacles = json::array();
  for (const auto & o : scene.obstacles) {
    obstacles.push_back(box_json(o));
  }
  doc["obstacles"] = std::move(obstacles);
  return doc.dump(2) + "\n";
}

Scene load_scene(std::string_view text)
{
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error & e) {
    throw ParseError("<root>", e.what());
  }
  const Reader root(doc, "");
  root.require_object({"version", "seed", "map_bounds", "ego_id", "agents", "obstacles"});

  Scene scene;
  scene.version = root.small_int("version");
  if (scene.version != Scene::kVersion) {
    throw ParseError("version", "unsupported version " + std::to_string(scene.version));
  }
  scene.seed = root.unsigned_integer("seed");

  const json & bounds = root.at("map_bounds");
  if (!bounds.is_array() || bounds.size() != 4) {
    throw ParseError("map_bounds", "expected [xmin, ymin, xmax, ymax]");
  }
  double bv[4];
  for (std::size_t i = 0; i < 4; ++i) {
    if (!bounds[i].is_number()) {
      throw ParseError("map_bounds[" + std::to_string(i) + "]", "expected a number");
    }
    bv[i] = bounds[i].get<double>();
  }
  scene.bounds = {bv[0], bv[1], bv[2], bv[3]};
  scene.ego_id = root.small_int("ego_id");

  const json & agents = root.at("agents");
  if (!agents.is_array()) {
    throw ParseError("agents", "expected an array");
  }
  for (std::size_t i = 0; i < agents.size(); ++i) {
    const std::string path = "agents[" + std::to_string(i) + "]";
    const Reader r(agents[i], path);
    r.require_object({"id", "x", "y", "yaw_deg", "length", "width", "intelligent", "sensor", "infrastructure"});
    Agent a;
    a.id = r.small_int("id");
    const OrientedBox box = read_box(r);
    a.pose = box.center;
    a.length = box.length;
    a.width = box.width;
    a.intelligent = r.boolean("intelligent");
    a.infrastructure = r.has("infrastructure") ? r.boolean("infrastructure") : false;
    const json & sensor = r.at("sensor");
    if (!sensor.is_null()) {
      const Reader s(sensor, path + ".sensor");
      s.require_object({"range_m", "beams"});
      SensorSpec spec;
      spec.range_m = s.number("range_m");
      spec.beams = s.small_int("beams");
      spec.mount = a.infrastructure ? SensorMount::kInfrastructure : SensorMount::kVehicle;
      a.sensor = spec;
    }
    scene.agents.push_back(a);
  }

  const json & obstacles = root.at("obstacles");
  if (!obstacles.is_array()) {
    throw ParseError("obstacles", "expected an array");
  }
  for (std::size_t i = 0; i < obstacles.size(); ++i) {
    const Reader r(obstacles[i], "obstacles[" + std::to_string(i) + "]");
    r.require_object({"x", "y", "yaw_deg", "length", "width"});
    scene.obstacles.push_back(read_box(r));
  }

  scene.validate();
  return scene;
}

Scene load_scene_file(const std::filesystem::path & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error("cannot open scene file " + path.string());
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return load_scene(buffer.str());
}

void save_scene_file(const Scene & scene, const std::filesystem::path & path)
{
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error("cannot write scene file " + path.string());
  }
  out << save_scene(scene);
}

}  // namespace advscene
