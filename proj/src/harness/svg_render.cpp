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

#include "advscene/harness/svg_render.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "advscene/harness/results.hpp"
#include "advscene/lidar.hpp"

namespace advscene::harness
{

namespace
{

class Canvas
{
public:
  Canvas(const MapBounds & bounds, double ppm) : bounds_(bounds), ppm_(ppm) {}

  double width() const { return (bounds_.xmax - bounds_.xmin) * ppm_; }
  double height() const { return (bounds_.ymax - bounds_.ymin) * ppm_; }

  // SVG y grows downward
  std::string px(Vec2 p) const
  {
    return format_double((p.x - bounds_.xmin) * ppm_) + "," + format_double((bounds_.ymax - p.y) * ppm_);
  }
  std::string sx(double x) const { return format_double((x - bounds_.xmin) * ppm_); }
  std::string sy(double y) const { return format_double((bounds_.ymax - y) * ppm_); }
  std::string len(double m) const { return format_double(m * ppm_); }

  std::string polygon(const OrientedBox & box) const
  {
    std::string points;
    for (const Vec2 & c : corners(box)) {
      if (!points.empty()) {
        points += ' ';
      }
      points += px(c);
    }
    return points;
  }

private:
  MapBounds bounds_;
  double ppm_;
};

}  // namespace

std::string render_svg(const Scene & scene, const RenderOptions & options)
{
  const Canvas canvas(scene.bounds, options.pixels_per_meter);
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << format_double(canvas.width()) << "\" height=\""
      << format_double(canvas.height()) << "\" viewBox=\"0 0 " << format_double(canvas.width()) << ' '
      << format_double(canvas.height()) << "\">\n";
  svg << "<rect class=\"map-frame\" x=\"0\" y=\"0\" width=\"" << format_double(canvas.width()) << "\" height=\""
      << format_double(canvas.height()) << "\" fill=\"#fafafa\" stroke=\"#333\" stroke-width=\"2\"/>\n";

  for (const auto & obstacle : scene.obstacles) {
    svg << "<polygon class=\"obstacle\" points=\"" << canvas.polygon(obstacle) << "\" fill=\"#999\"/>\n";
  }

  if (options.draw_points && scene.find(scene.ego_id) != nullptr) {
    std::vector<int> viewpoints;
    if (options.collab) {
      viewpoints = options.collab->members;
    } else if (scene.ego().sensor) {
      viewpoints = {scene.ego_id};
    }
    for (const int id : viewpoints) {
      const Agent * agent = scene.find(id);
      if (agent == nullptr || !agent->sensor) {
        continue;
      }
      for (const auto & p : scan(scene, id).points) {
        svg << "<circle class=\"point\" cx=\"" << canvas.sx(p.position.x) << "\" cy=\"" << canvas.sy(p.position.y)
            << "\" r=\"1\" fill=\"#2a9d8f\"/>\n";
      }
    }
  }

  for (const auto & agent : scene.agents) {
    const bool ego = agent.id == scene.ego_id;
    const bool collaborator = options.collab && options.collab->contains(agent.id) && !ego;
    std::string fill = agent.intelligent ? "#8ecae6" : "#ddd";
    if (ego) {
      fill = "#e63946";
    }
    const std::string stroke = collaborator ? "#1d3557" : "#555";
    const char * width = collaborator ? "3" : "1";
    svg << "<polygon class=\"agent" << (ego ? " ego" : "") << (collaborator ? " collaborator" : "")
        << "\" points=\"" << canvas.polygon(agent.footprint()) << "\" fill=\"" << fill << "\" stroke=\"" << stroke
        << "\" stroke-width=\"" << width << "\"/>\n";
  }

  for (const int id : options.targets) {
    const Agent * agent = scene.find(id);
    if (agent == nullptr) {
      continue;
    }
    const double radius = 0.5 * std::hypot(agent->length, agent->width) + 1.0;
    svg << "<circle class=\"target\" cx=\"" << canvas.sx(agent->pose.x) << "\" cy=\"" << canvas.sy(agent->pose.y)
        << "\" r=\"" << canvas.len(radius) << "\" fill=\"none\" stroke=\"#0077b6\" stroke-width=\"2\"/>\n";
  }

  for (const auto & det : options.detections) {
    svg << "<polygon class=\"detection\" points=\"" << canvas.polygon(det.box)
        << "\" fill=\"none\" stroke=\"#f4a261\" stroke-width=\"1.5\" stroke-dasharray=\"4 2\"/>\n";
  }

  for (const auto & agent : scene.agents) {
    svg << "<text class=\"agent-label\" x=\"" << canvas.sx(agent.pose.x) << "\" y=\"" << canvas.sy(agent.pose.y)
        << "\" font-size=\"10\" text-anchor=\"middle\">" << agent.id << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace advscene::harness
