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

#include "advscene/harness/results.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "advscene/errors.hpp"
#include "advscene/scene_io.hpp"

namespace advscene::harness
{

std::string_view to_string(Stage stage)
{
  switch (stage) {
    case Stage::kNormal:
      return "normal";
    case Stage::kPostAcs:
      return "post_acs";
    case Stage::kPostAps:
      return "post_aps";
  }
  return "normal";
}

Stage parse_stage(std::string_view text)
{
  if (text == "normal") return Stage::kNormal;
  if (text == "post_acs") return Stage::kPostAcs;
  if (text == "post_aps") return Stage::kPostAps;
  throw ParseError("stage", "unknown stage '" + std::string(text) + "'");
}

std::string format_double(double value)
{
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

ResultRow make_row(std::string scene_id, std::string model, Stage stage, std::string optimizer, std::uint64_t seed,
                   const EvalReport & report, int queries_used, double elapsed_ms)
{
  ResultRow row;
  row.scene_id = std::move(scene_id);
  row.model = std::move(model);
  row.stage = stage;
  row.optimizer = std::move(optimizer);
  row.seed = seed;
  row.ap03 = report.ap_at(0.3);
  row.ap05 = report.ap_at(0.5);
  row.ap07 = report.ap_at(0.7);
  row.l_adv = report.l_adv;
  row.queries_used = queries_used;
  row.elapsed_ms = elapsed_ms;
  return row;
}

std::string to_csv_line(const ResultRow & row)
{
  std::string line;
  line += row.scene_id;
  line += ',';
  line += row.model;
  line += ',';
  line += to_string(row.stage);
  line += ',';
  line += row.optimizer;
  line += ',';
  line += std::to_string(row.seed);
  for (const double v : {row.ap03, row.ap05, row.ap07, row.l_adv}) {
    line += ',';
    line += format_double(v);
  }
  line += ',';
  line += std::to_string(row.queries_used);
  line += ',';
  line += format_double(row.elapsed_ms);
  return line;
}

std::string results_csv(std::span<const ResultRow> rows)
{
  std::string out(kResultsHeader);
  out += '\n';
  for (const auto & row : rows) {
    out += to_csv_line(row);
    out += '\n';
  }
  return out;
}

namespace
{

template <typename T>
T parse_number(const std::string & text, const char * column, std::size_t line)
{
  T value{};
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw ParseError(std::string(column), "line " + std::to_string(line) + ": bad value '" + text + "'");
  }
  return value;
}

double parse_real(const std::string & text, const char * column, std::size_t line)
{
  // from_chars for double is missing on older standard libraries
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception &) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw ParseError(std::string(column), "line " + std::to_string(line) + ": bad value '" + text + "'");
  }
  return value;
}

}  // namespace

std::vector<ResultRow> parse_results_csv(std::string_view text)
{
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != kResultsHeader) {
    throw ParseError("header", "results CSV header mismatch");
  }
  std::vector<ResultRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) {
      continue;
    }
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) {
      cells.push_back(cell);
    }
    if (cells.size() != 11) {
      throw ParseError("row", "line " + std::to_string(line_no) + ": expected 11 columns");
    }
    ResultRow row;
    row.scene_id = cells[0];
    row.model = cells[1];
    row.stage = parse_stage(cells[2]);
    row.optimizer = cells[3];
    row.seed = parse_number<std::uint64_t>(cells[4], "seed", line_no);
    row.ap03 = parse_real(cells[5], "ap03", line_no);
    row.ap05 = parse_real(cells[6], "ap05", line_no);
    row.ap07 = parse_real(cells[7], "ap07", line_no);
    row.l_adv = parse_real(cells[8], "l_adv", line_no);
    row.queries_used = parse_number<int>(cells[9], "queries_used", line_no);
    row.elapsed_ms = parse_real(cells[10], "elapsed_ms", line_no);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string detections_csv(std::string_view scene_id, FusionMode mode, std::span<const Detection> detections)
{
  std::string out = "scene_id,mode,x,y,yaw_deg,length,width,confidence\n";
  for (const auto & d : detections) {
    out += scene_id;
    out += ',';
    out += to_string(mode);
    for (const double v : {d.box.center.x, d.box.center.y, yaw_to_degrees(d.box.center.yaw), d.box.length,
                           d.box.width, d.confidence}) {
      out += ',';
      out += format_double(v);
    }
    out += '\n';
  }
  return out;
}

namespace
{

nlohmann::json ap_object(const EvalReport & report)
{
  nlohmann::json ap = nlohmann::json::object();
  for (const auto & [t, v] : report.ap) {
    ap[format_double(t)] = v;
  }
  return ap;
}

}  // namespace

std::string attack_report_json(const AttackResult & result, const ReportContext & context)
{
  nlohmann::json delta = nlohmann::json::array();
  for (const auto & d : result.aps.best.deltas) {
    delta.push_back({d.dx, d.dy, rad_to_deg(d.dtheta)});
  }
  nlohmann::json doc;
  doc["scene_id"] = context.scene_id;
  doc["collab"] = result.collab.members;
  doc["targets"] = result.aps.targets;
  doc["delta"] = delta;
  doc["l_adv"] = {{"original", result.original.l_adv},
                  {"post_acs", result.post_acs.l_adv},
                  {"post_aps", result.post_aps.l_adv}};
  doc["ap"] = {{"original", ap_object(result.original)},
               {"post_acs", ap_object(result.post_acs)},
               {"post_aps", ap_object(result.post_aps)}};
  doc["optimizer"] = context.optimizer;
  doc["budget"] = context.budget;
  doc["seed"] = context.seed;
  doc["scene_file"] = context.scene_file;
  doc["adversarial_scene_file"] = context.adversarial_scene_file;
  return doc.dump(2) + "\n";
}

StoredReport parse_attack_report(std::string_view text)
{
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception & e) {
    throw ParseError("<root>", e.what());
  }
  const auto field = [&](const char * key) -> const nlohmann::json & {
    if (!doc.is_object() || !doc.contains(key)) {
      throw ParseError(key, "missing field");
    }
    return doc.at(key);
  };
  StoredReport report;
  try {
    report.scene_id = field("scene_id").get<std::string>();
    report.collab = make_collaboration(field("collab").get<std::vector<int>>());
    report.targets = field("targets").get<std::vector<int>>();
    const auto & l = field("l_adv");
    report.original = l.at("original").get<double>();
    report.post_acs = l.at("post_acs").get<double>();
    report.post_aps = l.at("post_aps").get<double>();
    report.optimizer = field("optimizer").get<std::string>();
    report.seed = field("seed").get<std::uint64_t>();
    report.scene_file = field("scene_file").get<std::string>();
    report.adversarial_scene_file = field("adversarial_scene_file").get<std::string>();
  } catch (const nlohmann::json::exception & e) {
    throw ParseError("<report>", e.what());
  }
  return report;
}

void write_text_file(const std::filesystem::path & path, std::string_view text)
{
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error("cannot write " + path.string());
  }
  out << text;
  if (!out) {
    throw Error("write failed for " + path.string());
  }
}

std::string read_text_file(const std::filesystem::path & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error("cannot read " + path.string());
  }
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

}  // namespace advscene::harness
