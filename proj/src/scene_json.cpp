// Copyright 2026 The trajpred Authors.
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

#include "trajpred/scene_json.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "trajpred/hash.hpp"

namespace trajpred
{

namespace
{

using nlohmann::json;

[[noreturn]] void fail(int record, const std::string & field, const std::string & why)
{
  throw std::runtime_error("record " + std::to_string(record) + ": " + field + ": " + why);
}

const json & field(const json & obj, const char * key, int record, const std::string & path)
{
  if (!obj.is_object()) {
    fail(record, path, "expected object");
  }
  auto it = obj.find(key);
  if (it == obj.end()) {
    fail(record, path.empty() ? key : path + "." + key, "missing field");
  }
  return *it;
}

double number(const json & v, int record, const std::string & path)
{
  if (!v.is_number()) {
    fail(record, path, "expected number");
  }
  return v.get<double>();
}

std::string text(const json & v, int record, const std::string & path)
{
  if (!v.is_string()) {
    fail(record, path, "expected string");
  }
  return v.get<std::string>();
}

Vec2 point(const json & v, int record, const std::string & path)
{
  if (!v.is_array() || v.size() != 2) {
    fail(record, path, "expected [x, y]");
  }
  return {number(v[0], record, path + "[0]"), number(v[1], record, path + "[1]")};
}

std::vector<Polygon> polygons(const json & v, int record, const std::string & path)
{
  if (!v.is_array()) {
    fail(record, path, "expected array of polygons");
  }
  std::vector<Polygon> out;
  for (size_t i = 0; i < v.size(); ++i) {
    const json & poly = v[i];
    const std::string ppath = path + "[" + std::to_string(i) + "]";
    if (!poly.is_array()) {
      fail(record, ppath, "expected array of points");
    }
    Polygon p;
    for (size_t j = 0; j < poly.size(); ++j) {
      p.push_back(point(poly[j], record, ppath + "[" + std::to_string(j) + "]"));
    }
    out.push_back(std::move(p));
  }
  return out;
}

Instance parse_instance(const json & obj, int record, int * clamp_warnings)
{
  Instance inst;
  inst.scene.timestamp = number(field(obj, "timestamp", record, ""), record, "timestamp");
  inst.scene.target_id = text(field(obj, "target_id", record, ""), record, "target_id");

  const json & agents = field(obj, "agents", record, "");
  if (!agents.is_array()) {
    fail(record, "agents", "expected array");
  }
  for (size_t i = 0; i < agents.size(); ++i) {
    const std::string apath = "agents[" + std::to_string(i) + "]";
    const json & a = agents[i];
    TrackedAgent agent;
    agent.id = text(field(a, "id", record, apath), record, apath + ".id");
    AgentCategory category;
    try {
      category =
        agent_category_from_string(text(field(a, "category", record, apath), record, apath + ".category"));
    } catch (const std::invalid_argument & e) {
      fail(record, apath + ".category", e.what());
    }
    const json & history = field(a, "history", record, apath);
    if (!history.is_array()) {
      fail(record, apath + ".history", "expected array");
    }
    for (size_t j = 0; j < history.size(); ++j) {
      const std::string hpath = apath + ".history[" + std::to_string(j) + "]";
      const json & h = history[j];
      const Vec2 pos{
        number(field(h, "x", record, hpath), record, hpath + ".x"),
        number(field(h, "y", record, hpath), record, hpath + ".y")};
      agent.history.emplace_back(
        pos, number(field(h, "heading", record, hpath), record, hpath + ".heading"),
        number(field(h, "speed", record, hpath), record, hpath + ".speed"),
        number(field(h, "accel", record, hpath), record, hpath + ".accel"),
        number(field(h, "yaw_rate", record, hpath), record, hpath + ".yaw_rate"), category,
        clamp_warnings);
    }
    inst.scene.agents.push_back(std::move(agent));
  }

  const json & map = field(obj, "map", record, "");
  inst.scene.map.drivable_area =
    polygons(field(map, "drivable_area", record, "map"), record, "map.drivable_area");
  inst.scene.map.crosswalk = polygons(field(map, "crosswalk", record, "map"), record, "map.crosswalk");
  inst.scene.map.walkway = polygons(field(map, "walkway", record, "map"), record, "map.walkway");

  const json & gt = field(obj, "ground_truth", record, "");
  if (!gt.is_array()) {
    fail(record, "ground_truth", "expected array of points");
  }
  inst.ground_truth.dt = kStepSeconds;
  for (size_t i = 0; i < gt.size(); ++i) {
    inst.ground_truth.points.push_back(
      point(gt[i], record, "ground_truth[" + std::to_string(i) + "]"));
  }

  try {
    validate_instance(inst);
  } catch (const std::invalid_argument & e) {
    fail(record, "instance", e.what());
  }
  return inst;
}

json instance_to_json(const Instance & inst)
{
  json obj;
  obj["timestamp"] = inst.scene.timestamp;
  obj["target_id"] = inst.scene.target_id;
  json agents = json::array();
  for (const auto & a : inst.scene.agents) {
    json agent;
    agent["id"] = a.id;
    agent["category"] = to_string(a.history.front().category);
    json history = json::array();
    for (const auto & s : a.history) {
      history.push_back(
        {{"x", s.position.x},
         {"y", s.position.y},
         {"heading", s.heading},
         {"speed", s.speed},
         {"accel", s.acceleration},
         {"yaw_rate", s.yaw_rate}});
    }
    agent["history"] = std::move(history);
    agents.push_back(std::move(agent));
  }
  obj["agents"] = std::move(agents);

  auto layer = [](const std::vector<Polygon> & polys) {
    json out = json::array();
    for (const auto & p : polys) {
      json poly = json::array();
      for (const auto & v : p) {
        poly.push_back({v.x, v.y});
      }
      out.push_back(std::move(poly));
    }
    return out;
  };
  obj["map"] = {
    {"drivable_area", layer(inst.scene.map.drivable_area)},
    {"crosswalk", layer(inst.scene.map.crosswalk)},
    {"walkway", layer(inst.scene.map.walkway)}};

  json gt = json::array();
  for (const auto & p : inst.ground_truth.points) {
    gt.push_back({p.x, p.y});
  }
  obj["ground_truth"] = std::move(gt);
  return obj;
}

}  // namespace

LoadResult parse_scenes(const std::string & json_text)
{
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error & e) {
    throw std::runtime_error(std::string("scene JSON parse error: ") + e.what());
  }
  if (!root.is_array()) {
    throw std::runtime_error("scene JSON: top level must be an array of instances");
  }
  LoadResult result;
  for (size_t i = 0; i < root.size(); ++i) {
    result.instances.push_back(
      parse_instance(root[i], static_cast<int>(i), &result.clamp_warnings));
  }
  return result;
}

LoadResult load_scenes(const std::string & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open scene file: " + path);
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenes(buf.str());
}

std::string scenes_to_json(const std::vector<Instance> & instances)
{
  json root = json::array();
  for (const auto & inst : instances) {
    root.push_back(instance_to_json(inst));
  }
  return root.dump(1);
}

void save_scenes(const std::vector<Instance> & instances, const std::string & path)
{
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write scene file: " + path);
  }
  out << scenes_to_json(instances) << "\n";
}

std::string dataset_hash(const std::vector<Instance> & instances)
{
  return hash_hex(scenes_to_json(instances));
}

}  // namespace trajpred
