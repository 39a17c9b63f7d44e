// Copyright 2026 The real2sim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "real2sim/run_config.h"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <yaml-cpp/yaml.h>

namespace real2sim::engine {
namespace {

std::filesystem::path Resolve(const YAML::Node& node, const std::filesystem::path& base) {
  std::filesystem::path p = node.as<std::string>();
  return p.is_absolute() ? p : (base / p).lexically_normal();
}

template <typename T>
void Read(const YAML::Node& node, const char* key, T& out) {
  if (node[key]) out = node[key].as<T>();
}

void CheckKeys(const YAML::Node& node, const std::set<std::string>& allowed,
               const std::string& where) {
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (allowed.count(key) == 0) throw std::invalid_argument(where + ": unknown key '" + key + "'");
  }
}

}  // namespace

std::string_view ToString(SensorLogMode mode) {
  switch (mode) {
    case SensorLogMode::kNone: return "none";
    case SensorLogMode::kFirst: return "first";
    case SensorLogMode::kAll: return "all";
  }
  return "none";
}

void RunConfig::Validate() const {
  if (request.find_first_not_of(" \t\r\n") == std::string::npos) {
    throw std::invalid_argument("run config: 'request' is required");
  }
  if (scene.empty()) throw std::invalid_argument("run config: 'scene' is required");
  if (world.empty()) throw std::invalid_argument("run config: 'world' is required");
  if (metadata.empty()) throw std::invalid_argument("run config: 'metadata' is required");
  if (repeats < 1) throw std::invalid_argument("run config: 'repeats' must be >= 1");
  if (runtime.window < 1) throw std::invalid_argument("run config: runtime.window must be >= 1");
  if (!(runtime.timeout > 0.0)) throw std::invalid_argument("run config: runtime.timeout must be > 0");
  if (smoothing && *smoothing < 1) {
    throw std::invalid_argument("run config: estimation.smoothing must be >= 1");
  }
}

RunConfig ParseRunConfig(std::string_view yaml_text, const std::filesystem::path& base_dir) {
  RunConfig config;
  try {
    const YAML::Node root = YAML::Load(std::string(yaml_text));
    if (!root.IsMap()) throw std::invalid_argument("run config: expected a mapping");
    CheckKeys(root,
              {"request", "scene", "world", "metadata", "view", "image", "chain", "planner",
               "targets", "seed", "repeats", "sensor_log", "runtime", "estimation"},
              "run config");
    Read(root, "request", config.request);
    if (root["scene"]) config.scene = Resolve(root["scene"], base_dir);
    if (root["world"]) config.world = Resolve(root["world"], base_dir);
    if (root["metadata"]) config.metadata = Resolve(root["metadata"], base_dir);
    if (root["view"]) config.view = Resolve(root["view"], base_dir);
    if (root["image"]) config.image = Resolve(root["image"], base_dir).string();
    if (root["chain"]) config.chain = Resolve(root["chain"], base_dir);
    Read(root, "planner", config.planner);
    Read(root, "seed", config.seed);
    Read(root, "repeats", config.repeats);
    if (root["sensor_log"]) {
      const auto mode = root["sensor_log"].as<std::string>();
      if (mode == "none") config.sensor_log = SensorLogMode::kNone;
      else if (mode == "first") config.sensor_log = SensorLogMode::kFirst;
      else if (mode == "all") config.sensor_log = SensorLogMode::kAll;
      else throw std::invalid_argument("run config: sensor_log must be none, first or all");
    }
    for (const auto& t : root["targets"]) {
      planner::ParameterTarget target;
      target.name = t["name"].as<std::string>();
      for (const auto& p : t["params"]) {
        target.kinds.push_back(scene::ParamKindFromString(p.as<std::string>()));
      }
      config.targets.push_back(std::move(target));
    }
    if (const auto rt = root["runtime"]) {
      CheckKeys(rt,
                {"window", "timeout", "linear_speed", "angular_speed", "descend_speed",
                 "contact_force", "gripper_settle_ticks", "position_tolerance"},
                "runtime");
      RuntimeConfig& r = config.runtime;
      Read(rt, "window", r.window);
      Read(rt, "timeout", r.timeout);
      Read(rt, "linear_speed", r.linear_speed);
      Read(rt, "angular_speed", r.angular_speed);
      Read(rt, "descend_speed", r.descend_speed);
      Read(rt, "contact_force", r.contact_force);
      Read(rt, "gripper_settle_ticks", r.gripper_settle_ticks);
      Read(rt, "position_tolerance", r.position_tolerance);
    }
    if (const auto es = root["estimation"]) {
      CheckKeys(es, {"smoothing", "match_ratio", "plateau_fraction", "vertical_tolerance"},
                "estimation");
      if (es["smoothing"] && es["smoothing"].as<std::string>() != "auto") {
        config.smoothing = es["smoothing"].as<int>();
      }
      Read(es, "match_ratio", config.friction.match_ratio);
      Read(es, "plateau_fraction", config.friction.plateau_fraction);
      Read(es, "vertical_tolerance", config.friction.vertical_tolerance);
    }
  } catch (const YAML::Exception& e) {
    throw std::invalid_argument(std::string("run config: ") + e.what());
  }
  return config;
}

RunConfig LoadRunConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open run config " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseRunConfig(buffer.str(), path.parent_path());
}

}  // namespace real2sim::engine
