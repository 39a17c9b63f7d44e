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

#include "real2sim/world_config.h"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <yaml-cpp/yaml.h>

namespace real2sim::sim {
namespace {

template <int N>
Eigen::Matrix<double, N, 1> ReadVector(const YAML::Node& node, const std::string& what) {
  if (!node || !node.IsSequence() || node.size() != N) {
    throw std::invalid_argument("world config: '" + what + "' needs " +
                                std::to_string(N) + " numbers");
  }
  Eigen::Matrix<double, N, 1> v;
  for (int i = 0; i < N; ++i) v[i] = node[i].as<double>();
  return v;
}

template <typename T>
void ReadIfPresent(const YAML::Node& node, const char* key, T& out) {
  if (node[key]) out = node[key].as<T>();
}

}  // namespace

GroundTruthWorld ParseWorldConfig(std::string_view yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml_text));
  } catch (const YAML::Exception& e) {
    throw std::invalid_argument(std::string("world config: ") + e.what());
  }
  GroundTruthWorld world;
  try {
    if (const YAML::Node p = root["params"]) {
      WorldParams& params = world.params;
      ReadIfPresent(p, "gravity", params.gravity);
      ReadIfPresent(p, "dt", params.dt);
      ReadIfPresent(p, "seed", params.seed);
      ReadIfPresent(p, "noise_sigma_torque", params.noise_sigma_torque);
      ReadIfPresent(p, "penalty_stiffness", params.penalty_stiffness);
      ReadIfPresent(p, "tangential_stiffness", params.tangential_stiffness);
      ReadIfPresent(p, "grasp_tolerance", params.grasp_tolerance);
      ReadIfPresent(p, "drop_tolerance", params.drop_tolerance);
      ReadIfPresent(p, "max_gripper_width", params.max_gripper_width);
      ReadIfPresent(p, "seat_clearance", params.seat_clearance);
      ReadIfPresent(p, "seat_band", params.seat_band);
      ReadIfPresent(p, "joint_inertia", params.joint_inertia);
      ReadIfPresent(p, "joint_viscous", params.joint_viscous);
    }
    for (const auto& node : root["surfaces"]) {
      SurfaceSpec surface;
      surface.name = node["name"].as<std::string>();
      surface.height = node["height"].as<double>();
      if (node["center"]) surface.center = ReadVector<2>(node["center"], "center");
      if (node["half_extent"]) {
        surface.half_extent = ReadVector<2>(node["half_extent"], "half_extent");
      }
      world.surfaces.push_back(surface);
    }
    for (const auto& node : root["objects"]) {
      ObjectSpec object;
      object.name = node["name"].as<std::string>();
      const std::string shape = node["shape"] ? node["shape"].as<std::string>() : "box";
      if (shape == "cylinder") {
        object.shape = ShapeKind::kCylinder;
      } else if (shape != "box") {
        throw std::invalid_argument("world config: unknown shape '" + shape + "'");
      }
      object.size = ReadVector<3>(node["size"], "size");
      object.pose.position = ReadVector<3>(node["position"], "position");
      const double yaw = node["yaw"] ? node["yaw"].as<double>() : 0.0;
      object.pose.orientation = Eigen::AngleAxisd(yaw, Eigen::Vector3d::UnitZ());
      object.mass = node["mass"].as<double>();
      ReadIfPresent(node, "static_mu", object.static_mu);
      ReadIfPresent(node, "dynamic_mu", object.dynamic_mu);
      world.objects.push_back(object);
    }
  } catch (const YAML::Exception& e) {
    throw std::invalid_argument(std::string("world config: ") + e.what());
  }
  world.Validate();
  return world;
}

GroundTruthWorld LoadWorldConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open world file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseWorldConfig(buffer.str());
}

}  // namespace real2sim::sim
