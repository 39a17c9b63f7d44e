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

#include "real2sim/chain_config.h"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <yaml-cpp/yaml.h>

namespace real2sim {
namespace {

Eigen::Vector3d ReadVector3(const YAML::Node& node, const char* what) {
  if (!node || !node.IsSequence() || node.size() != 3) {
    throw std::invalid_argument(std::string("chain config: '") + what +
                                "' must be a 3-element list");
  }
  return {node[0].as<double>(), node[1].as<double>(), node[2].as<double>()};
}

Eigen::Isometry3d ReadTransform(const YAML::Node& node, const char* what) {
  Eigen::Isometry3d t = Eigen::Isometry3d::Identity();
  if (!node) return t;
  if (node["xyz"]) t.translation() = ReadVector3(node["xyz"], what);
  if (node["rpy"]) {
    const Eigen::Vector3d rpy = ReadVector3(node["rpy"], what);
    t.linear() = QuaternionFromRpy(rpy.x(), rpy.y(), rpy.z()).toRotationMatrix();
  }
  return t;
}

constexpr double kHalfPi = M_PI / 2.0;

}  // namespace

Eigen::Quaterniond QuaternionFromRpy(double roll, double pitch, double yaw) {
  return (Eigen::AngleAxisd(yaw, Eigen::Vector3d::UnitZ()) *
          Eigen::AngleAxisd(pitch, Eigen::Vector3d::UnitY()) *
          Eigen::AngleAxisd(roll, Eigen::Vector3d::UnitX()))
      .normalized();
}

KinematicChain ParseChainConfig(std::string_view yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml_text));
  } catch (const YAML::Exception& e) {
    throw std::invalid_argument(std::string("chain config: ") + e.what());
  }
  KinematicChain chain;
  chain.base = ReadTransform(root["base"], "base");
  const YAML::Node joints = root["joints"];
  if (!joints || !joints.IsSequence()) {
    throw std::invalid_argument("chain config: 'joints' list is required");
  }
  for (const auto& node : joints) {
    RevoluteJoint joint;
    if (node["axis"]) joint.axis = ReadVector3(node["axis"], "axis").normalized();
    joint.offset = ReadTransform(node, "joint offset");
    chain.joints.push_back(joint);
  }
  chain.tool_offset = ReadTransform(root["tool_offset"], "tool_offset");
  if (root["d_offset"]) chain.d_offset = root["d_offset"].as<double>();
  if (root["home"]) {
    const auto values = root["home"].as<std::vector<double>>();
    chain.home = Eigen::Map<const Eigen::VectorXd>(values.data(), values.size());
  } else {
    chain.home = Eigen::VectorXd::Zero(chain.dof());
  }
  chain.Validate();
  return chain;
}

KinematicChain LoadChainConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open chain config " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseChainConfig(buffer.str());
}

KinematicChain DefaultChain() {
  // Modified DH (a, d, alpha) rows rewritten as offset transforms:
  // translation (a, -sin(alpha) d, cos(alpha) d), rotation RotX(alpha).
  struct Row {
    double a, d, alpha;
  };
  constexpr Row kRows[] = {
      {0.0, 0.333, 0.0},       {0.0, 0.0, -kHalfPi}, {0.0, 0.316, kHalfPi},
      {0.0825, 0.0, kHalfPi},  {-0.0825, 0.384, -kHalfPi},
      {0.0, 0.0, kHalfPi},     {0.088, 0.0, kHalfPi},
  };
  KinematicChain chain;
  chain.base.translation() = Eigen::Vector3d(0.0, 0.0, 0.72);
  for (const Row& row : kRows) {
    RevoluteJoint joint;
    joint.offset.translation() = Eigen::Vector3d(
        row.a, -std::sin(row.alpha) * row.d, std::cos(row.alpha) * row.d);
    joint.offset.linear() =
        Eigen::AngleAxisd(row.alpha, Eigen::Vector3d::UnitX()).toRotationMatrix();
    chain.joints.push_back(joint);
  }
  // Flange (0.107) plus hand centre (0.1034), hand rotated by -pi/4.
  chain.tool_offset.translation() = Eigen::Vector3d(0.0, 0.0, 0.2104);
  chain.tool_offset.linear() =
      Eigen::AngleAxisd(-M_PI / 4.0, Eigen::Vector3d::UnitZ()).toRotationMatrix();
  chain.d_offset = 0.01;
  chain.home.resize(7);
  chain.home << 0.0, -M_PI / 4.0, 0.0, -3.0 * M_PI / 4.0, 0.0, M_PI / 2.0, M_PI / 4.0;
  return chain;
}

}  // namespace real2sim
