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

#ifndef REAL2SIM_CHAIN_CONFIG_H_
#define REAL2SIM_CHAIN_CONFIG_H_

#include <filesystem>
#include <string>
#include <string_view>

#include "real2sim/kinematics.h"

namespace real2sim {

// Chain files are YAML:
//
//   base:        {xyz: [0, 0, 0.72], rpy: [0, 0, 0]}
//   joints:
//     - {axis: [0, 0, 1], xyz: [0, 0, 0.333], rpy: [0, 0, 0]}
//     ...
//   tool_offset: {xyz: [0, 0, 0.2104], rpy: [0, 0, -0.7853981633974483]}
//   d_offset:    0.01
//   home:        [0, -0.785, 0, -2.356, 0, 1.571, 0.785]
//
// rpy follows the fixed-axis X-Y-Z convention (R = Rz * Ry * Rx).
KinematicChain ParseChainConfig(std::string_view yaml_text);
KinematicChain LoadChainConfig(const std::filesystem::path& path);

// 7-dof arm with the link geometry of a Panda and a parallel gripper tool.
KinematicChain DefaultChain();

Eigen::Quaterniond QuaternionFromRpy(double roll, double pitch, double yaw);

}  // namespace real2sim

#endif  // REAL2SIM_CHAIN_CONFIG_H_
