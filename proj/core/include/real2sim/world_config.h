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

#ifndef REAL2SIM_WORLD_CONFIG_H_
#define REAL2SIM_WORLD_CONFIG_H_

#include <filesystem>
#include <string_view>

#include "real2sim/world.h"

namespace real2sim::sim {

// Ground-truth world files are YAML and are read only by the simulator:
//
//   params: {gravity: 9.81, dt: 0.001, seed: 1, noise_sigma_torque: 0.05}
//   surfaces:
//     - {name: table, height: 0.765, center: [0.5, 0], half_extent: [0.4, 0.6]}
//   objects:
//     - name: bottle
//       shape: cylinder          # or box
//       size: [0.07, 0.07, 0.2]  # full extents
//       position: [0.5, 0, 0.865]
//       yaw: 0
//       mass: 0.254
//       static_mu: 0.5
//       dynamic_mu: 0.4
GroundTruthWorld ParseWorldConfig(std::string_view yaml_text);
GroundTruthWorld LoadWorldConfig(const std::filesystem::path& path);

}  // namespace real2sim::sim

#endif  // REAL2SIM_WORLD_CONFIG_H_
