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

#ifndef REAL2SIM_RUN_CONFIG_H_
#define REAL2SIM_RUN_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "real2sim/measurements.h"
#include "real2sim/plan_checks.h"
#include "real2sim/runtime.h"

namespace real2sim::engine {

enum class SensorLogMode { kNone, kFirst, kAll };

// One pipeline invocation. Relative paths in the YAML file are resolved
// against the file's directory:
//
//   request: "Measure the mass of the bottle and the height of the table."
//   scene: scenes/bottle_table.xml
//   world: worlds/bottle_table.yaml
//   metadata: metadata/bottle_table.json
//   view: views/bottle_table.json     # optional, objects visible in the image
//   image: images/bottle_table.png    # optional, forwarded to the planner
//   chain: chains/panda.yaml          # optional, default 7-dof arm
//   planner: mock:height+mass         # or "remote"
//   targets:                          # optional, default every body
//     - {name: bottle, params: [mass]}
//   seed: 1
//   repeats: 1
//   sensor_log: first                 # none | first | all
//   runtime: {window: 200, timeout: 20}
//   estimation: {smoothing: auto, match_ratio: 0.5, plateau_fraction: 0.5}
struct RunConfig {
  std::string request;
  std::filesystem::path scene;
  std::filesystem::path world;
  std::filesystem::path metadata;
  std::optional<std::filesystem::path> view;
  std::string image;
  std::optional<std::filesystem::path> chain;
  std::string planner = "mock:height+mass";
  std::vector<planner::ParameterTarget> targets;
  std::uint64_t seed = 1;
  int repeats = 1;
  SensorLogMode sensor_log = SensorLogMode::kFirst;
  RuntimeConfig runtime;
  est::FrictionOptions friction;
  // Unset means 1 for a noise-free world and 9 otherwise.
  std::optional<int> smoothing;

  // Throws std::invalid_argument on values out of range.
  void Validate() const;
};

// Throws std::invalid_argument with the offending key. Required fields are
// checked later by Validate so command-line overrides can fill them.
RunConfig ParseRunConfig(std::string_view yaml_text, const std::filesystem::path& base_dir);
RunConfig LoadRunConfig(const std::filesystem::path& path);

std::string_view ToString(SensorLogMode mode);

}  // namespace real2sim::engine

#endif  // REAL2SIM_RUN_CONFIG_H_
