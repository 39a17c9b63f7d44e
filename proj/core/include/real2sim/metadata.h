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

#ifndef REAL2SIM_METADATA_H_
#define REAL2SIM_METADATA_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "real2sim/kinematics.h"

namespace real2sim {

// A named pose known before planning. Either numeric or a symbolic
// placeholder such as "pose_red_box" that is only bound at execution time.
struct MetadataEntry {
  std::string name;
  std::optional<Pose> pose;
  std::string placeholder;

  bool symbolic() const { return !pose.has_value(); }
};

// {"objects": [{"name": "bottle", "pose": [x, y, z]}, ...],
//  "locations": [{"name": "temporary_pose", "pose": [x, y, z, qw, qx, qy, qz]}]}
struct SceneMetadata {
  std::vector<MetadataEntry> objects;
  std::vector<MetadataEntry> locations;

  const MetadataEntry* FindObject(std::string_view name) const;
  const MetadataEntry* FindLocation(std::string_view name) const;
  bool Has(std::string_view name) const {
    return FindObject(name) != nullptr || FindLocation(name) != nullptr;
  }
};

// Gripper pointing straight down.
Eigen::Quaterniond TopDownOrientation();

// [x, y, z] (top-down), [x, y, z, roll, pitch, yaw] or
// [x, y, z, qw, qx, qy, qz]. Throws std::invalid_argument otherwise.
Pose PoseFromArray(const nlohmann::json& values);
nlohmann::json PoseToJson(const Pose& pose);

// Throws std::invalid_argument on malformed input or duplicate names.
SceneMetadata ParseMetadata(const nlohmann::json& document);
SceneMetadata LoadMetadata(const std::filesystem::path& path);
nlohmann::json ToJson(const SceneMetadata& metadata);

}  // namespace real2sim

#endif  // REAL2SIM_METADATA_H_
