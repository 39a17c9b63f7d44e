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

#include "real2sim/metadata.h"

#include <fstream>
#include <set>
#include <stdexcept>

#include "real2sim/chain_config.h"

namespace real2sim {
namespace {

std::vector<MetadataEntry> ParseEntries(const nlohmann::json& list, const char* what,
                                        std::set<std::string>& names) {
  std::vector<MetadataEntry> out;
  if (list.is_null()) return out;
  if (!list.is_array()) {
    throw std::invalid_argument(std::string("metadata: '") + what + "' must be a list");
  }
  for (const auto& item : list) {
    MetadataEntry entry;
    if (!item.contains("name") || !item["name"].is_string()) {
      throw std::invalid_argument(std::string("metadata: ") + what + " entry without name");
    }
    entry.name = item["name"].get<std::string>();
    if (!names.insert(entry.name).second) {
      throw std::invalid_argument("metadata: duplicate name '" + entry.name + "'");
    }
    const auto& pose = item.value("pose", nlohmann::json());
    if (pose.is_string()) {
      entry.placeholder = pose.get<std::string>();
    } else {
      entry.pose = PoseFromArray(pose);
    }
    out.push_back(std::move(entry));
  }
  return out;
}

nlohmann::json EntriesToJson(const std::vector<MetadataEntry>& entries) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& e : entries) {
    out.push_back({{"name", e.name},
                   {"pose", e.pose ? PoseToJson(*e.pose) : nlohmann::json(e.placeholder)}});
  }
  return out;
}

}  // namespace

const MetadataEntry* SceneMetadata::FindObject(std::string_view name) const {
  for (const auto& e : objects) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

const MetadataEntry* SceneMetadata::FindLocation(std::string_view name) const {
  for (const auto& e : locations) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

Eigen::Quaterniond TopDownOrientation() { return Eigen::Quaterniond(0.0, 1.0, 0.0, 0.0); }

Pose PoseFromArray(const nlohmann::json& values) {
  if (!values.is_array() || (values.size() != 3 && values.size() != 6 && values.size() != 7)) {
    throw std::invalid_argument("pose must be a list of 3, 6 or 7 numbers");
  }
  std::vector<double> v;
  for (const auto& x : values) {
    if (!x.is_number()) throw std::invalid_argument("pose entries must be numbers");
    v.push_back(x.get<double>());
  }
  Pose pose;
  pose.position = Eigen::Vector3d(v[0], v[1], v[2]);
  if (v.size() == 3) {
    pose.orientation = TopDownOrientation();
  } else if (v.size() == 6) {
    pose.orientation = QuaternionFromRpy(v[3], v[4], v[5]);
  } else {
    pose.orientation = Eigen::Quaterniond(v[3], v[4], v[5], v[6]);
    if (pose.orientation.norm() < 1e-9) {
      throw std::invalid_argument("pose quaternion must be non-zero");
    }
    pose.orientation.normalize();
  }
  return pose;
}

nlohmann::json PoseToJson(const Pose& pose) {
  const auto& p = pose.position;
  const auto& q = pose.orientation;
  return {p.x(), p.y(), p.z(), q.w(), q.x(), q.y(), q.z()};
}

SceneMetadata ParseMetadata(const nlohmann::json& document) {
  if (!document.is_object()) throw std::invalid_argument("metadata must be an object");
  std::set<std::string> names;
  SceneMetadata metadata;
  metadata.objects = ParseEntries(document.value("objects", nlohmann::json()), "objects", names);
  metadata.locations =
      ParseEntries(document.value("locations", nlohmann::json()), "locations", names);
  return metadata;
}

SceneMetadata LoadMetadata(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open metadata " + path.string());
  nlohmann::json document;
  try {
    document = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("metadata " + path.string() + ": " + e.what());
  }
  return ParseMetadata(document);
}

nlohmann::json ToJson(const SceneMetadata& metadata) {
  return {{"objects", EntriesToJson(metadata.objects)},
          {"locations", EntriesToJson(metadata.locations)}};
}

}  // namespace real2sim
