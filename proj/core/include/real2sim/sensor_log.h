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

#ifndef REAL2SIM_SENSOR_LOG_H_
#define REAL2SIM_SENSOR_LOG_H_

#include <array>
#include <ostream>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "real2sim/world.h"

namespace real2sim::sim {

// One tick of robot-side sensing. Holds nothing the robot could not measure.
struct SensorRecord {
  double t = 0.0;
  Eigen::VectorXd q;
  Eigen::VectorXd tau_ext;
  Pose x_ee;
  double gripper_width = 0.0;
  bool gripper_closed = false;
  std::vector<ContactState> contacts;
};

// Top-level keys of a serialized record, in emission order.
inline constexpr std::array<std::string_view, 6> kSensorRecordKeys = {
    "t", "q", "tau_ext", "x_ee", "gripper", "contacts"};

nlohmann::json ToJson(const SensorRecord& record);
nlohmann::json ToJson(const ContactState& contact);
nlohmann::json ToJson(const Pose& pose);

// JSONL sink, one line per record.
class SensorLogWriter {
 public:
  explicit SensorLogWriter(std::ostream& out) : out_(out) {}
  void Write(const SensorRecord& record);
  long records() const { return records_; }

 private:
  std::ostream& out_;
  long records_ = 0;
};

}  // namespace real2sim::sim

#endif  // REAL2SIM_SENSOR_LOG_H_
