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

#include "real2sim/sensor_log.h"

namespace real2sim::sim {
namespace {

nlohmann::json ToArray(const Eigen::VectorXd& v) {
  return nlohmann::json(std::vector<double>(v.data(), v.data() + v.size()));
}

}  // namespace

nlohmann::json ToJson(const Pose& pose) {
  const auto& p = pose.position;
  const auto& o = pose.orientation;
  return {{"position", {p.x(), p.y(), p.z()}},
          {"orientation", {o.w(), o.x(), o.y(), o.z()}}};
}

nlohmann::json ToJson(const ContactState& contact) {
  return {{"bodies", {contact.body_a, contact.body_b}},
          {"normal", contact.normal},
          {"tangential", {contact.tangential.x(), contact.tangential.y()}},
          {"sliding", contact.sliding}};
}

nlohmann::json ToJson(const SensorRecord& record) {
  nlohmann::json contacts = nlohmann::json::array();
  for (const auto& c : record.contacts) contacts.push_back(ToJson(c));
  nlohmann::json j = nlohmann::json::object();
  j["t"] = record.t;
  j["q"] = ToArray(record.q);
  j["tau_ext"] = ToArray(record.tau_ext);
  j["x_ee"] = ToJson(record.x_ee);
  j["gripper"] = {{"width", record.gripper_width}, {"closed", record.gripper_closed}};
  j["contacts"] = std::move(contacts);
  return j;
}

void SensorLogWriter::Write(const SensorRecord& record) {
  out_ << ToJson(record).dump() << '\n';
  ++records_;
}

}  // namespace real2sim::sim
