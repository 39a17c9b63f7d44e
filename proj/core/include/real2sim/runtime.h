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

#ifndef REAL2SIM_RUNTIME_H_
#define REAL2SIM_RUNTIME_H_

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "real2sim/control.h"
#include "real2sim/metadata.h"
#include "real2sim/sensor_log.h"
#include "real2sim/world.h"

namespace real2sim {

struct RuntimeConfig {
  ImpedanceGains gains = ImpedanceGains::Default();
  JointGains joint_gains;
  double linear_speed = 0.05;   // m/s, MovePose interpolation
  double angular_speed = 0.5;   // rad/s
  double descend_speed = 0.02;  // m/s
  double position_tolerance = 0.005;
  double orientation_tolerance = 0.034906585039886591;  // 2 degrees
  double joint_tolerance = 0.01;
  double settle_speed = 0.02;  // rad/s, joint velocity norm
  double contact_force = 3.0;  // N at the tool, converted through J^T
  int window = 200;            // ticks per static measurement
  int gripper_settle_ticks = 50;
  double timeout = 20.0;  // s per motion action
  double workspace_floor = 0.0;
};

struct MotionResult {
  bool ok = false;
  std::string note;
};

// Robot side of an execution: control loop, sensing, and pose resolution.
// Reads the world only through the sensing interface, the gripper command and
// the initial pose service.
class Runtime {
 public:
  using SensorSink = std::function<void(const sim::SensorRecord&)>;

  // Placeholder poses in `metadata` are bound to observed poses here; every
  // object reference then resolves to this snapshot.
  Runtime(sim::World& world, RuntimeConfig config, SceneMetadata metadata);

  void SetSensorSink(SensorSink sink) { sink_ = std::move(sink); }

  // Resolves a pose argument (name or numeric array) plus optional offset and
  // remembers the name as the current target.
  std::optional<Pose> ResolveTarget(const nlohmann::json& pose, const nlohmann::json& offset,
                                    std::string& error);

  MotionResult MovePose(const Pose& target);
  MotionResult MoveJoints(const Eigen::VectorXd& q_desired);
  // On success returns the tool pose at the first tick whose sensed torque
  // norm exceeds the contact threshold.
  std::optional<Pose> MoveDownUntilContact(std::string& note);
  // Holds the current set point for `ticks` ticks and returns the sensed
  // wrench of each.
  std::vector<Wrench> SampleWrenches(int ticks);
  void Gripper(sim::GripperAction action);

  // Force stream: every motion tick after ArmStream records the sensed
  // wrench and commanded / actual horizontal speeds until TakeStream. The
  // record also carries the free-space bias captured before the grasp.
  void ArmStream(const std::string& key, const Wrench& baseline, const std::string& leaf);
  bool stream_armed() const { return stream_.has_value(); }
  // Returns {key, record} and disarms; nullopt when nothing was armed.
  std::optional<std::pair<std::string, nlohmann::json>> TakeStream();

  double TorqueThreshold() const;

  const RobotState& state() const { return state_; }
  const sim::World& world() const { return world_; }
  const RuntimeConfig& config() const { return config_; }
  const SceneMetadata& metadata() const { return metadata_; }
  double Now() const { return world_.time(); }
  const std::string& last_target() const { return last_target_; }
  const std::string& grasp_target() const { return grasp_target_; }
  void set_grasp_target(std::string name) { grasp_target_ = std::move(name); }
  const std::optional<Wrench>& bias() const { return bias_; }
  void set_bias(const Wrench& bias) { bias_ = bias; }
  const Pose& setpoint() const { return setpoint_; }

 private:
  struct Stream {
    std::string key;
    std::string leaf;
    Wrench baseline;
    nlohmann::json t = nlohmann::json::array();
    nlohmann::json w = nlohmann::json::array();
    nlohmann::json v_cmd = nlohmann::json::array();
    nlohmann::json v_act = nlohmann::json::array();
  };

  // One control tick towards `setpoint` (Cartesian) or `joint_target`.
  // Returns the sensed wrench, or nullopt on a simulator fault.
  std::optional<Wrench> Tick(const Pose& setpoint, const Eigen::VectorXd* joint_target,
                             double commanded_speed, bool motion);
  bool Settled(const Pose& target, const Wrench& sensed) const;

  sim::World& world_;
  RuntimeConfig config_;
  SceneMetadata metadata_;
  RobotState state_;
  Pose setpoint_;
  Matrix6d compliance_ = Matrix6d::Zero();
  SensorSink sink_;
  std::optional<Stream> stream_;
  std::optional<Wrench> bias_;
  double last_torque_norm_ = 0.0;
  std::string last_target_;
  std::string grasp_target_;
};

}  // namespace real2sim

#endif  // REAL2SIM_RUNTIME_H_
