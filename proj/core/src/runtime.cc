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

#include "real2sim/runtime.h"

#include <algorithm>
#include <cmath>
#include <utility>

namespace real2sim {
namespace {

nlohmann::json WrenchJson(const Wrench& w) {
  const Vector6d v = w.AsVector();
  return std::vector<double>(v.data(), v.data() + 6);
}

}  // namespace

Runtime::Runtime(sim::World& world, RuntimeConfig config, SceneMetadata metadata)
    : world_(world), config_(std::move(config)), metadata_(std::move(metadata)) {
  config_.gains.Validate();
  state_ = world_.InitialState();
  setpoint_ = state_.x;
  compliance_ = config_.gains.stiffness.completeOrthogonalDecomposition().pseudoInverse();
  for (auto& entry : metadata_.objects) {
    if (entry.pose) continue;
    if (auto observed = world_.ObjectPose(entry.name)) {
      entry.pose = Pose{observed->position, TopDownOrientation()};
    }
  }
}

std::optional<Pose> Runtime::ResolveTarget(const nlohmann::json& pose,
                                           const nlohmann::json& offset,
                                           std::string& error) {
  std::optional<Pose> target;
  std::string name = "pose";
  if (pose.is_string()) {
    name = pose.get<std::string>();
    const MetadataEntry* entry = metadata_.FindObject(name);
    if (entry == nullptr) entry = metadata_.FindLocation(name);
    if (entry == nullptr) {
      error = "unknown pose reference '" + name + "'";
      return std::nullopt;
    }
    if (!entry->pose) {
      error = "pose unavailable for '" + name + "'";
      return std::nullopt;
    }
    target = *entry->pose;
  } else {
    try {
      target = PoseFromArray(pose);
    } catch (const std::invalid_argument& e) {
      error = e.what();
      return std::nullopt;
    }
  }
  if (!offset.is_null()) {
    if (!offset.is_array() || offset.size() != 3) {
      error = "offset must be a list of 3 numbers";
      return std::nullopt;
    }
    for (int i = 0; i < 3; ++i) target->position[i] += offset[i].get<double>();
  }
  last_target_ = name;
  return target;
}

std::optional<Wrench> Runtime::Tick(const Pose& setpoint, const Eigen::VectorXd* joint_target,
                                    double commanded_speed, bool motion) {
  const KinematicChain& chain = world_.chain();
  const JacobianMatrix jacobian = Jacobian(ComputeFrames(chain, state_.q));
  const JointTorques tau_ext = world_.SenseExternalTorques(state_);
  last_torque_norm_ = tau_ext.tau.norm();
  const Wrench sensed = WrenchFromTorques(jacobian, tau_ext).wrench;
  if (sink_) {
    sink_({world_.time(), state_.q, tau_ext.tau, state_.x, state_.gripper_width,
           state_.gripper_closed, world_.ContactForces(state_)});
  }
  if (stream_ && motion) {
    const Vector6d twist = jacobian * state_.qdot;
    stream_->t.push_back(world_.time());
    stream_->w.push_back(WrenchJson(sensed));
    stream_->v_cmd.push_back(commanded_speed);
    stream_->v_act.push_back(twist.head<2>().norm());
  }
  const JointTorques tau =
      joint_target != nullptr
          ? JointPdTorque(state_, *joint_target, config_.joint_gains)
          : ImpedanceTorque(state_, {setpoint, chain.home}, config_.gains, jacobian);
  if (world_.Step(state_, tau, world_.dt()) != sim::StepStatus::kOk) return std::nullopt;
  return sensed;
}

bool Runtime::Settled(const Pose& target, const Wrench& sensed) const {
  // The arm is compliant: under a steady external wrench it rests at
  // x_d + K^-1 w, so that deflection is removed before comparing.
  const Vector6d error = PoseError(state_.x, target) - compliance_ * sensed.AsVector();
  return error.head<3>().norm() < config_.position_tolerance &&
         error.tail<3>().norm() < config_.orientation_tolerance &&
         state_.qdot.norm() < config_.settle_speed;
}

MotionResult Runtime::MovePose(const Pose& target) {
  const Pose start = setpoint_;
  const Eigen::Vector3d delta = target.position - start.position;
  const double angle = start.orientation.angularDistance(target.orientation);
  const double duration =
      std::max(delta.norm() / config_.linear_speed, angle / config_.angular_speed);
  const double dt = world_.dt();
  const double horizontal_speed = duration > 0.0 ? delta.head<2>().norm() / duration : 0.0;
  for (long k = 0;; ++k) {
    const double t = k * dt;
    if (t > config_.timeout) return {false, "timeout"};
    const double a = duration > 0.0 ? std::min(1.0, t / duration) : 1.0;
    Pose sp;
    sp.position = start.position + a * delta;
    sp.orientation = start.orientation.slerp(a, target.orientation);
    const auto sensed = Tick(sp, nullptr, a < 1.0 ? horizontal_speed : 0.0, true);
    if (!sensed) return {false, "simulator fault"};
    setpoint_ = sp;
    if (a >= 1.0 && Settled(target, *sensed)) return {true, ""};
  }
}

MotionResult Runtime::MoveJoints(const Eigen::VectorXd& q_desired) {
  if (q_desired.size() != state_.q.size()) return {false, "joint vector has wrong size"};
  const double dt = world_.dt();
  for (long k = 0;; ++k) {
    if ((q_desired - state_.q).cwiseAbs().maxCoeff() < config_.joint_tolerance &&
        state_.qdot.norm() < config_.settle_speed) {
      setpoint_ = state_.x;
      return {true, ""};
    }
    if (k * dt > config_.timeout) return {false, "timeout"};
    if (!Tick(setpoint_, &q_desired, 0.0, true)) return {false, "simulator fault"};
  }
}

double Runtime::TorqueThreshold() const {
  const JacobianMatrix jacobian = Jacobian(world_.chain(), state_.q);
  Vector6d probe = Vector6d::Zero();
  probe[2] = config_.contact_force;
  return (jacobian.transpose() * probe).norm();
}

std::optional<Pose> Runtime::MoveDownUntilContact(std::string& note) {
  Pose sp = setpoint_;
  const double dt = world_.dt();
  for (long k = 0;; ++k) {
    if (k * dt > config_.timeout) {
      note = "timeout";
      return std::nullopt;
    }
    const double threshold = TorqueThreshold();
    const Pose sensed_at = state_.x;
    if (!Tick(sp, nullptr, 0.0, true)) {
      note = "simulator fault";
      return std::nullopt;
    }
    if (last_torque_norm_ > threshold) {
      setpoint_ = sensed_at;
      return sensed_at;
    }
    setpoint_ = sp;
    sp.position.z() -= config_.descend_speed * dt;
    if (sp.position.z() < config_.workspace_floor) {
      note = "reached workspace floor without contact";
      return std::nullopt;
    }
  }
}

std::vector<Wrench> Runtime::SampleWrenches(int ticks) {
  std::vector<Wrench> samples;
  samples.reserve(ticks);
  for (int i = 0; i < ticks; ++i) {
    const auto sensed = Tick(setpoint_, nullptr, 0.0, false);
    if (!sensed) break;
    samples.push_back(*sensed);
  }
  return samples;
}

void Runtime::Gripper(sim::GripperAction action) {
  world_.GripperCommand(state_, action);
  for (int i = 0; i < config_.gripper_settle_ticks; ++i) {
    if (!Tick(setpoint_, nullptr, 0.0, false)) break;
  }
}

void Runtime::ArmStream(const std::string& key, const Wrench& baseline,
                        const std::string& leaf) {
  stream_ = Stream{};
  stream_->key = key;
  stream_->leaf = leaf;
  stream_->baseline = baseline;
}

std::optional<std::pair<std::string, nlohmann::json>> Runtime::TakeStream() {
  if (!stream_) return std::nullopt;
  nlohmann::json record = {{"baseline", WrenchJson(stream_->baseline)},
                           {"bias", WrenchJson(bias_.value_or(Wrench{}))},
                           {"leaf", stream_->leaf},
                           {"t", std::move(stream_->t)},
                           {"w", std::move(stream_->w)},
                           {"v_cmd", std::move(stream_->v_cmd)},
                           {"v_act", std::move(stream_->v_act)}};
  auto out = std::make_pair(stream_->key, std::move(record));
  stream_.reset();
  return out;
}

}  // namespace real2sim
