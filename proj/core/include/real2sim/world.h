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

#ifndef REAL2SIM_WORLD_H_
#define REAL2SIM_WORLD_H_

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "real2sim/kinematics.h"

namespace real2sim::sim {

enum class ShapeKind { kBox, kCylinder };

struct ObjectSpec {
  std::string name;
  ShapeKind shape = ShapeKind::kBox;
  // Full extents: box (x, y, z); cylinder (diameter, diameter, height).
  Eigen::Vector3d size = Eigen::Vector3d::Constant(0.05);
  Pose pose;
  double mass = 0.1;
  double static_mu = 0.5;
  double dynamic_mu = 0.4;
};

// Horizontal support plane with an axis-aligned rectangular footprint.
struct SurfaceSpec {
  std::string name;
  double height = 0.0;
  Eigen::Vector2d center = Eigen::Vector2d::Zero();
  Eigen::Vector2d half_extent = Eigen::Vector2d::Constant(0.5);
};

struct WorldParams {
  double gravity = 9.81;
  double dt = 0.001;
  std::uint64_t seed = 1;
  double noise_sigma_torque = 0.05;
  double penalty_stiffness = 1.0e4;
  // Stiffness of the sticking contact anchor.
  double tangential_stiffness = 1.0e4;
  double grasp_tolerance = 0.02;
  double drop_tolerance = 0.05;
  double max_gripper_width = 0.08;
  // A held object keeps its full weight on a support while its bottom sits
  // less than `seat_clearance` above it; the load moves to the gripper over
  // the following `seat_band`.
  double seat_clearance = 0.001;
  double seat_band = 0.001;
  // Diagonal joint admittance: virtual inertia and viscous friction.
  double joint_inertia = 0.2;
  double joint_viscous = 0.1;
};

struct GroundTruthWorld {
  std::vector<ObjectSpec> objects;
  std::vector<SurfaceSpec> surfaces;
  WorldParams params;

  // Throws std::invalid_argument when masses, friction or dt are invalid.
  void Validate() const;
};

struct ContactState {
  std::string body_a;
  std::string body_b;
  double normal = 0.0;
  Eigen::Vector2d tangential = Eigen::Vector2d::Zero();
  bool sliding = false;
};

struct AttachmentState {
  std::optional<std::string> held_object;
  Eigen::Isometry3d grasp_offset = Eigen::Isometry3d::Identity();
  // Objects resting on the held one; they travel with it.
  std::vector<std::string> passengers;
};

struct WorldEvent {
  double t = 0.0;
  std::string kind;  // "attach", "release", "drop", "close_empty"
  std::string object;
  Pose pose;
};

// What the robot side may learn about an object: its name and current pose.
struct ObservedObject {
  std::string name;
  Pose pose;
};

enum class StepStatus { kOk, kFault };
enum class GripperAction { kOpen, kClose };

// Quasi-static micro-physics standing in for the lab. Owns the ground truth
// and the only RNG; nothing outside this class reads masses, friction
// coefficients or surface heights.
class World {
 public:
  World(GroundTruthWorld truth, KinematicChain chain);

  RobotState InitialState() const;

  // Advances one tick. Joint accelerations come from the commanded torque plus
  // the physical external torque through the diagonal joint admittance.
  // Non-finite inputs leave the world untouched and return kFault.
  StepStatus Step(RobotState& state, const JointTorques& tau_cmd, double dt);

  // tau_ext = J^T (w_payload + w_contact) + N(0, sigma^2) per joint.
  JointTorques SenseExternalTorques(const RobotState& state);

  void GripperCommand(RobotState& state, GripperAction action);

  std::vector<ContactState> ContactForces(const RobotState& state) const;

  // Noise-free external wrench at the tool, for tests and diagnostics.
  Wrench ExternalWrench(const RobotState& state) const;

  std::vector<ObservedObject> ObservePoses() const;
  std::optional<Pose> ObjectPose(const std::string& name) const;

  const AttachmentState& attachment() const { return attachment_; }
  const std::vector<WorldEvent>& events() const { return events_; }
  const KinematicChain& chain() const { return chain_; }
  double time() const { return time_; }
  double dt() const { return truth_.params.dt; }
  double gravity() const { return truth_.params.gravity; }
  double max_gripper_width() const { return truth_.params.max_gripper_width; }

 private:
  struct ObjectState {
    ObjectSpec spec;
    Pose pose;
  };
  struct Support {
    std::string name;
    double top = 0.0;
  };
  struct FrictionMemory {
    Eigen::Vector2d anchor = Eigen::Vector2d::Zero();
    bool sliding = false;
  };
  struct Interaction {
    Wrench wrench;  // on the tool, about the tool origin
    std::vector<ContactState> contacts;
    std::map<std::string, FrictionMemory> memory;
  };

  Interaction Evaluate(const RobotState& state) const;
  ObjectState* Find(const std::string& name);
  const ObjectState* Find(const std::string& name) const;
  std::vector<std::string> HeldGroup() const;
  std::optional<Support> SupportBelow(const ObjectState& object, double bottom,
                                      const std::vector<std::string>& exclude) const;
  std::vector<std::string> RestingOn(const std::string& name) const;
  void PlaceOnSupport(ObjectState& object);
  void UpdateHeldPoses(const Eigen::Isometry3d& tool);

  GroundTruthWorld truth_;
  KinematicChain chain_;
  std::vector<ObjectState> objects_;
  AttachmentState attachment_;
  std::map<std::string, Eigen::Isometry3d> passenger_offsets_;
  std::map<std::string, FrictionMemory> friction_;
  std::vector<WorldEvent> events_;
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  double time_ = 0.0;
};

}  // namespace real2sim::sim

#endif  // REAL2SIM_WORLD_H_
