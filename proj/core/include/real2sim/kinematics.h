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

#ifndef REAL2SIM_KINEMATICS_H_
#define REAL2SIM_KINEMATICS_H_

#include <vector>

#include <Eigen/Dense>
#include <Eigen/Geometry>

namespace real2sim {

using Vector6d = Eigen::Matrix<double, 6, 1>;
using Matrix6d = Eigen::Matrix<double, 6, 6>;
// 6 x dof, linear rows first, angular rows last.
using JacobianMatrix = Eigen::Matrix<double, 6, Eigen::Dynamic>;

// Rigid pose: position in meters, unit quaternion orientation.
struct Pose {
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  Eigen::Quaterniond orientation = Eigen::Quaterniond::Identity();

  Eigen::Isometry3d ToIsometry() const;
  static Pose FromIsometry(const Eigen::Isometry3d& transform);
};

struct RevoluteJoint {
  Eigen::Vector3d axis = Eigen::Vector3d::UnitZ();
  // Fixed transform from the parent frame to this joint's frame (applied
  // before the joint rotation).
  Eigen::Isometry3d offset = Eigen::Isometry3d::Identity();
};

struct KinematicChain {
  Eigen::Isometry3d base = Eigen::Isometry3d::Identity();
  std::vector<RevoluteJoint> joints;
  // Last joint frame to the tool (gripper centre) frame.
  Eigen::Isometry3d tool_offset = Eigen::Isometry3d::Identity();
  // Distance from the tool frame to the fingertip contact point along the
  // tool z axis.
  double d_offset = 0.0;
  // Preferred posture, also used as the nullspace reference.
  Eigen::VectorXd home;

  int dof() const { return static_cast<int>(joints.size()); }

  // Throws std::invalid_argument when an invariant is violated.
  void Validate() const;
};

// Per-joint frames produced while composing the chain; the Jacobian needs the
// world-frame origins and axes of every joint.
struct ChainFrames {
  std::vector<Eigen::Vector3d> joint_origins;
  std::vector<Eigen::Vector3d> joint_axes;
  Eigen::Isometry3d tool = Eigen::Isometry3d::Identity();
};

struct RobotState {
  Eigen::VectorXd q;
  Eigen::VectorXd qdot;
  Pose x;
  double gripper_width = 0.0;
  bool gripper_closed = false;
};

struct Wrench {
  Eigen::Vector3d force = Eigen::Vector3d::Zero();
  Eigen::Vector3d torque = Eigen::Vector3d::Zero();

  Vector6d AsVector() const;
  static Wrench FromVector(const Vector6d& v);
  bool IsFinite() const;
};

struct JointTorques {
  Eigen::VectorXd tau;

  static JointTorques Zero(int dof) { return {Eigen::VectorXd::Zero(dof)}; }
};

// Result of the least-squares inversion of tau = J^T w. When J drops rank the
// components of w along the null directions of J^T are not observable; the
// returned wrench is the minimum-norm solution in that case.
struct WrenchEstimate {
  Wrench wrench;
  int rank = 6;
  bool rank_deficient = false;
};

ChainFrames ComputeFrames(const KinematicChain& chain, const Eigen::VectorXd& q);

// Tool frame pose. Throws std::invalid_argument on a dimension mismatch.
Pose ForwardKinematics(const KinematicChain& chain, const Eigen::VectorXd& q);

// Geometric Jacobian of the tool frame origin, expressed in the world frame.
JacobianMatrix Jacobian(const KinematicChain& chain, const Eigen::VectorXd& q);
JacobianMatrix Jacobian(const ChainFrames& frames);

// Fingertip contact point, d_offset along the tool z axis.
Eigen::Vector3d FingertipPoint(const KinematicChain& chain, const Pose& tool);

WrenchEstimate WrenchFromTorques(const JacobianMatrix& jacobian,
                                 const JointTorques& tau);
JointTorques TorquesFromWrench(const JacobianMatrix& jacobian,
                               const Wrench& wrench);

// Numerical rank with singular values below `threshold` counted as zero.
int JacobianRank(const JacobianMatrix& jacobian, double threshold = 1e-10);

// 6-vector error between two poses: position difference, then twice the
// vector part of the world-frame error quaternion (current * desired^-1).
Vector6d PoseError(const Pose& current, const Pose& desired);

}  // namespace real2sim

#endif  // REAL2SIM_KINEMATICS_H_
