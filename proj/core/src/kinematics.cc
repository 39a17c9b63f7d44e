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

#include "real2sim/kinematics.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace real2sim {
namespace {

void CheckDimension(const KinematicChain& chain, const Eigen::VectorXd& q) {
  if (q.size() != chain.dof()) {
    throw std::invalid_argument("joint vector has " + std::to_string(q.size()) +
                                " entries, chain has " +
                                std::to_string(chain.dof()) + " joints");
  }
}

bool IsRigid(const Eigen::Isometry3d& t) {
  const Eigen::Matrix3d r = t.linear();
  return (r.transpose() * r - Eigen::Matrix3d::Identity()).norm() < 1e-9 &&
         std::abs(r.determinant() - 1.0) < 1e-9 && t.translation().allFinite();
}

}  // namespace

Eigen::Isometry3d Pose::ToIsometry() const {
  Eigen::Isometry3d t = Eigen::Isometry3d::Identity();
  t.linear() = orientation.normalized().toRotationMatrix();
  t.translation() = position;
  return t;
}

Pose Pose::FromIsometry(const Eigen::Isometry3d& transform) {
  Pose pose;
  pose.position = transform.translation();
  pose.orientation = Eigen::Quaterniond(transform.linear()).normalized();
  return pose;
}

Vector6d Wrench::AsVector() const {
  Vector6d v;
  v << force, torque;
  return v;
}

Wrench Wrench::FromVector(const Vector6d& v) {
  return {v.head<3>(), v.tail<3>()};
}

bool Wrench::IsFinite() const { return force.allFinite() && torque.allFinite(); }

void KinematicChain::Validate() const {
  if (joints.empty()) throw std::invalid_argument("chain needs at least one joint");
  for (const auto& joint : joints) {
    if (std::abs(joint.axis.norm() - 1.0) > 1e-9) {
      throw std::invalid_argument("joint axis must be a unit vector");
    }
    if (!IsRigid(joint.offset)) {
      throw std::invalid_argument("joint offset is not a rigid transform");
    }
  }
  if (!IsRigid(base)) throw std::invalid_argument("base is not a rigid transform");
  if (!IsRigid(tool_offset)) {
    throw std::invalid_argument("tool_offset is not a rigid transform");
  }
  if (!(d_offset >= 0.0)) throw std::invalid_argument("d_offset must be >= 0");
  if (home.size() != 0 && home.size() != dof()) {
    throw std::invalid_argument("home posture length does not match dof");
  }
}

ChainFrames ComputeFrames(const KinematicChain& chain, const Eigen::VectorXd& q) {
  CheckDimension(chain, q);
  ChainFrames frames;
  frames.joint_origins.reserve(chain.joints.size());
  frames.joint_axes.reserve(chain.joints.size());
  Eigen::Isometry3d t = chain.base;
  for (int i = 0; i < chain.dof(); ++i) {
    const RevoluteJoint& joint = chain.joints[i];
    t = t * joint.offset;
    frames.joint_origins.push_back(t.translation());
    frames.joint_axes.push_back(t.linear() * joint.axis);
    t = t * Eigen::AngleAxisd(q[i], joint.axis);
  }
  frames.tool = t * chain.tool_offset;
  // Re-orthonormalise so long compositions keep a unit quaternion.
  frames.tool.linear() =
      Eigen::Quaterniond(frames.tool.linear()).normalized().toRotationMatrix();
  return frames;
}

Pose ForwardKinematics(const KinematicChain& chain, const Eigen::VectorXd& q) {
  return Pose::FromIsometry(ComputeFrames(chain, q).tool);
}

JacobianMatrix Jacobian(const ChainFrames& frames) {
  const int dof = static_cast<int>(frames.joint_axes.size());
  JacobianMatrix jacobian(6, dof);
  const Eigen::Vector3d tool = frames.tool.translation();
  for (int i = 0; i < dof; ++i) {
    const Eigen::Vector3d& axis = frames.joint_axes[i];
    jacobian.col(i).head<3>() = axis.cross(tool - frames.joint_origins[i]);
    jacobian.col(i).tail<3>() = axis;
  }
  return jacobian;
}

JacobianMatrix Jacobian(const KinematicChain& chain, const Eigen::VectorXd& q) {
  return Jacobian(ComputeFrames(chain, q));
}

Eigen::Vector3d FingertipPoint(const KinematicChain& chain, const Pose& tool) {
  return tool.position + chain.d_offset * (tool.orientation * Eigen::Vector3d::UnitZ());
}

WrenchEstimate WrenchFromTorques(const JacobianMatrix& jacobian,
                                 const JointTorques& tau) {
  if (tau.tau.size() != jacobian.cols()) {
    throw std::invalid_argument("torque vector length does not match Jacobian");
  }
  if (!jacobian.allFinite()) throw std::invalid_argument("Jacobian is not finite");
  // Minimum-residual (and minimum-norm) solution of J^T w = tau.
  const Eigen::MatrixXd jt = jacobian.transpose();
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod;
  cod.setThreshold(1e-10);
  cod.compute(jt);
  WrenchEstimate estimate;
  estimate.wrench = Wrench::FromVector(cod.solve(tau.tau));
  estimate.rank = static_cast<int>(cod.rank());
  estimate.rank_deficient = estimate.rank < 6;
  return estimate;
}

JointTorques TorquesFromWrench(const JacobianMatrix& jacobian,
                               const Wrench& wrench) {
  return {jacobian.transpose() * wrench.AsVector()};
}

int JacobianRank(const JacobianMatrix& jacobian, double threshold) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(jacobian);
  const auto& s = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < s.size(); ++i) {
    if (s[i] > threshold) ++rank;
  }
  return rank;
}

Vector6d PoseError(const Pose& current, const Pose& desired) {
  Vector6d error;
  error.head<3>() = current.position - desired.position;
  Eigen::Quaterniond q_err =
      current.orientation.normalized() * desired.orientation.normalized().conjugate();
  if (q_err.w() < 0.0) q_err.coeffs() *= -1.0;
  error.tail<3>() = 2.0 * q_err.vec();
  return error;
}

}  // namespace real2sim
