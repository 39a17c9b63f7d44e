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

#ifndef REAL2SIM_CONTROL_H_
#define REAL2SIM_CONTROL_H_

#include <functional>

#include "real2sim/kinematics.h"

namespace real2sim {

struct ImpedanceGains {
  Matrix6d stiffness = Matrix6d::Zero();
  Matrix6d damping = Matrix6d::Zero();
  double nullspace_stiffness = 0.0;

  // Diagonal stiffness with critical damping D = 2 sqrt(K).
  static ImpedanceGains CriticallyDamped(double translational, double rotational,
                                         double nullspace);
  static ImpedanceGains Default() { return CriticallyDamped(600.0, 30.0, 10.0); }

  // Throws std::invalid_argument unless K and D are symmetric PSD and
  // nullspace_stiffness >= 0.
  void Validate() const;
};

struct ControlTarget {
  Pose pose;
  Eigen::VectorXd posture;
};

// Velocity-dependent torque that cancels arm dynamics on a real robot. The
// simulated arm is quasi-static, so the default hook contributes nothing.
using CoriolisHook =
    std::function<Eigen::VectorXd(const Eigen::VectorXd& q, const Eigen::VectorXd& qdot)>;

// I - J^T pinv(J^T), with pinv computed as damped least squares.
Eigen::MatrixXd NullspaceProjector(const JacobianMatrix& jacobian,
                                   double damping = 1e-6);

// Cartesian impedance law with nullspace posture PD:
//   tau = J^T [-K e(x, x_d) - D (J qdot)] + C(q, qdot)
//         + N [k_ns (q_d - q) - 2 sqrt(k_ns) qdot]
// `state.x` must hold the current tool pose.
JointTorques ImpedanceTorque(const RobotState& state, const ControlTarget& target,
                             const ImpedanceGains& gains,
                             const JacobianMatrix& jacobian,
                             const CoriolisHook& coriolis = nullptr);

struct JointGains {
  double stiffness = 40.0;
  double damping = 2.0 * 6.324555320336759;  // 2 sqrt(40)
};

// Joint-space PD used by MoveJoints.
JointTorques JointPdTorque(const RobotState& state, const Eigen::VectorXd& q_desired,
                           const JointGains& gains);

}  // namespace real2sim

#endif  // REAL2SIM_CONTROL_H_
