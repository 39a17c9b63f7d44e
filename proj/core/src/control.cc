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

#include "real2sim/control.h"

#include <cmath>
#include <stdexcept>

namespace real2sim {
namespace {

bool IsSymmetricPsd(const Matrix6d& m) {
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-9) return false;
  Eigen::SelfAdjointEigenSolver<Matrix6d> eig(m);
  return eig.eigenvalues().minCoeff() >= -1e-9;
}

}  // namespace

ImpedanceGains ImpedanceGains::CriticallyDamped(double translational,
                                                double rotational,
                                                double nullspace) {
  ImpedanceGains gains;
  Vector6d k;
  k << translational, translational, translational, rotational, rotational, rotational;
  gains.stiffness = k.asDiagonal();
  gains.damping = (2.0 * k.cwiseSqrt()).asDiagonal();
  gains.nullspace_stiffness = nullspace;
  return gains;
}

void ImpedanceGains::Validate() const {
  if (!IsSymmetricPsd(stiffness)) {
    throw std::invalid_argument("stiffness must be symmetric positive semidefinite");
  }
  if (!IsSymmetricPsd(damping)) {
    throw std::invalid_argument("damping must be symmetric positive semidefinite");
  }
  if (!(nullspace_stiffness >= 0.0)) {
    throw std::invalid_argument("nullspace stiffness must be >= 0");
  }
}

Eigen::MatrixXd NullspaceProjector(const JacobianMatrix& jacobian, double damping) {
  const int dof = static_cast<int>(jacobian.cols());
  const Matrix6d jjt =
      jacobian * jacobian.transpose() + damping * damping * Matrix6d::Identity();
  // pinv(J^T) = (J J^T + lambda^2 I)^-1 J, a 6 x dof matrix.
  const Eigen::MatrixXd jt_pinv = jjt.ldlt().solve(jacobian);
  return Eigen::MatrixXd::Identity(dof, dof) - jacobian.transpose() * jt_pinv;
}

JointTorques ImpedanceTorque(const RobotState& state, const ControlTarget& target,
                             const ImpedanceGains& gains,
                             const JacobianMatrix& jacobian,
                             const CoriolisHook& coriolis) {
  const int dof = static_cast<int>(jacobian.cols());
  if (state.q.size() != dof || state.qdot.size() != dof ||
      target.posture.size() != dof) {
    throw std::invalid_argument("impedance torque: inconsistent dimensions");
  }
  const Vector6d error = PoseError(state.x, target.pose);
  const Vector6d velocity = jacobian * state.qdot;
  Eigen::VectorXd tau = jacobian.transpose() *
                        (-gains.stiffness * error - gains.damping * velocity);
  if (coriolis) tau += coriolis(state.q, state.qdot);
  const double k_ns = gains.nullspace_stiffness;
  if (k_ns > 0.0) {
    const Eigen::VectorXd posture_pd =
        k_ns * (target.posture - state.q) - 2.0 * std::sqrt(k_ns) * state.qdot;
    tau += NullspaceProjector(jacobian) * posture_pd;
  }
  return {tau};
}

JointTorques JointPdTorque(const RobotState& state, const Eigen::VectorXd& q_desired,
                           const JointGains& gains) {
  if (q_desired.size() != state.q.size()) {
    throw std::invalid_argument("joint PD: inconsistent dimensions");
  }
  return {gains.stiffness * (q_desired - state.q) - gains.damping * state.qdot};
}

}  // namespace real2sim
