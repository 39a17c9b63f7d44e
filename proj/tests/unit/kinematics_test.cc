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

#include <random>

#include <gtest/gtest.h>

#include "real2sim/chain_config.h"
#include "real2sim/kinematics.h"

namespace real2sim {
namespace {

// Rotation vector of R_a R_b^T, i.e. the small rotation taking b to a.
Eigen::Vector3d RotationDelta(const Eigen::Quaterniond& a, const Eigen::Quaterniond& b) {
  const Eigen::AngleAxisd aa(a * b.inverse());
  return aa.angle() * aa.axis();
}

Eigen::VectorXd RandomConfig(std::mt19937_64& rng, int dof) {
  std::uniform_real_distribution<double> u(-2.8, 2.8);
  Eigen::VectorXd q(dof);
  for (int i = 0; i < dof; ++i) q[i] = u(rng);
  return q;
}

TEST(Kinematics, HomePoseIsTopDownAboveTable) {
  const KinematicChain chain = DefaultChain();
  const Pose x = ForwardKinematics(chain, chain.home);
  EXPECT_NEAR(x.position.x(), 0.3069, 1e-4);
  EXPECT_NEAR(x.position.y(), 0.0, 1e-9);
  EXPECT_NEAR(x.position.z(), 1.2069, 1e-4);
  EXPECT_NEAR(std::abs(x.orientation.x()), 1.0, 1e-9);
}

TEST(Kinematics, JacobianMatchesCentralDifferences) {
  const KinematicChain chain = DefaultChain();
  std::mt19937_64 rng(7);
  const double h = 1e-6;
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Eigen::VectorXd q = RandomConfig(rng, chain.dof());
    const JacobianMatrix j = Jacobian(chain, q);
    for (int i = 0; i < chain.dof(); ++i) {
      Eigen::VectorXd qp = q, qm = q;
      qp[i] += h;
      qm[i] -= h;
      const Pose xp = ForwardKinematics(chain, qp);
      const Pose xm = ForwardKinematics(chain, qm);
      Vector6d column;
      column.head<3>() = (xp.position - xm.position) / (2 * h);
      column.tail<3>() = RotationDelta(xp.orientation, xm.orientation) / (2 * h);
      worst = std::max(worst, (column - j.col(i)).cwiseAbs().maxCoeff());
    }
  }
  EXPECT_LE(worst, 1e-6);
}

TEST(Kinematics, TorqueWrenchRoundTrip) {
  const KinematicChain chain = DefaultChain();
  std::mt19937_64 rng(11);
  std::normal_distribution<double> n(0.0, 5.0);
  for (int trial = 0; trial < 200; ++trial) {
    const JacobianMatrix j = Jacobian(chain, RandomConfig(rng, chain.dof()));
    if (JacobianRank(j, 1e-3) < 6) continue;
    Wrench w;
    w.force = {n(rng), n(rng), n(rng)};
    w.torque = {n(rng), n(rng), n(rng)};
    const WrenchEstimate back = WrenchFromTorques(j, TorquesFromWrench(j, w));
    EXPECT_FALSE(back.rank_deficient);
    EXPECT_LE((back.wrench.AsVector() - w.AsVector()).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(Kinematics, SingularJacobianReportsRank) {
  KinematicChain chain = DefaultChain();
  Eigen::VectorXd q = Eigen::VectorXd::Zero(7);  // stretched upright
  const JacobianMatrix j = Jacobian(chain, q);
  const WrenchEstimate est = WrenchFromTorques(j, JointTorques::Zero(7));
  EXPECT_LT(JacobianRank(j), 6);
  EXPECT_TRUE(est.rank_deficient);
}

TEST(Kinematics, PoseErrorIsZeroForIdenticalPoses) {
  Pose p;
  p.position = {0.1, 0.2, 0.3};
  p.orientation = QuaternionFromRpy(0.3, -0.2, 1.0);
  EXPECT_LE(PoseError(p, p).norm(), 1e-15);
  Pose flipped = p;
  flipped.orientation.coeffs() *= -1.0;  // same rotation
  EXPECT_LE(PoseError(p, flipped).norm(), 1e-12);
}

TEST(Kinematics, DimensionMismatchThrows) {
  EXPECT_THROW(ForwardKinematics(DefaultChain(), Eigen::VectorXd::Zero(6)),
               std::invalid_argument);
}

TEST(ChainConfig, YamlFixtureMatchesBuiltInChain) {
  const KinematicChain a = DefaultChain();
  const KinematicChain b = LoadChainConfig(R2S_FIXTURE_DIR "/chains/panda.yaml");
  ASSERT_EQ(b.dof(), 7);
  EXPECT_DOUBLE_EQ(b.d_offset, a.d_offset);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::VectorXd q = RandomConfig(rng, 7);
    const Pose pa = ForwardKinematics(a, q), pb = ForwardKinematics(b, q);
    EXPECT_LE((pa.position - pb.position).norm(), 1e-12);
    EXPECT_LE(pa.orientation.angularDistance(pb.orientation), 1e-12);
  }
}

TEST(ChainConfig, RejectsMalformedInput) {
  EXPECT_THROW(ParseChainConfig("joints: 3"), std::invalid_argument);
  EXPECT_THROW(ParseChainConfig("base: {xyz: [1, 2]}\njoints: []"), std::invalid_argument);
}

}  // namespace
}  // namespace real2sim
