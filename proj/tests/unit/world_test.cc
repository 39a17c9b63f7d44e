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

#include <gtest/gtest.h>

#include "real2sim/chain_config.h"
#include "real2sim/world.h"
#include "real2sim/world_config.h"

namespace real2sim::sim {
namespace {

constexpr double kG = 9.81;

GroundTruthWorld BottleWorld(double noise = 0.0) {
  GroundTruthWorld w;
  w.params.noise_sigma_torque = noise;
  w.surfaces.push_back({"table", 0.765, {0.5, 0.0}, {0.4, 0.6}});
  ObjectSpec bottle;
  bottle.name = "bottle";
  bottle.shape = ShapeKind::kCylinder;
  bottle.size = {0.07, 0.07, 0.2};
  bottle.pose.position = {0.5, 0.0, 0.865};
  bottle.mass = 0.598;
  bottle.static_mu = 0.41;
  bottle.dynamic_mu = 0.34;
  w.objects.push_back(bottle);
  return w;
}

Pose TopDown(const Eigen::Vector3d& p) {
  Pose pose;
  pose.position = p;
  pose.orientation = Eigen::Quaterniond(0.0, 1.0, 0.0, 0.0);
  return pose;
}

// Damped least-squares inverse kinematics, good enough to place the tool.
RobotState Place(const KinematicChain& chain, const Pose& target, const RobotState& from) {
  RobotState s = from;
  for (int it = 0; it < 200; ++it) {
    const Pose x = ForwardKinematics(chain, s.q);
    const Vector6d e = PoseError(x, target);
    if (e.norm() < 1e-13) break;
    const JacobianMatrix j = Jacobian(chain, s.q);
    const Matrix6d jjt = j * j.transpose() + 1e-10 * Matrix6d::Identity();
    s.q -= j.transpose() * jjt.ldlt().solve(e);
  }
  s.qdot.setZero();
  s.x = ForwardKinematics(chain, s.q);
  return s;
}

// One tick with the external torque cancelled, so the arm stays put while
// contact memory advances.
void Hold(World& world, RobotState& s) {
  const JacobianMatrix j = Jacobian(world.chain(), s.q);
  JointTorques tau = TorquesFromWrench(j, world.ExternalWrench(s));
  tau.tau = -tau.tau;
  ASSERT_EQ(world.Step(s, tau, world.dt()), StepStatus::kOk);
}

TEST(World, ValidatesGroundTruth) {
  GroundTruthWorld w = BottleWorld();
  w.objects[0].mass = -1.0;
  EXPECT_THROW(World(w, DefaultChain()), std::invalid_argument);
  w = BottleWorld();
  w.objects[0].dynamic_mu = 0.5;  // above static
  EXPECT_THROW(World(w, DefaultChain()), std::invalid_argument);
  w = BottleWorld();
  w.params.dt = 0.0;
  EXPECT_THROW(World(w, DefaultChain()), std::invalid_argument);
}

TEST(World, StepRejectsBadInput) {
  World world(BottleWorld(), DefaultChain());
  RobotState s = world.InitialState();
  EXPECT_THROW(world.Step(s, JointTorques::Zero(7), 0.002), std::invalid_argument);
  EXPECT_THROW(world.Step(s, JointTorques::Zero(6), 0.001), std::invalid_argument);
  JointTorques bad = JointTorques::Zero(7);
  bad.tau[3] = std::nan("");
  const Eigen::VectorXd q0 = s.q;
  EXPECT_EQ(world.Step(s, bad, 0.001), StepStatus::kFault);
  EXPECT_EQ(s.q, q0);
  EXPECT_DOUBLE_EQ(world.time(), 0.0);
}

TEST(World, FreeSpaceSensingIsZeroWithoutNoise) {
  World world(BottleWorld(), DefaultChain());
  const RobotState s = world.InitialState();
  EXPECT_LE(world.SenseExternalTorques(s).tau.norm(), 1e-15);
}

TEST(World, NoiseIsSeededAndReproducible) {
  GroundTruthWorld truth = BottleWorld(0.05);
  World a(truth, DefaultChain()), b(truth, DefaultChain());
  truth.params.seed = 2;
  World c(truth, DefaultChain());
  const RobotState s = a.InitialState();
  const auto ta = a.SenseExternalTorques(s).tau;
  EXPECT_EQ(ta, b.SenseExternalTorques(s).tau);
  EXPECT_NE(ta, c.SenseExternalTorques(s).tau);
}

TEST(World, GraspLoadAndRelease) {
  const KinematicChain chain = DefaultChain();
  World world(BottleWorld(), chain);
  RobotState s = Place(chain, TopDown({0.5, 0.0, 0.865}), world.InitialState());
  world.GripperCommand(s, GripperAction::kClose);
  ASSERT_TRUE(world.attachment().held_object.has_value());
  EXPECT_EQ(world.events().back().kind, "attach");
  EXPECT_NEAR(s.gripper_width, 0.07, 1e-12);

  // Seated: the table carries the full weight.
  EXPECT_LE(world.ExternalWrench(s).force.norm(), 1e-12);
  auto contacts = world.ContactForces(s);
  ASSERT_EQ(contacts.size(), 1u);
  EXPECT_NEAR(contacts[0].normal, 0.598 * kG, 1e-12);

  // Lifted 5 mm: the gripper carries it.
  s = Place(chain, TopDown({0.5, 0.0, 0.870}), s);
  Hold(world, s);
  EXPECT_NEAR(world.ExternalWrench(s).force.z(), -0.598 * kG, 1e-9);
  EXPECT_TRUE(world.ContactForces(s).empty());

  s = Place(chain, TopDown({0.5, 0.0, 0.900}), s);
  Hold(world, s);
  world.GripperCommand(s, GripperAction::kOpen);
  EXPECT_FALSE(world.attachment().held_object.has_value());
  EXPECT_EQ(world.events().back().kind, "release");
  EXPECT_NEAR(world.ObjectPose("bottle")->position.z(), 0.865, 1e-12);
}

TEST(World, CloseFarFromObjectsGraspsNothing) {
  const KinematicChain chain = DefaultChain();
  World world(BottleWorld(), chain);
  RobotState s = world.InitialState();
  world.GripperCommand(s, GripperAction::kClose);
  EXPECT_FALSE(world.attachment().held_object.has_value());
  EXPECT_EQ(world.events().back().kind, "close_empty");
  EXPECT_DOUBLE_EQ(s.gripper_width, 0.0);
}

TEST(World, StickSlipFollowsCoulomb) {
  const KinematicChain chain = DefaultChain();
  World world(BottleWorld(), chain);
  RobotState s = Place(chain, TopDown({0.5, 0.0, 0.865}), world.InitialState());
  world.GripperCommand(s, GripperAction::kClose);
  Hold(world, s);  // anchors the contact at x = 0.5
  const double n = 0.598 * kG;
  const double k_t = 1.0e4;

  bool broke = false;
  double x = 0.5;
  for (int i = 0; i < 120; ++i) {
    x += 5e-6;
    s = Place(chain, TopDown({x, 0.0, 0.865}), s);
    Hold(world, s);
    const auto c = world.ContactForces(s);
    ASSERT_EQ(c.size(), 1u);
    const double f = c[0].tangential.norm();
    EXPECT_LE(f, 0.41 * n * (1 + 1e-12));
    if (c[0].sliding) {
      broke = true;
      EXPECT_NEAR(f, 0.34 * n, 1e-9);
      EXPECT_LT(c[0].tangential.x(), 0.0);  // opposes motion
    } else if (!broke) {
      EXPECT_NEAR(f, std::min(k_t * (x - 0.5), 0.41 * n), 1e-6);
    }
  }
  EXPECT_TRUE(broke);

  // Stop: the contact sticks again at the dynamic level.
  Hold(world, s);
  const auto c = world.ContactForces(s);
  EXPECT_FALSE(c[0].sliding);
  EXPECT_NEAR(c[0].tangential.norm(), 0.34 * n, 1e-9);
}

TEST(World, PassengersTravelWithHeldObject) {
  GroundTruthWorld truth;
  truth.params.noise_sigma_torque = 0.0;
  truth.surfaces.push_back({"table", 0.765, {0.5, 0.0}, {0.4, 0.6}});
  ObjectSpec lower;
  lower.name = "lower";
  lower.pose.position = {0.5, 0.1, 0.79};
  lower.mass = 0.02;
  ObjectSpec upper = lower;
  upper.name = "upper";
  upper.pose.position.z() = 0.84;
  truth.objects = {lower, upper};
  const KinematicChain chain = DefaultChain();
  World world(truth, chain);
  RobotState s = Place(chain, TopDown({0.5, 0.1, 0.79}), world.InitialState());
  world.GripperCommand(s, GripperAction::kClose);
  ASSERT_EQ(world.attachment().passengers, std::vector<std::string>{"upper"});
  s = Place(chain, TopDown({0.5, 0.1, 0.85}), s);
  Hold(world, s);
  EXPECT_NEAR(world.ObjectPose("upper")->position.z(), 0.90, 1e-9);
  EXPECT_NEAR(world.ExternalWrench(s).force.z(), -0.04 * kG, 1e-9);
}

TEST(WorldConfig, ParsesFixture) {
  const GroundTruthWorld w = LoadWorldConfig(R2S_FIXTURE_DIR "/worlds/friction_bottle.yaml");
  ASSERT_EQ(w.objects.size(), 1u);
  EXPECT_DOUBLE_EQ(w.objects[0].mass, 0.598);
  EXPECT_DOUBLE_EQ(w.objects[0].static_mu, 0.41);
  EXPECT_DOUBLE_EQ(w.surfaces[0].height, 0.765);
  EXPECT_THROW(ParseWorldConfig("objects: [{name: a, shape: sphere}]"), std::invalid_argument);
}

}  // namespace
}  // namespace real2sim::sim
