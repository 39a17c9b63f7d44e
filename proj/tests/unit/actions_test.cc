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

#include "real2sim/actions.h"
#include "real2sim/chain_config.h"
#include "real2sim/estimation.h"
#include "real2sim/world_config.h"

namespace real2sim {
namespace {

using bt::BTNode;
using bt::TickStatus;
using nlohmann::json;

sim::GroundTruthWorld NoiselessBottle() {
  sim::GroundTruthWorld w = sim::LoadWorldConfig(R2S_FIXTURE_DIR "/worlds/bottle_table.yaml");
  w.params.noise_sigma_torque = 0.0;
  return w;
}

SceneMetadata BottleMetadata() { return LoadMetadata(R2S_FIXTURE_DIR "/metadata/bottle_table.json"); }

BTNode Move(const std::string& target, json offset = nullptr) {
  json args = {{"pose", target}};
  if (!offset.is_null()) args["offset"] = offset;
  return BTNode::Action("MovePose", args);
}

TEST(Registry, HoldsTheEightActionsInOrder) {
  const ActionRegistry r = ActionRegistry::Default();
  EXPECT_EQ(r.names(), (std::vector<std::string>{"MovePose", "MoveJoints", "OpenGripper",
                                                 "CloseGripper", "MoveDownUntilContact",
                                                 "MeasureGripperPose", "MeasureForces",
                                                 "MeasureMass"}));
  const json doc = r.Document();
  EXPECT_EQ(doc["composites"].size(), 2u);
  EXPECT_EQ(doc["actions"].size(), 8u);
  ActionRegistry copy = r;
  EXPECT_THROW(copy.Register({"MovePose", {}, "", "", nullptr}), std::invalid_argument);
}

TEST(Registry, ValidatesArguments) {
  const ActionRegistry r = ActionRegistry::Default();
  EXPECT_TRUE(r.ValidateArgs(Move("bottle", {0, 0, 0.1}), "p").empty());
  EXPECT_TRUE(r.ValidateArgs(BTNode::Action("MovePose", {{"pose", {0.5, 0, 0.9}}}), "p").empty());
  EXPECT_EQ(r.ValidateArgs(BTNode::Action("MovePose"), "p"),
            std::vector<std::string>{"p: missing argument 'pose'"});
  EXPECT_EQ(r.ValidateArgs(BTNode::Action("OpenGripper", {{"speed", 1}}), "p"),
            std::vector<std::string>{"p: unexpected argument 'speed'"});
  EXPECT_EQ(r.ValidateArgs(BTNode::Action("Fly"), "p"),
            std::vector<std::string>{"p: unknown action 'Fly'"});
  EXPECT_FALSE(r.ValidateArgs(Move("bottle", {0, 0}), "p").empty());
  EXPECT_FALSE(r.ValidateArgs(BTNode::Action("MoveJoints", {{"joints", {0, 0, 0}}}), "p").empty());
  EXPECT_FALSE(r.ValidateArgs(BTNode::Action("MovePose", {{"pose", {1, 2}}}), "p").empty());
  EXPECT_EQ(r.ObjectReferences(Move("bottle")), std::vector<std::string>{"bottle"});
  EXPECT_TRUE(r.ObjectReferences(BTNode::Action("MovePose", {{"pose", {0.5, 0, 0.9}}})).empty());
}

TEST(Metadata, PoseFormats) {
  const Pose a = PoseFromArray({0.1, 0.2, 0.3});
  EXPECT_TRUE(a.orientation.isApprox(TopDownOrientation()));
  const Pose b = PoseFromArray({0.1, 0.2, 0.3, 0.0, 0.0, M_PI / 2});
  EXPECT_NEAR(b.orientation.angularDistance(
                  Eigen::Quaterniond(Eigen::AngleAxisd(M_PI / 2, Eigen::Vector3d::UnitZ()))),
              0.0, 1e-12);
  const Pose c = PoseFromArray({0.1, 0.2, 0.3, 1.0, 0.0, 0.0, 0.0});
  EXPECT_TRUE(c.orientation.isApprox(Eigen::Quaterniond::Identity()));
  EXPECT_THROW(PoseFromArray({0.1, 0.2}), std::invalid_argument);
  EXPECT_THROW(PoseFromArray({0.1, 0.2, 0.3, 0.0, 0.0, 0.0, 0.0}), std::invalid_argument);
}

TEST(Metadata, RejectsDuplicatesAndKeepsPlaceholders) {
  const SceneMetadata m = LoadMetadata(R2S_FIXTURE_DIR "/metadata/occlusion.json");
  ASSERT_NE(m.FindObject("blue_box"), nullptr);
  EXPECT_TRUE(m.FindObject("blue_box")->symbolic());
  EXPECT_EQ(m.FindObject("blue_box")->placeholder, "pose_blue_box");
  EXPECT_NE(m.FindLocation("temporary_pose"), nullptr);
  EXPECT_THROW(ParseMetadata({{"objects", {{{"name", "a"}, {"pose", {0, 0, 0}}},
                                           {{"name", "a"}, {"pose", {1, 0, 0}}}}},
                              {"locations", json::array()}}),
               std::invalid_argument);
}

class RuntimeTest : public ::testing::Test {
 protected:
  RuntimeTest()
      : world_(NoiselessBottle(), DefaultChain()),
        runtime_(world_, RuntimeConfig{}, BottleMetadata()),
        registry_(ActionRegistry::Default()),
        executor_(registry_, runtime_) {}

  TickStatus Run(const BTNode& tree) {
    trace_.clear();
    return bt::Tick(tree, blackboard_, executor_, &trace_);
  }

  sim::World world_;
  Runtime runtime_;
  ActionRegistry registry_;
  RuntimeExecutor executor_;
  bt::Blackboard blackboard_;
  std::vector<bt::TraceEntry> trace_;
};

TEST_F(RuntimeTest, MovePoseConverges) {
  ASSERT_EQ(Run(Move("bottle", {0, 0, 0.1})), TickStatus::kSuccess);
  const Pose x = runtime_.state().x;
  EXPECT_LE((x.position - Eigen::Vector3d(0.5, 0.0, 0.965)).norm(), 0.005);
  EXPECT_EQ(runtime_.last_target(), "bottle");
}

TEST_F(RuntimeTest, UnreachableTargetTimesOut) {
  ASSERT_EQ(Run(BTNode::Action("MovePose", {{"pose", {2.0, 0.0, 0.9}}})), TickStatus::kFailure);
  EXPECT_EQ(trace_.front().note, "timeout");
}

TEST_F(RuntimeTest, UnknownPoseReferenceFails) {
  ASSERT_EQ(Run(Move("cup")), TickStatus::kFailure);
  EXPECT_NE(trace_.front().note.find("cup"), std::string::npos);
}

TEST_F(RuntimeTest, MeasureMassNeedsAGrasp) {
  ASSERT_EQ(Run(BTNode::Action("MeasureMass")), TickStatus::kFailure);
}

TEST_F(RuntimeTest, ContactDescentFindsTable) {
  ASSERT_EQ(Run(BTNode::Sequence({Move("table"), BTNode::Action("CloseGripper"),
                                  BTNode::Action("MoveDownUntilContact")})),
            TickStatus::kSuccess);
  const json& rec = blackboard_.Get("contact/table").at(0);
  const double h = rec["z_ee"].get<double>() - rec["d_offset"].get<double>();
  // Threshold force over penalty stiffness bounds the penetration.
  EXPECT_NEAR(h, 0.765, 3.0 / 1.0e4 + 1e-5);
  EXPECT_LT(h, 0.765);
}

TEST_F(RuntimeTest, WeighRecordsExactMassWithoutNoise) {
  const BTNode tree = BTNode::Sequence(
      {BTNode::Action("OpenGripper"), Move("bottle", {0, 0, 0.1}), Move("bottle"),
       BTNode::Action("CloseGripper"), Move("bottle", {0, 0, 0.1}), BTNode::Action("MeasureMass"),
       Move("bottle"), BTNode::Action("OpenGripper")});
  ASSERT_EQ(Run(tree), TickStatus::kSuccess);
  const json& rec = blackboard_.Get("mass/bottle").at(0);
  std::vector<Wrench> samples;
  for (const auto& s : rec["samples"]) {
    samples.push_back(Wrench::FromVector(Eigen::Map<const Vector6d>(s.get<std::vector<double>>().data())));
  }
  const Vector6d bias = Eigen::Map<const Vector6d>(rec["bias"].get<std::vector<double>>().data());
  const est::EstimateRecord m = est::EstimateMass(samples, Wrench::FromVector(bias), 9.81);
  EXPECT_NEAR(m.mean, 0.254, 1e-9);
  EXPECT_NEAR(world_.ObjectPose("bottle")->position.z(), 0.865, 1e-12);
}

TEST_F(RuntimeTest, ForceStreamIsFlushedAtTheNextMeasurement) {
  const BTNode tree = BTNode::Sequence(
      {Move("bottle", {0, 0, 0.1}), BTNode::Action("MeasureForces"), Move("bottle", {0, 0, 0.15}),
       BTNode::Action("MeasureGripperPose")});
  ASSERT_EQ(Run(tree), TickStatus::kSuccess);
  ASSERT_TRUE(blackboard_.Has("push/bottle"));
  const json& rec = blackboard_.Get("push/bottle").at(0);
  EXPECT_EQ(rec["w"].size(), rec["v_cmd"].size());
  EXPECT_GT(rec["w"].size(), 100u);
  EXPECT_FALSE(runtime_.stream_armed());
  EXPECT_TRUE(blackboard_.Has("gripper_pose"));
}

}  // namespace
}  // namespace real2sim
