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

#include "real2sim/mock_plans.h"

#include <algorithm>
#include <stdexcept>

namespace real2sim::planner {
namespace {

using bt::BTNode;
using nlohmann::json;
using scene::ParamKind;

constexpr double kApproach = 0.1;

BTNode Move(const std::string& target, double dx = 0.0, double dy = 0.0, double dz = 0.0) {
  json args = {{"pose", target}};
  if (dx != 0.0 || dy != 0.0 || dz != 0.0) args["offset"] = json::array({dx, dy, dz});
  return BTNode::Action("MovePose", std::move(args));
}

BTNode Act(const char* name) { return BTNode::Action(name); }

// Open, approach from above, descend, close, lift.
std::vector<BTNode> PickUp(const std::string& where) {
  return {Act("OpenGripper"), Move(where, 0, 0, kApproach), Move(where), Act("CloseGripper"),
          Move(where, 0, 0, kApproach)};
}

std::vector<BTNode> PutDown(const std::string& where, double dz = 0.0) {
  return {Move(where, 0, 0, dz + kApproach), Move(where, 0, 0, dz), Act("OpenGripper"),
          Move(where, 0, 0, dz + kApproach)};
}

std::vector<std::string> Targets(const scene::RequiredParameters& phi, ParamKind kind) {
  std::vector<std::string> out;
  for (const auto& [name, k] : phi) {
    if (k == kind) out.push_back(name);
  }
  return out;
}

bt::PlanDocument Generic(const scene::RequiredParameters& phi,
                         const std::vector<std::string>& detected) {
  std::vector<BTNode> children;
  const auto surfaces = Targets(phi, ParamKind::kSurfaceHeight);
  const auto masses = Targets(phi, ParamKind::kMass);
  for (const auto& s : surfaces) children.push_back(MeasureSurfaceHeight(s));
  for (const auto& o : masses) children.push_back(WeighAndRestore(o));
  std::string explanation;
  if (!surfaces.empty()) {
    explanation +=
        "Surface heights are found by lowering the closed gripper onto each surface until "
        "the joint torques report contact. ";
  }
  if (!masses.empty()) {
    explanation +=
        "Each object is picked up, held still above the table while the wrist load is "
        "sampled, then put back where it was. ";
  }
  if (children.empty()) {
    explanation = "Nothing in the request needs measuring, so the plan only opens the gripper.";
    children.push_back(Act("OpenGripper"));
  }
  if (explanation.back() == ' ') explanation.pop_back();
  return {explanation, detected, BTNode::Sequence(std::move(children), "root")};
}

bt::PlanDocument MassOnly(const scene::RequiredParameters& phi,
                          const std::vector<std::string>& detected) {
  std::vector<BTNode> children;
  for (const auto& o : Targets(phi, ParamKind::kMass)) children.push_back(WeighAndRestore(o));
  if (children.empty()) children.push_back(Act("OpenGripper"));
  return {"The table is already described, so only the object is weighed: grasp it, lift it "
          "clear, sample the wrist load and put it back.",
          detected, BTNode::Sequence(std::move(children), "root")};
}

bt::PlanDocument Friction(const scene::RequiredParameters& phi,
                          const std::vector<std::string>& detected) {
  std::vector<BTNode> children;
  std::vector<std::string> objects = Targets(phi, ParamKind::kFriction);
  for (const auto& o : Targets(phi, ParamKind::kMass)) {
    if (std::find(objects.begin(), objects.end(), o) == objects.end()) {
      children.push_back(WeighAndRestore(o));
    }
  }
  for (const auto& o : objects) children.push_back(MeasureFrictionByPush(o));
  for (const auto& s : Targets(phi, ParamKind::kSurfaceHeight)) {
    children.push_back(MeasureSurfaceHeight(s));
  }
  return {"Friction needs the normal load, so the object is weighed first. It is then set "
          "back down while still held, the resting wrench is sampled, and the arm drags it "
          "10 cm along x. The force needed to start the motion gives the static coefficient "
          "and the steady dragging force gives the dynamic one. The object is slid back and "
          "released, and the table height is probed last.",
          detected, BTNode::Sequence(std::move(children), "root")};
}

bt::PlanDocument Occlusion(const std::vector<std::string>& detected) {
  std::vector<BTNode> relocate = PickUp("red_box");
  for (auto& n : PutDown("temporary_pose")) relocate.push_back(std::move(n));
  std::vector<BTNode> restore = PickUp("temporary_pose");
  // The red box sits 5 cm above the blue box centre.
  for (auto& n : PutDown("blue_box", 0.05)) restore.push_back(std::move(n));
  std::vector<BTNode> children = {BTNode::Sequence(std::move(relocate), "relocate_red_box"),
                                  WeighAndRestore("blue_box"),
                                  BTNode::Sequence(std::move(restore), "restore_red_box")};
  return {"The blue box is under the red box, so the red box is first moved to the free "
          "temporary pose. The blue box is then weighed and put back, and the red box is "
          "returned on top of it.",
          detected, BTNode::Sequence(std::move(children), "root")};
}

bt::PlanDocument Hallucination(const std::vector<std::string>& detected) {
  return {"Both bottles are weighed one after the other.", detected,
          BTNode::Sequence({WeighAndRestore("green_bottle"), WeighAndRestore("yellow_bottle")},
                           "root")};
}

}  // namespace

const std::vector<std::string>& MockScenarios() {
  static const std::vector<std::string> kIds = {"height+mass", "mass-only",  "three-bottles",
                                                "friction",    "occlusion", "hallucination"};
  return kIds;
}

BTNode WeighAndRestore(const std::string& object) {
  std::vector<BTNode> steps = PickUp(object);
  steps.push_back(Act("MeasureMass"));
  for (auto& n : PutDown(object)) steps.push_back(std::move(n));
  return BTNode::Sequence(std::move(steps), "weigh_" + object);
}

BTNode MeasureSurfaceHeight(const std::string& surface) {
  return BTNode::Sequence({Act("OpenGripper"), Move(surface), Act("CloseGripper"),
                           Act("MoveDownUntilContact"), Move(surface, 0, 0, kApproach)},
                          "height_" + surface);
}

BTNode MeasureFrictionByPush(const std::string& object) {
  std::vector<BTNode> steps = PickUp(object);
  steps.push_back(Act("MeasureMass"));
  steps.push_back(Move(object));
  steps.push_back(Act("MeasureForces"));
  steps.push_back(Move(object, 0.1));
  steps.push_back(Act("MeasureGripperPose"));
  steps.push_back(Move(object));
  steps.push_back(Act("OpenGripper"));
  steps.push_back(Move(object, 0, 0, kApproach));
  return BTNode::Sequence(std::move(steps), "push_" + object);
}

bt::PlanDocument MockPlan(std::string_view scenario, const scene::RequiredParameters& phi,
                          const std::vector<std::string>& detected) {
  if (scenario == "height+mass" || scenario == "three-bottles") return Generic(phi, detected);
  if (scenario == "mass-only") return MassOnly(phi, detected);
  if (scenario == "friction") return Friction(phi, detected);
  if (scenario == "occlusion") return Occlusion(detected);
  if (scenario == "hallucination") return Hallucination(detected);
  throw std::invalid_argument("unknown mock scenario '" + std::string(scenario) + "'");
}

}  // namespace real2sim::planner
