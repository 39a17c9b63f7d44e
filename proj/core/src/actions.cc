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

#include "real2sim/actions.h"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace real2sim {
namespace {

using bt::TickStatus;

nlohmann::json WrenchJson(const Wrench& w) {
  const Vector6d v = w.AsVector();
  return std::vector<double>(v.data(), v.data() + 6);
}

nlohmann::json SeriesJson(const std::vector<Wrench>& samples) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& w : samples) out.push_back(WrenchJson(w));
  return out;
}

Wrench Mean(const std::vector<Wrench>& samples) {
  Vector6d sum = Vector6d::Zero();
  for (const auto& w : samples) sum += w.AsVector();
  return Wrench::FromVector(samples.empty() ? sum : sum / static_cast<double>(samples.size()));
}

// Measurement keys name what the robot believes it is touching.
std::string MeasurementTarget(const Runtime& runtime) {
  if (runtime.state().gripper_closed && !runtime.grasp_target().empty()) {
    return runtime.grasp_target();
  }
  return runtime.last_target().empty() ? "unknown" : runtime.last_target();
}

bool IsNumberArray(const nlohmann::json& v, size_t n) {
  return v.is_array() && v.size() == n &&
         std::all_of(v.begin(), v.end(), [](const auto& x) { return x.is_number(); });
}

TickStatus RunMovePose(Runtime& runtime, const bt::BTNode& leaf, const std::string&,
                       bt::Blackboard&, std::string& note) {
  std::string error;
  const auto target = runtime.ResolveTarget(leaf.args.value("pose", nlohmann::json()),
                                            leaf.args.value("offset", nlohmann::json()), error);
  if (!target) {
    note = error;
    return TickStatus::kFailure;
  }
  const MotionResult result = runtime.MovePose(*target);
  note = result.note;
  return result.ok ? TickStatus::kSuccess : TickStatus::kFailure;
}

TickStatus RunMoveJoints(Runtime& runtime, const bt::BTNode& leaf, const std::string&,
                         bt::Blackboard&, std::string& note) {
  const auto& joints = leaf.args.value("joints", nlohmann::json());
  if (!joints.is_array()) {
    note = "joints must be a list";
    return TickStatus::kFailure;
  }
  Eigen::VectorXd q(joints.size());
  for (size_t i = 0; i < joints.size(); ++i) q[i] = joints[i].get<double>();
  const MotionResult result = runtime.MoveJoints(q);
  note = result.note;
  return result.ok ? TickStatus::kSuccess : TickStatus::kFailure;
}

TickStatus RunOpenGripper(Runtime& runtime, const bt::BTNode&, const std::string&,
                          bt::Blackboard& blackboard, std::string&) {
  FlushForceStream(runtime, blackboard);
  runtime.Gripper(sim::GripperAction::kOpen);
  return TickStatus::kSuccess;
}

TickStatus RunCloseGripper(Runtime& runtime, const bt::BTNode&, const std::string&,
                           bt::Blackboard& blackboard, std::string& note) {
  FlushForceStream(runtime, blackboard);
  if (!runtime.state().gripper_closed) {
    // Pre-grasp wrench; MeasureMass subtracts it.
    runtime.set_bias(Mean(runtime.SampleWrenches(runtime.config().window)));
    runtime.set_grasp_target(runtime.last_target());
  }
  const size_t events_before = runtime.world().events().size();
  runtime.Gripper(sim::GripperAction::kClose);
  const auto& events = runtime.world().events();
  if (events.size() > events_before && events[events_before].kind == "attach") {
    note = "attached " + events[events_before].object;
  } else {
    note = "closed empty";
  }
  return TickStatus::kSuccess;
}

TickStatus RunMoveDownUntilContact(Runtime& runtime, const bt::BTNode&, const std::string& path,
                                   bt::Blackboard& blackboard, std::string& note) {
  const auto contact = runtime.MoveDownUntilContact(note);
  if (!contact) return TickStatus::kFailure;
  const std::string target = runtime.last_target().empty() ? "unknown" : runtime.last_target();
  blackboard.Append("contact/" + target, {{"pose", PoseToJson(*contact)},
                                          {"z_ee", contact->position.z()},
                                          {"d_offset", runtime.world().chain().d_offset},
                                          {"leaf", path},
                                          {"t", runtime.Now()}});
  return TickStatus::kSuccess;
}

TickStatus RunMeasureGripperPose(Runtime& runtime, const bt::BTNode&, const std::string& path,
                                 bt::Blackboard& blackboard, std::string&) {
  FlushForceStream(runtime, blackboard);
  blackboard.Append("gripper_pose",
                    {{"pose", PoseToJson(runtime.state().x)}, {"leaf", path}, {"t", runtime.Now()}});
  return TickStatus::kSuccess;
}

TickStatus RunMeasureForces(Runtime& runtime, const bt::BTNode&, const std::string& path,
                            bt::Blackboard& blackboard, std::string&) {
  FlushForceStream(runtime, blackboard);
  const auto samples = runtime.SampleWrenches(runtime.config().window);
  const Wrench mean = Mean(samples);
  const std::string target = MeasurementTarget(runtime);
  blackboard.Append("forces/" + target, {{"samples", SeriesJson(samples)},
                                         {"mean", WrenchJson(mean)},
                                         {"leaf", path},
                                         {"t", runtime.Now()}});
  // Keep listening through the next motion, e.g. a push.
  runtime.ArmStream("push/" + target, mean, path);
  return TickStatus::kSuccess;
}

TickStatus RunMeasureMass(Runtime& runtime, const bt::BTNode&, const std::string& path,
                          bt::Blackboard& blackboard, std::string& note) {
  FlushForceStream(runtime, blackboard);
  if (!runtime.bias()) {
    note = "no pre-grasp bias; close the gripper first";
    return TickStatus::kFailure;
  }
  const auto samples = runtime.SampleWrenches(runtime.config().window);
  const bool empty = !runtime.state().gripper_closed || runtime.state().gripper_width <= 0.0;
  const std::string target = runtime.grasp_target().empty() ? "unknown" : runtime.grasp_target();
  blackboard.Append("mass/" + target, {{"bias", WrenchJson(*runtime.bias())},
                                       {"samples", SeriesJson(samples)},
                                       {"empty_grasp", empty},
                                       {"leaf", path},
                                       {"t", runtime.Now()}});
  if (empty) note = "empty grasp";
  return TickStatus::kSuccess;
}

std::string_view KindName(ArgKind kind) {
  switch (kind) {
    case ArgKind::kPoseReference: return "pose_reference";
    case ArgKind::kVector3: return "vector3";
    case ArgKind::kJointVector: return "joint_vector";
  }
  return "pose_reference";
}

}  // namespace

void FlushForceStream(Runtime& runtime, bt::Blackboard& blackboard) {
  if (auto stream = runtime.TakeStream()) {
    blackboard.Append(stream->first, std::move(stream->second));
  }
}

ActionRegistry ActionRegistry::Default(int dof) {
  ActionRegistry registry;
  registry.dof_ = dof;
  registry.Register({"MovePose",
                     {{"pose", ArgKind::kPoseReference, true,
                       "object or location name from the metadata, or a numeric pose"},
                      {"offset", ArgKind::kVector3, false,
                       "translation added to the pose, in meters"}},
                     "desired pose",
                     "moves the gripper to a Cartesian pose",
                     RunMovePose});
  registry.Register({"MoveJoints",
                     {{"joints", ArgKind::kJointVector, true, "joint positions in radians"}},
                     "desired joint positions",
                     "moves the joints to a configuration",
                     RunMoveJoints});
  registry.Register({"OpenGripper", {}, "none", "opens the gripper", RunOpenGripper});
  registry.Register({"CloseGripper", {}, "none", "closes the gripper", RunCloseGripper});
  registry.Register({"MoveDownUntilContact", {}, "none",
                     "lowers the gripper until a contact is sensed; records the contact pose",
                     RunMoveDownUntilContact});
  registry.Register({"MeasureGripperPose", {}, "none", "records the pose of the gripper tips",
                     RunMeasureGripperPose});
  registry.Register({"MeasureForces", {}, "none",
                     "records the force on the gripper, then keeps recording through the "
                     "next motion",
                     RunMeasureForces});
  registry.Register({"MeasureMass", {}, "none", "weighs the object held by the gripper",
                     RunMeasureMass});
  return registry;
}

void ActionRegistry::Register(ActionSpec spec) {
  if (Find(spec.name) != nullptr) {
    throw std::invalid_argument("action '" + spec.name + "' already registered");
  }
  specs_.push_back(std::move(spec));
}

const ActionSpec* ActionRegistry::Find(std::string_view name) const {
  for (const auto& spec : specs_) {
    if (spec.name == name) return &spec;
  }
  return nullptr;
}

std::vector<std::string> ActionRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& spec : specs_) out.push_back(spec.name);
  return out;
}

std::vector<std::string> ActionRegistry::ValidateArgs(const bt::BTNode& leaf,
                                                      const std::string& path) const {
  std::vector<std::string> out;
  const ActionSpec* spec = Find(leaf.name);
  if (spec == nullptr) {
    out.push_back(path + ": unknown action '" + leaf.name + "'");
    return out;
  }
  if (!leaf.args.is_object()) {
    out.push_back(path + ": args must be an object");
    return out;
  }
  for (const auto& [key, value] : leaf.args.items()) {
    const bool known = std::any_of(spec->args.begin(), spec->args.end(),
                                   [&](const ArgSpec& a) { return a.name == key; });
    if (!known) out.push_back(path + ": unexpected argument '" + key + "'");
  }
  for (const auto& arg : spec->args) {
    const auto it = leaf.args.find(arg.name);
    if (it == leaf.args.end()) {
      if (arg.required) out.push_back(path + ": missing argument '" + arg.name + "'");
      continue;
    }
    const nlohmann::json& v = *it;
    bool ok = false;
    switch (arg.kind) {
      case ArgKind::kPoseReference:
        ok = (v.is_string() && !v.get<std::string>().empty()) || IsNumberArray(v, 3) ||
             IsNumberArray(v, 6) || IsNumberArray(v, 7);
        break;
      case ArgKind::kVector3:
        ok = IsNumberArray(v, 3);
        break;
      case ArgKind::kJointVector:
        ok = IsNumberArray(v, static_cast<size_t>(dof_));
        break;
    }
    if (!ok) {
      out.push_back(path + ": argument '" + arg.name + "' is not a valid " +
                    std::string(KindName(arg.kind)) +
                    (arg.kind == ArgKind::kJointVector ? " of " + std::to_string(dof_) + " numbers"
                                                       : ""));
    }
  }
  return out;
}

std::vector<std::string> ActionRegistry::ObjectReferences(const bt::BTNode& leaf) const {
  std::vector<std::string> out;
  const ActionSpec* spec = Find(leaf.name);
  if (spec == nullptr || !leaf.args.is_object()) return out;
  for (const auto& arg : spec->args) {
    if (arg.kind != ArgKind::kPoseReference) continue;
    const auto it = leaf.args.find(arg.name);
    if (it != leaf.args.end() && it->is_string()) out.push_back(it->get<std::string>());
  }
  return out;
}

nlohmann::json ActionRegistry::Document() const {
  nlohmann::json actions = nlohmann::json::array();
  for (const auto& spec : specs_) {
    nlohmann::json args = nlohmann::json::array();
    for (const auto& arg : spec.args) {
      nlohmann::json a = {{"name", arg.name},
                          {"kind", std::string(KindName(arg.kind))},
                          {"required", arg.required},
                          {"description", arg.description}};
      if (arg.kind == ArgKind::kJointVector) a["length"] = dof_;
      args.push_back(std::move(a));
    }
    actions.push_back(
        {{"name", spec.name}, {"input", spec.input}, {"output", spec.output}, {"args", args}});
  }
  nlohmann::json composites = nlohmann::json::array(
      {{{"name", "Sequence"},
        {"description", "ticks children in order; fails at the first failing child"}},
       {{"name", "Selector"},
        {"description", "ticks children in order; succeeds at the first succeeding child"}}});
  return {{"version", 1}, {"composites", composites}, {"actions", actions}};
}

bool RuntimeExecutor::Knows(const std::string& action) const {
  return registry_.Find(action) != nullptr;
}

bt::TickStatus RuntimeExecutor::Execute(const bt::BTNode& leaf, const std::string& path,
                                        bt::Blackboard& blackboard, std::string& note) {
  const ActionSpec* spec = registry_.Find(leaf.name);
  if (spec == nullptr) {
    note = "unknown action '" + leaf.name + "'";
    return bt::TickStatus::kFailure;
  }
  return spec->run(runtime_, leaf, path, blackboard, note);
}

}  // namespace real2sim
