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

#ifndef REAL2SIM_ACTIONS_H_
#define REAL2SIM_ACTIONS_H_

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "real2sim/bt.h"
#include "real2sim/runtime.h"

namespace real2sim {

enum class ArgKind {
  kPoseReference,  // metadata name, or [x,y,z], [x,y,z,r,p,y], [x,y,z,qw,qx,qy,qz]
  kVector3,
  kJointVector,
};

struct ArgSpec {
  std::string name;
  ArgKind kind = ArgKind::kPoseReference;
  bool required = true;
  std::string description;
};

using ActionFn = std::function<bt::TickStatus(Runtime&, const bt::BTNode& leaf,
                                              const std::string& path, bt::Blackboard&,
                                              std::string& note)>;

struct ActionSpec {
  std::string name;
  std::vector<ArgSpec> args;
  std::string input;   // human-readable input column
  std::string output;  // human-readable output column
  ActionFn run;
};

class ActionRegistry {
 public:
  // The eight built-in actions, in their canonical order.
  static ActionRegistry Default(int dof = 7);

  // Throws std::invalid_argument on a duplicate name.
  void Register(ActionSpec spec);
  const ActionSpec* Find(std::string_view name) const;
  std::vector<std::string> names() const;
  const std::vector<ActionSpec>& specs() const { return specs_; }
  int dof() const { return dof_; }

  // Argument problems of one action node, each prefixed with `path`.
  std::vector<std::string> ValidateArgs(const bt::BTNode& leaf, const std::string& path) const;
  // Names used as pose references by an action node.
  std::vector<std::string> ObjectReferences(const bt::BTNode& leaf) const;

  // Machine-readable registry with arg schemas and composite types.
  nlohmann::json Document() const;

 private:
  std::vector<ActionSpec> specs_;
  int dof_ = 7;
};

// Binds a registry to a live runtime so a tree can be ticked.
class RuntimeExecutor : public bt::ActionExecutor {
 public:
  RuntimeExecutor(const ActionRegistry& registry, Runtime& runtime)
      : registry_(registry), runtime_(runtime) {}

  bool Knows(const std::string& action) const override;
  bt::TickStatus Execute(const bt::BTNode& leaf, const std::string& path,
                         bt::Blackboard& blackboard, std::string& note) override;
  double Now() const override { return runtime_.Now(); }

 private:
  const ActionRegistry& registry_;
  Runtime& runtime_;
};

// Closes an armed force stream into the blackboard. Called by gripper and
// measurement actions and once more when execution ends.
void FlushForceStream(Runtime& runtime, bt::Blackboard& blackboard);

}  // namespace real2sim

#endif  // REAL2SIM_ACTIONS_H_
