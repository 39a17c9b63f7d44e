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

#include "real2sim/bt.h"

#include <algorithm>
#include <utility>

namespace real2sim::bt {
namespace {

std::string ChildPath(const std::string& parent, size_t index, const BTNode& child) {
  std::string label = child.name.empty() ? std::string(ToString(child.type)) : child.name;
  return parent + "/" + std::to_string(index) + ":" + label;
}

void CollectViolations(const BTNode& node, const std::string& path,
                       std::vector<std::string>& out) {
  if (node.type == NodeType::kAction) {
    if (!node.children.empty()) out.push_back(path + ": action node has children");
    if (node.name.empty()) out.push_back(path + ": action node without a name");
    if (!node.args.is_object()) out.push_back(path + ": args must be an object");
    return;
  }
  if (node.children.empty()) out.push_back(path + ": composite without children");
  for (size_t i = 0; i < node.children.size(); ++i) {
    CollectViolations(node.children[i], ChildPath(path, i, node.children[i]), out);
  }
}

TickStatus TickNode(const BTNode& node, const std::string& path, Blackboard& blackboard,
                    ActionExecutor& executor, std::vector<TraceEntry>* trace) {
  TickStatus status = TickStatus::kFailure;
  std::string note;
  switch (node.type) {
    case NodeType::kAction:
      if (!executor.Knows(node.name)) {
        note = "unknown action '" + node.name + "'";
      } else {
        status = executor.Execute(node, path, blackboard, note);
      }
      break;
    case NodeType::kSequence:
      status = TickStatus::kSuccess;
      for (size_t i = 0; i < node.children.size(); ++i) {
        const BTNode& child = node.children[i];
        status = TickNode(child, ChildPath(path, i, child), blackboard, executor, trace);
        if (status != TickStatus::kSuccess) break;
      }
      break;
    case NodeType::kSelector:
      status = TickStatus::kFailure;
      for (size_t i = 0; i < node.children.size(); ++i) {
        const BTNode& child = node.children[i];
        status = TickNode(child, ChildPath(path, i, child), blackboard, executor, trace);
        if (status != TickStatus::kFailure) break;
      }
      break;
  }
  if (trace != nullptr) {
    trace->push_back({path, node.name.empty() ? std::string(ToString(node.type)) : node.name,
                      status, executor.Now(), note});
  }
  return status;
}

int CountIf(const BTNode& node, std::string_view name) {
  int count = node.type == NodeType::kAction && node.name == name ? 1 : 0;
  for (const auto& child : node.children) count += CountIf(child, name);
  return count;
}

}  // namespace

std::string_view ToString(TickStatus status) {
  switch (status) {
    case TickStatus::kSuccess: return "Success";
    case TickStatus::kFailure: return "Failure";
    case TickStatus::kRunning: return "Running";
  }
  return "Failure";
}

std::string_view ToString(NodeType type) {
  switch (type) {
    case NodeType::kSequence: return "Sequence";
    case NodeType::kSelector: return "Selector";
    case NodeType::kAction: return "Action";
  }
  return "Action";
}

NodeType NodeTypeFromString(std::string_view text) {
  if (text == "Sequence") return NodeType::kSequence;
  if (text == "Selector") return NodeType::kSelector;
  if (text == "Action") return NodeType::kAction;
  throw std::invalid_argument("unknown node type '" + std::string(text) + "'");
}

BTNode BTNode::Action(std::string name, nlohmann::json args) {
  BTNode node;
  node.type = NodeType::kAction;
  node.name = std::move(name);
  node.args = std::move(args);
  return node;
}

BTNode BTNode::Sequence(std::vector<BTNode> children, std::string name) {
  BTNode node;
  node.type = NodeType::kSequence;
  node.name = std::move(name);
  node.children = std::move(children);
  return node;
}

BTNode BTNode::Selector(std::vector<BTNode> children, std::string name) {
  BTNode node = Sequence(std::move(children), std::move(name));
  node.type = NodeType::kSelector;
  return node;
}

bool BTNode::operator==(const BTNode& other) const {
  return type == other.type && name == other.name && args == other.args &&
         children == other.children;
}

std::vector<std::string> StructuralViolations(const BTNode& root) {
  std::vector<std::string> out;
  CollectViolations(root, "0:" + (root.name.empty() ? std::string(ToString(root.type))
                                                     : root.name),
                    out);
  return out;
}

int Depth(const BTNode& root) {
  int deepest = 0;
  for (const auto& child : root.children) deepest = std::max(deepest, Depth(child));
  return deepest + 1;
}

int CountActions(const BTNode& root, std::string_view name) { return CountIf(root, name); }

const std::vector<std::string>& Blackboard::DefaultAccumulatingPrefixes() {
  static const std::vector<std::string> kPrefixes = {"mass/", "forces/", "push/",
                                                     "contact/", "gripper_pose"};
  return kPrefixes;
}

Blackboard::Blackboard(std::vector<std::string> accumulating_prefixes)
    : prefixes_(std::move(accumulating_prefixes)) {}

bool Blackboard::IsAccumulating(std::string_view key) const {
  return std::any_of(prefixes_.begin(), prefixes_.end(),
                     [&](const std::string& p) { return key.substr(0, p.size()) == p; });
}

void Blackboard::Set(const std::string& key, nlohmann::json value) {
  if (entries_.count(key) > 0) {
    throw BlackboardError("blackboard key '" + key + "' is write-once");
  }
  entries_.emplace(key, std::move(value));
  write_order_.push_back(key);
}

void Blackboard::Append(const std::string& key, nlohmann::json value) {
  if (!IsAccumulating(key)) {
    throw BlackboardError("blackboard key '" + key + "' is not accumulating");
  }
  auto [it, inserted] = entries_.try_emplace(key, nlohmann::json::array());
  if (inserted) write_order_.push_back(key);
  it->second.push_back(std::move(value));
}

nlohmann::json Blackboard::ToJson() const {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [key, value] : entries_) out[key] = value;
  return out;
}

nlohmann::json ToJson(const TraceEntry& entry) {
  nlohmann::json j = {{"path", entry.path},
                      {"node", entry.node},
                      {"status", std::string(ToString(entry.status))},
                      {"t", entry.t}};
  if (!entry.note.empty()) j["note"] = entry.note;
  return j;
}

TickStatus Tick(const BTNode& root, Blackboard& blackboard, ActionExecutor& executor,
                std::vector<TraceEntry>* trace) {
  const std::string path =
      "0:" + (root.name.empty() ? std::string(ToString(root.type)) : root.name);
  return TickNode(root, path, blackboard, executor, trace);
}

}  // namespace real2sim::bt
