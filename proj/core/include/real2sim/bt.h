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

#ifndef REAL2SIM_BT_H_
#define REAL2SIM_BT_H_

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace real2sim::bt {

enum class TickStatus { kSuccess, kFailure, kRunning };
enum class NodeType { kSequence, kSelector, kAction };

std::string_view ToString(TickStatus status);
std::string_view ToString(NodeType type);
// Throws std::invalid_argument for anything but Sequence, Selector, Action.
NodeType NodeTypeFromString(std::string_view text);

struct BTNode {
  NodeType type = NodeType::kSequence;
  std::string name;
  nlohmann::json args = nlohmann::json::object();  // Action only
  std::vector<BTNode> children;                    // composites only

  static BTNode Action(std::string name, nlohmann::json args = nlohmann::json::object());
  static BTNode Sequence(std::vector<BTNode> children, std::string name = "");
  static BTNode Selector(std::vector<BTNode> children, std::string name = "");

  bool operator==(const BTNode& other) const;
};

// Structural problems (action with children, empty composite). Each entry is
// prefixed with the node path.
std::vector<std::string> StructuralViolations(const BTNode& root);
int Depth(const BTNode& root);
int CountActions(const BTNode& root, std::string_view name);

class BlackboardError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Key-value store for one tree execution. Keys are write-once, except keys
// under an accumulating prefix, which collect a list of values.
class Blackboard {
 public:
  static const std::vector<std::string>& DefaultAccumulatingPrefixes();

  Blackboard() : Blackboard(DefaultAccumulatingPrefixes()) {}
  explicit Blackboard(std::vector<std::string> accumulating_prefixes);

  // Throws BlackboardError when the key already holds a value.
  void Set(const std::string& key, nlohmann::json value);
  // Throws BlackboardError unless the key is accumulating.
  void Append(const std::string& key, nlohmann::json value);

  bool IsAccumulating(std::string_view key) const;
  bool Has(const std::string& key) const { return entries_.count(key) > 0; }
  // Throws std::out_of_range for a missing key.
  const nlohmann::json& Get(const std::string& key) const { return entries_.at(key); }
  const std::map<std::string, nlohmann::json>& entries() const { return entries_; }
  // Keys in the order of their first write.
  const std::vector<std::string>& write_order() const { return write_order_; }
  nlohmann::json ToJson() const;

 private:
  std::vector<std::string> prefixes_;
  std::map<std::string, nlohmann::json> entries_;
  std::vector<std::string> write_order_;
};

struct TraceEntry {
  std::string path;
  std::string node;
  TickStatus status = TickStatus::kFailure;
  double t = 0.0;
  std::string note;
};

nlohmann::json ToJson(const TraceEntry& entry);

// Leaf behaviour lives outside the tree; the tree only knows names and args.
class ActionExecutor {
 public:
  virtual ~ActionExecutor() = default;
  virtual bool Knows(const std::string& action) const = 0;
  // `note` receives an optional diagnostic for the trace.
  virtual TickStatus Execute(const BTNode& leaf, const std::string& path,
                             Blackboard& blackboard, std::string& note) = 0;
  // Timestamp used for trace entries.
  virtual double Now() const = 0;
};

// One tick from the root. Composites keep no memory between ticks. Every
// node that finishes appends an entry to `trace` (children before parents).
TickStatus Tick(const BTNode& root, Blackboard& blackboard, ActionExecutor& executor,
                std::vector<TraceEntry>* trace = nullptr);

}  // namespace real2sim::bt

#endif  // REAL2SIM_BT_H_
