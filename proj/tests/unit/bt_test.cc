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

#include <functional>
#include <map>
#include <random>

#include <gtest/gtest.h>

#include "real2sim/bt.h"
#include "real2sim/plan.h"

namespace real2sim::bt {
namespace {

// Leaves succeed or fail according to a fixed table; every execution is
// recorded in order.
class ScriptedExecutor : public ActionExecutor {
 public:
  explicit ScriptedExecutor(std::map<std::string, TickStatus> outcomes)
      : outcomes_(std::move(outcomes)) {}
  bool Knows(const std::string& action) const override { return outcomes_.count(action) > 0; }
  TickStatus Execute(const BTNode& leaf, const std::string&, Blackboard& bb,
                     std::string&) override {
    executed.push_back(leaf.name);
    bb.Append("gripper_pose", leaf.name);
    clock_ += 1.0;
    return outcomes_.at(leaf.name);
  }
  double Now() const override { return clock_; }

  std::vector<std::string> executed;

 private:
  std::map<std::string, TickStatus> outcomes_;
  double clock_ = 0.0;
};

struct Case {
  BTNode tree;
  std::map<std::string, TickStatus> outcomes;
};

BTNode RandomTree(std::mt19937_64& rng, int depth, int& next_leaf,
                  std::map<std::string, TickStatus>& outcomes) {
  std::uniform_int_distribution<int> pick(0, 2);
  std::bernoulli_distribution ok(0.7);
  const int kind = depth == 0 ? 2 : pick(rng);
  if (kind == 2) {
    const std::string name = "L" + std::to_string(next_leaf++);
    outcomes[name] = ok(rng) ? TickStatus::kSuccess : TickStatus::kFailure;
    return BTNode::Action(name);
  }
  std::uniform_int_distribution<int> width(1, 4);
  std::vector<BTNode> children;
  const int n = width(rng);
  for (int i = 0; i < n; ++i) children.push_back(RandomTree(rng, depth - 1, next_leaf, outcomes));
  return kind == 0 ? BTNode::Sequence(std::move(children)) : BTNode::Selector(std::move(children));
}

Case RandomCase(std::mt19937_64& rng) {
  Case c;
  int next = 0;
  c.tree = RandomTree(rng, 4, next, c.outcomes);
  return c;
}

struct Outcome {
  TickStatus status;
  std::vector<std::string> executed;
  std::vector<TraceEntry> trace;
};

Outcome Execute(const BTNode& tree, const std::map<std::string, TickStatus>& outcomes) {
  ScriptedExecutor ex(outcomes);
  Blackboard bb;
  Outcome r;
  r.status = Tick(tree, bb, ex, &r.trace);
  r.executed = ex.executed;
  return r;
}

TickStatus Invert(TickStatus s) {
  return s == TickStatus::kSuccess ? TickStatus::kFailure : TickStatus::kSuccess;
}

BTNode Dual(const BTNode& node) {
  BTNode out = node;
  if (node.type == NodeType::kSequence) out.type = NodeType::kSelector;
  if (node.type == NodeType::kSelector) out.type = NodeType::kSequence;
  out.children.clear();
  for (const auto& c : node.children) out.children.push_back(Dual(c));
  return out;
}

constexpr int kCases = 500;

TEST(BtProperties, SequenceShortCircuitsOnFailure) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < kCases; ++i) {
    Case c = RandomCase(rng);
    std::vector<BTNode> leaves;
    std::map<std::string, TickStatus> outcomes;
    std::uniform_int_distribution<int> fail_at(0, 5);
    const int k = fail_at(rng);
    for (int j = 0; j < 6; ++j) {
      const std::string name = "S" + std::to_string(j);
      leaves.push_back(BTNode::Action(name));
      outcomes[name] = j == k ? TickStatus::kFailure : TickStatus::kSuccess;
    }
    const Outcome r = Execute(BTNode::Sequence(leaves, "seq"), outcomes);
    EXPECT_EQ(r.status, TickStatus::kFailure);
    ASSERT_EQ(r.executed.size(), static_cast<size_t>(k + 1));
    // Nothing after the failing child appears in the trace.
    for (const auto& e : r.trace) {
      for (int j = k + 1; j < 6; ++j) EXPECT_NE(e.node, "S" + std::to_string(j));
    }
    // All-success sequences run every child.
    const Outcome all = Execute(c.tree, c.outcomes);
    if (c.tree.type == NodeType::kSequence && all.status == TickStatus::kSuccess) {
      EXPECT_FALSE(all.executed.empty());
    }
  }
}

TEST(BtProperties, SelectorIsTheDualOfSequence) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < kCases; ++i) {
    const Case c = RandomCase(rng);
    std::map<std::string, TickStatus> inverted;
    for (const auto& [k, v] : c.outcomes) inverted[k] = Invert(v);
    const Outcome a = Execute(c.tree, c.outcomes);
    const Outcome b = Execute(Dual(c.tree), inverted);
    EXPECT_EQ(b.status, Invert(a.status));
    EXPECT_EQ(a.executed, b.executed);
  }
}

TEST(BtProperties, SingleChildCompositeIsIdentity) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < kCases; ++i) {
    const Case c = RandomCase(rng);
    const Outcome bare = Execute(c.tree, c.outcomes);
    for (const BTNode& wrapped : {BTNode::Sequence({c.tree}), BTNode::Selector({c.tree})}) {
      const Outcome w = Execute(wrapped, c.outcomes);
      EXPECT_EQ(w.status, bare.status);
      EXPECT_EQ(w.executed, bare.executed);
    }
  }
}

TEST(BtProperties, AppendedSubtreeDoesNotDisturbPrefix) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < kCases; ++i) {
    Case a = RandomCase(rng);
    Case b = RandomCase(rng);
    // Rename b's leaves so the outcome tables do not collide.
    std::map<std::string, TickStatus> merged = a.outcomes;
    std::function<void(BTNode&)> rename = [&](BTNode& n) {
      if (n.type == NodeType::kAction) {
        const TickStatus s = b.outcomes.at(n.name);
        n.name = "B" + n.name;
        merged[n.name] = s;
      }
      for (auto& child : n.children) rename(child);
    };
    rename(b.tree);
    const Outcome alone = Execute(BTNode::Sequence({a.tree}), merged);
    const Outcome both = Execute(BTNode::Sequence({a.tree, b.tree}), merged);
    ASSERT_GE(both.executed.size(), alone.executed.size());
    EXPECT_TRUE(std::equal(alone.executed.begin(), alone.executed.end(), both.executed.begin()));
    if (alone.status == TickStatus::kFailure) {
      EXPECT_EQ(both.executed, alone.executed);
      EXPECT_EQ(both.status, TickStatus::kFailure);
    }
  }
}

TEST(BtProperties, DeterministicUnderFixedSeed) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    std::mt19937_64 r1(seed), r2(seed);
    const Case c1 = RandomCase(r1), c2 = RandomCase(r2);
    ASSERT_EQ(c1.tree, c2.tree);
    const Outcome a = Execute(c1.tree, c1.outcomes), b = Execute(c2.tree, c2.outcomes);
    EXPECT_EQ(a.status, b.status);
    ASSERT_EQ(a.trace.size(), b.trace.size());
    for (size_t k = 0; k < a.trace.size(); ++k) {
      EXPECT_EQ(ToJson(a.trace[k]), ToJson(b.trace[k]));
    }
  }
}

TEST(Bt, RunningPropagatesAndStopsSiblings) {
  const BTNode tree = BTNode::Sequence({BTNode::Action("a"), BTNode::Action("b")});
  const Outcome r = Execute(tree, {{"a", TickStatus::kRunning}, {"b", TickStatus::kSuccess}});
  EXPECT_EQ(r.status, TickStatus::kRunning);
  EXPECT_EQ(r.executed, std::vector<std::string>{"a"});
}

TEST(Bt, UnknownActionFailsWithNote) {
  const Outcome r = Execute(BTNode::Sequence({BTNode::Action("nope")}), {});
  EXPECT_EQ(r.status, TickStatus::kFailure);
  EXPECT_EQ(r.trace.front().note, "unknown action 'nope'");
}

TEST(Bt, TracePathsArePostOrder) {
  const BTNode tree = BTNode::Sequence(
      {BTNode::Sequence({BTNode::Action("a")}, "inner"), BTNode::Action("b")}, "root");
  const Outcome r = Execute(tree, {{"a", TickStatus::kSuccess}, {"b", TickStatus::kSuccess}});
  std::vector<std::string> paths;
  for (const auto& e : r.trace) paths.push_back(e.path);
  EXPECT_EQ(paths, (std::vector<std::string>{"0:root/0:inner/0:a", "0:root/0:inner",
                                             "0:root/1:b", "0:root"}));
}

TEST(Bt, StructuralViolations) {
  BTNode bad = BTNode::Sequence({BTNode::Selector({}, "empty")}, "root");
  BTNode leaf = BTNode::Action("x");
  leaf.children.push_back(BTNode::Action("y"));
  bad.children.push_back(leaf);
  const auto v = StructuralViolations(bad);
  ASSERT_EQ(v.size(), 2u);
  EXPECT_EQ(v[0], "0:root/0:empty: composite without children");
  EXPECT_EQ(v[1], "0:root/1:x: action node has children");
  EXPECT_EQ(Depth(bad), 3);
}

TEST(Blackboard, WriteOnceAndAccumulating) {
  Blackboard bb;
  bb.Set("k", 1);
  EXPECT_THROW(bb.Set("k", 2), BlackboardError);
  EXPECT_THROW(bb.Append("k", 2), BlackboardError);
  bb.Append("mass/bottle", 1);
  bb.Append("mass/bottle", 2);
  EXPECT_EQ(bb.Get("mass/bottle"), nlohmann::json::array({1, 2}));
  EXPECT_THROW(bb.Set("mass/bottle", 3), BlackboardError);
  EXPECT_EQ(bb.write_order(), (std::vector<std::string>{"k", "mass/bottle"}));
}

TEST(Plan, ParsesAndRoundTrips) {
  const nlohmann::json doc = {
      {"explanation", "weigh"},
      {"detected_objects", {"bottle"}},
      {"tree",
       {{"type", "Sequence"},
        {"name", "root"},
        {"children",
         {{{"type", "Action"}, {"name", "MovePose"}, {"args", {{"pose", "bottle"}}}},
          {{"type", "Action"}, {"name", "MeasureMass"}, {"args", nlohmann::json::object()}}}}}}};
  const PlanDocument plan = ParsePlanDocument(doc);
  EXPECT_EQ(plan.tree.children.size(), 2u);
  EXPECT_EQ(ParsePlanDocument(ToJson(plan)), plan);
}

TEST(Plan, SchemaErrorsNameThePath) {
  auto expect_path = [](const std::string& text, const std::string& path) {
    try {
      ParsePlanDocument(std::string_view(text));
      ADD_FAILURE() << "accepted: " << text;
    } catch (const PlanSchemaError& e) {
      EXPECT_EQ(e.path(), path) << e.what();
    }
  };
  expect_path(R"({"explanation": "", "detected_objects": [], "tree": {"type": "Action", "name": "x", "args": {}}})",
              "explanation");
  expect_path(R"({"explanation": "e", "detected_objects": [], "tree": {"type": "Loop", "children": []}})",
              "tree.type");
  expect_path(R"({"explanation": "e", "detected_objects": [], "tree": {"type": "Sequence", "children": [{"type": "Action"}]}})",
              "tree.children[0].name");
  expect_path("not json", "$");
}

}  // namespace
}  // namespace real2sim::bt
