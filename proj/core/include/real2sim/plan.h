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

#ifndef REAL2SIM_PLAN_H_
#define REAL2SIM_PLAN_H_

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "real2sim/bt.h"

namespace real2sim::planner {
class PlanValidator;
}  // namespace real2sim::planner

namespace real2sim::bt {

// Planner output on the wire:
//   {"explanation": "...", "detected_objects": ["bottle", ...],
//    "tree": {"type": "Sequence", "name": "...", "children": [...]}}
// Action nodes carry "args" instead of "children".
struct PlanDocument {
  std::string explanation;
  std::vector<std::string> detected_objects;
  BTNode tree;

  bool operator==(const PlanDocument& other) const = default;
};

class PlanSchemaError : public std::runtime_error {
 public:
  PlanSchemaError(std::string path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// Throws PlanSchemaError naming the JSON path of the first offending value.
PlanDocument ParsePlanDocument(const nlohmann::json& document);
PlanDocument ParsePlanDocument(std::string_view text);
BTNode ParseNode(const nlohmann::json& node, const std::string& path = "tree");

nlohmann::json ToJson(const BTNode& node);
nlohmann::json ToJson(const PlanDocument& plan);

// A plan that passed validation. Only the planner's validator can create
// one, so a tree built through FromPlan has always been checked.
class ValidatedPlan {
 public:
  const PlanDocument& document() const { return document_; }

 private:
  friend class real2sim::planner::PlanValidator;
  explicit ValidatedPlan(PlanDocument document) : document_(std::move(document)) {}
  PlanDocument document_;
};

BTNode FromPlan(const ValidatedPlan& plan);

}  // namespace real2sim::bt

#endif  // REAL2SIM_PLAN_H_
