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

#include "real2sim/plan.h"

namespace real2sim::bt {

BTNode ParseNode(const nlohmann::json& node, const std::string& path) {
  if (!node.is_object()) throw PlanSchemaError(path, "node must be an object");
  const auto type_it = node.find("type");
  if (type_it == node.end() || !type_it->is_string()) {
    throw PlanSchemaError(path + ".type", "missing string");
  }
  BTNode out;
  try {
    out.type = NodeTypeFromString(type_it->get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw PlanSchemaError(path + ".type", e.what());
  }
  if (const auto it = node.find("name"); it != node.end()) {
    if (!it->is_string()) throw PlanSchemaError(path + ".name", "must be a string");
    out.name = it->get<std::string>();
  }
  for (const auto& [key, value] : node.items()) {
    if (key != "type" && key != "name" && key != "args" && key != "children") {
      throw PlanSchemaError(path + "." + key, "unexpected field");
    }
  }
  if (out.type == NodeType::kAction) {
    if (out.name.empty()) throw PlanSchemaError(path + ".name", "action needs a name");
    if (node.contains("children")) {
      throw PlanSchemaError(path + ".children", "action nodes take no children");
    }
    if (const auto it = node.find("args"); it != node.end()) {
      if (!it->is_object()) throw PlanSchemaError(path + ".args", "must be an object");
      out.args = *it;
    }
    return out;
  }
  if (node.contains("args")) throw PlanSchemaError(path + ".args", "composites take no args");
  const auto children = node.find("children");
  if (children == node.end() || !children->is_array()) {
    throw PlanSchemaError(path + ".children", "composite needs a children array");
  }
  for (size_t i = 0; i < children->size(); ++i) {
    out.children.push_back(
        ParseNode((*children)[i], path + ".children[" + std::to_string(i) + "]"));
  }
  return out;
}

PlanDocument ParsePlanDocument(const nlohmann::json& document) {
  if (!document.is_object()) throw PlanSchemaError("$", "plan must be an object");
  PlanDocument plan;
  const auto explanation = document.find("explanation");
  if (explanation == document.end() || !explanation->is_string()) {
    throw PlanSchemaError("explanation", "missing string");
  }
  plan.explanation = explanation->get<std::string>();
  if (plan.explanation.empty()) throw PlanSchemaError("explanation", "must not be empty");
  const auto detected = document.find("detected_objects");
  if (detected == document.end() || !detected->is_array()) {
    throw PlanSchemaError("detected_objects", "missing array");
  }
  for (size_t i = 0; i < detected->size(); ++i) {
    if (!(*detected)[i].is_string()) {
      throw PlanSchemaError("detected_objects[" + std::to_string(i) + "]", "must be a string");
    }
    plan.detected_objects.push_back((*detected)[i].get<std::string>());
  }
  const auto tree = document.find("tree");
  if (tree == document.end()) throw PlanSchemaError("tree", "missing");
  plan.tree = ParseNode(*tree, "tree");
  return plan;
}

PlanDocument ParsePlanDocument(std::string_view text) {
  nlohmann::json document;
  try {
    document = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw PlanSchemaError("$", std::string("not valid JSON: ") + e.what());
  }
  return ParsePlanDocument(document);
}

nlohmann::json ToJson(const BTNode& node) {
  nlohmann::json j = {{"type", std::string(ToString(node.type))}};
  if (!node.name.empty()) j["name"] = node.name;
  if (node.type == NodeType::kAction) {
    j["args"] = node.args;
  } else {
    nlohmann::json children = nlohmann::json::array();
    for (const auto& child : node.children) children.push_back(ToJson(child));
    j["children"] = std::move(children);
  }
  return j;
}

nlohmann::json ToJson(const PlanDocument& plan) {
  return {{"explanation", plan.explanation},
          {"detected_objects", plan.detected_objects},
          {"tree", ToJson(plan.tree)}};
}

BTNode FromPlan(const ValidatedPlan& plan) { return plan.document().tree; }

}  // namespace real2sim::bt
