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

#include "real2sim/plan_checks.h"

#include <algorithm>

namespace real2sim::planner {
namespace {

using bt::BTNode;

std::string Label(const BTNode& node) {
  return node.name.empty() ? std::string(bt::ToString(node.type)) : node.name;
}

void CheckArgs(const BTNode& node, const std::string& path, const ActionRegistry& registry,
               std::vector<std::string>& out) {
  if (node.type == bt::NodeType::kAction) {
    for (auto& v : registry.ValidateArgs(node, path)) out.push_back(std::move(v));
    return;
  }
  for (size_t i = 0; i < node.children.size(); ++i) {
    CheckArgs(node.children[i], path + "/" + std::to_string(i) + ":" + Label(node.children[i]),
              registry, out);
  }
}

struct Ungrounded {
  std::vector<std::string> objects;
  std::vector<std::string> reasons;
};

void FindUngrounded(const BTNode& node, const std::vector<std::string>& detected,
                    const SceneMetadata& metadata, const ActionRegistry& registry,
                    Ungrounded& out) {
  if (node.type != bt::NodeType::kAction) {
    for (const auto& child : node.children) {
      FindUngrounded(child, detected, metadata, registry, out);
    }
    return;
  }
  for (const auto& ref : registry.ObjectReferences(node)) {
    if (metadata.FindLocation(ref) != nullptr) continue;
    if (std::find(out.objects.begin(), out.objects.end(), ref) != out.objects.end()) continue;
    std::string reason;
    if (std::find(detected.begin(), detected.end(), ref) == detected.end()) {
      reason = "not detected in the image";
    }
    if (metadata.FindObject(ref) == nullptr) {
      reason += (reason.empty() ? "" : "; ") + std::string("pose unavailable in metadata");
    }
    if (reason.empty()) continue;
    out.objects.push_back(ref);
    out.reasons.push_back(std::move(reason));
  }
}

std::string Join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : ", ") + s;
  return out;
}

}  // namespace

ValidationResult PlanValidator::Validate(const bt::PlanDocument& plan,
                                         const ActionRegistry& registry) {
  ValidationResult result;
  result.violations = bt::StructuralViolations(plan.tree);
  CheckArgs(plan.tree, "0:" + Label(plan.tree), registry, result.violations);
  if (plan.explanation.empty()) result.violations.push_back("plan: empty explanation");
  if (result.violations.empty()) result.plan = bt::ValidatedPlan(plan);
  return result;
}

nlohmann::json GuardReport::ToJson() const {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& r : removed) {
    list.push_back({{"path", r.path}, {"objects", r.objects}, {"reasons", r.reasons}});
  }
  return {{"removed", list}, {"rejected", rejected}, {"explanation", explanation}};
}

GuardResult HallucinationGuard(const bt::PlanDocument& plan, const SceneMetadata& metadata,
                               const ActionRegistry& registry) {
  GuardResult result{plan, {}};
  const std::string root_path = "0:" + Label(plan.tree);
  if (plan.tree.type == bt::NodeType::kAction) {
    Ungrounded u;
    FindUngrounded(plan.tree, plan.detected_objects, metadata, registry, u);
    if (!u.objects.empty()) {
      result.report.removed.push_back({root_path, u.objects, u.reasons});
      result.report.rejected = true;
    }
  } else {
    std::vector<BTNode> kept;
    for (size_t i = 0; i < plan.tree.children.size(); ++i) {
      const BTNode& child = plan.tree.children[i];
      Ungrounded u;
      FindUngrounded(child, plan.detected_objects, metadata, registry, u);
      if (u.objects.empty()) {
        kept.push_back(child);
        continue;
      }
      result.report.removed.push_back(
          {root_path + "/" + std::to_string(i) + ":" + Label(child), u.objects, u.reasons});
    }
    result.plan.tree.children = std::move(kept);
    result.report.rejected = !plan.tree.children.empty() && result.plan.tree.children.empty();
  }
  if (result.report.removed.empty()) {
    result.report.explanation = "every object reference is grounded";
    return result;
  }
  std::vector<std::string> objects;
  for (const auto& r : result.report.removed) {
    for (size_t i = 0; i < r.objects.size(); ++i) {
      objects.push_back(r.objects[i] + " (" + r.reasons[i] + ")");
    }
  }
  result.report.explanation =
      "removed " + std::to_string(result.report.removed.size()) +
      " subtree(s) referring to ungrounded objects: " + Join(objects) +
      (result.report.rejected ? "; nothing executable remains, plan rejected" : "");
  return result;
}

MissingResult MissingParameters(const scene::SceneDescription& scene,
                                const std::vector<ParameterTarget>& targets) {
  using scene::ParamKind;
  MissingResult result;
  std::vector<ParameterTarget> all = targets;
  if (all.empty()) {
    for (const auto& body : scene.bodies) all.push_back({body.name, {}});
  }
  for (const auto& target : all) {
    const scene::Body* body = scene.Find(target.name);
    if (body == nullptr) {
      result.diagnostics.push_back("target '" + target.name + "' is not in the scene");
      continue;
    }
    std::vector<ParamKind> applicable;
    if (body->surface) {
      applicable = {ParamKind::kSurfaceHeight};
    } else {
      applicable = {ParamKind::kMass, ParamKind::kFriction, ParamKind::kDimensions};
    }
    std::vector<ParamKind> wanted = target.kinds.empty() ? applicable : target.kinds;
    for (ParamKind kind : wanted) {
      if (std::find(applicable.begin(), applicable.end(), kind) == applicable.end()) {
        result.diagnostics.push_back("'" + target.name + "' has no parameter " +
                                     std::string(scene::ToString(kind)));
        continue;
      }
      bool missing = false;
      switch (kind) {
        case ParamKind::kSurfaceHeight: missing = !body->height().has_value(); break;
        case ParamKind::kMass: missing = !body->mass.has_value(); break;
        case ParamKind::kFriction: missing = !body->friction.has_value(); break;
        case ParamKind::kDimensions: missing = !body->size.has_value(); break;
      }
      if (missing) result.phi.insert({target.name, kind});
    }
  }
  return result;
}

}  // namespace real2sim::planner
