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

#ifndef REAL2SIM_PLAN_CHECKS_H_
#define REAL2SIM_PLAN_CHECKS_H_

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "real2sim/actions.h"
#include "real2sim/metadata.h"
#include "real2sim/plan.h"
#include "real2sim/scene.h"

namespace real2sim::planner {

struct ValidationResult {
  std::vector<std::string> violations;
  std::optional<bt::ValidatedPlan> plan;

  bool ok() const { return plan.has_value(); }
};

class PlanValidator {
 public:
  // Structure plus per-action argument checks against the registry.
  static ValidationResult Validate(const bt::PlanDocument& plan, const ActionRegistry& registry);
};

struct GuardRemoval {
  std::string path;
  std::vector<std::string> objects;
  std::vector<std::string> reasons;
};

struct GuardReport {
  std::vector<GuardRemoval> removed;
  bool rejected = false;
  std::string explanation;

  nlohmann::json ToJson() const;
};

struct GuardResult {
  bt::PlanDocument plan;
  GuardReport report;
};

// An object reference is grounded when the planner listed it among the
// detected objects and the metadata has an entry for it. Locations are always
// grounded. Each top-level subtree holding an ungrounded reference is removed;
// the plan is rejected when nothing is left.
GuardResult HallucinationGuard(const bt::PlanDocument& plan, const SceneMetadata& metadata,
                               const ActionRegistry& registry);

struct ParameterTarget {
  std::string name;
  // Empty means every kind that applies to the body.
  std::vector<scene::ParamKind> kinds;
};

struct MissingResult {
  scene::RequiredParameters phi;
  std::vector<std::string> diagnostics;
};

// Surfaces need a height; objects need mass, friction and dimensions. Only
// absent values are reported. An empty target list means every body.
MissingResult MissingParameters(const scene::SceneDescription& scene,
                                const std::vector<ParameterTarget>& targets);

}  // namespace real2sim::planner

#endif  // REAL2SIM_PLAN_CHECKS_H_
