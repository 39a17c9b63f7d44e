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

#ifndef REAL2SIM_MOCK_PLANS_H_
#define REAL2SIM_MOCK_PLANS_H_

#include <string>
#include <string_view>
#include <vector>

#include "real2sim/plan.h"
#include "real2sim/scene.h"

namespace real2sim::planner {

const std::vector<std::string>& MockScenarios();

// Throws std::invalid_argument on an unknown id.
bt::PlanDocument MockPlan(std::string_view scenario, const scene::RequiredParameters& phi,
                          const std::vector<std::string>& detected_objects);

// Building blocks shared by the canned plans.
bt::BTNode WeighAndRestore(const std::string& object);
bt::BTNode MeasureSurfaceHeight(const std::string& surface);
bt::BTNode MeasureFrictionByPush(const std::string& object);

}  // namespace real2sim::planner

#endif  // REAL2SIM_MOCK_PLANS_H_
