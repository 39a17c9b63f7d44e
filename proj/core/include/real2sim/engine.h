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

#ifndef REAL2SIM_ENGINE_H_
#define REAL2SIM_ENGINE_H_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "real2sim/actions.h"
#include "real2sim/measurements.h"
#include "real2sim/plan_checks.h"
#include "real2sim/planner_client.h"
#include "real2sim/run_config.h"
#include "real2sim/scene.h"
#include "real2sim/world.h"

namespace real2sim::engine {

enum ExitCode : int {
  kExitOk = 0,
  kExitError = 1,
  kExitRejected = 2,
  kExitExecutionFailed = 3,
  kExitEstimationIncomplete = 4,
};

struct ExecutionResult {
  bt::TickStatus status = bt::TickStatus::kFailure;
  nlohmann::json blackboard;
  std::vector<bt::TraceEntry> trace;
  std::vector<sim::WorldEvent> events;
  // Object poses after execution, read back for reporting only.
  std::vector<sim::ObservedObject> final_poses;
  double sim_time = 0.0;
  long ticks = 0;
};

// Runs a checked plan in a fresh world seeded with `seed`. Any force stream
// still armed at the end is flushed into the blackboard.
ExecutionResult ExecutePlan(const bt::ValidatedPlan& plan, sim::GroundTruthWorld truth,
                            const KinematicChain& chain, const SceneMetadata& metadata,
                            const RuntimeConfig& runtime, std::uint64_t seed,
                            const Runtime::SensorSink& sink = nullptr);

// Estimator settings for a run. The smoothing window defaults to 1 when the
// configured torque noise is zero and 9 otherwise.
est::EstimationOptions EstimationOptionsFor(const RunConfig& config,
                                            const sim::GroundTruthWorld& truth);

// "mock:<scenario>" or "remote".
std::unique_ptr<planner::PlannerClient> MakePlannerClient(
    const std::string& spec, const scene::RequiredParameters& phi,
    const std::vector<std::string>& detected_objects);

struct PlanningResult {
  scene::SceneDescription scene;
  std::string scene_text;
  SceneMetadata metadata;
  planner::MissingResult missing;
  planner::ComposedPrompt prompt;
  std::optional<planner::PlannerExchange> exchange;
  planner::GuardReport guard;
  std::vector<std::string> violations;
  std::optional<bt::PlanDocument> plan;  // after the guard
  std::optional<bt::ValidatedPlan> validated;
  std::string error;
};

// Scene, metadata, missing parameters, prompt, planner call, guard and
// validation. Throws on unreadable inputs; planner problems land in
// `error` / `violations`.
PlanningResult Plan(const RunConfig& config, const ActionRegistry& registry);

struct PipelineResult {
  int exit_code = kExitOk;
  nlohmann::json report;
  std::string summary;
};

// Full pipeline. Writes into out_dir: prompt.txt, planner_request.json,
// planner_response.txt, guard.json, plan.json, trace.jsonl,
// measurements.jsonl, sensor_log*.jsonl, estimates.json,
// scene_completed.xml (when every parameter was covered) and report.json.
PipelineResult RunPipeline(const RunConfig& config, const std::filesystem::path& out_dir);

// Recomputes estimates from a run directory's measurements.jsonl and
// compares them with its estimates.json.
PipelineResult Replay(const std::filesystem::path& run_dir);

}  // namespace real2sim::engine

#endif  // REAL2SIM_ENGINE_H_
