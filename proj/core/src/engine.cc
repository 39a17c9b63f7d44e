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

#include "real2sim/engine.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include "real2sim/chain_config.h"
#include "real2sim/report.h"
#include "real2sim/world_config.h"

namespace real2sim::engine {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string ReadText(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

json PhiJson(const scene::RequiredParameters& phi) {
  json out = json::array();
  for (const auto& [name, kind] : phi) {
    out.push_back({{"target", name}, {"param", std::string(scene::ToString(kind))}});
  }
  return out;
}

void CountActions(const bt::BTNode& node, json& counts) {
  if (node.type == bt::NodeType::kAction) {
    counts[node.name] = counts.value(node.name, 0) + 1;
    return;
  }
  for (const auto& child : node.children) CountActions(child, counts);
}

json PlanSummary(const bt::PlanDocument& plan) {
  json counts = json::object();
  CountActions(plan.tree, counts);
  return {{"explanation", plan.explanation},
          {"detected_objects", plan.detected_objects},
          {"actions", counts},
          {"depth", bt::Depth(plan.tree)}};
}

json EstimationJson(const est::EstimationOptions& o) {
  return {{"g", o.g},
          {"match_ratio", o.friction.match_ratio},
          {"plateau_fraction", o.friction.plateau_fraction},
          {"smoothing", o.friction.smoothing},
          {"vertical_tolerance", o.friction.vertical_tolerance}};
}

est::EstimationOptions EstimationFromJson(const json& j) {
  est::EstimationOptions o;
  o.g = j.at("g").get<double>();
  o.friction.match_ratio = j.at("match_ratio").get<double>();
  o.friction.plateau_fraction = j.at("plateau_fraction").get<double>();
  o.friction.smoothing = j.at("smoothing").get<int>();
  o.friction.vertical_tolerance = j.at("vertical_tolerance").get<double>();
  return o;
}

json RecordsJson(const std::vector<est::EstimateRecord>& records) {
  json out = json::array();
  for (const auto& r : records) out.push_back(est::ToJson(r));
  return out;
}

std::string StatusName(int exit_code) {
  switch (exit_code) {
    case kExitOk: return "ok";
    case kExitRejected: return "rejected";
    case kExitExecutionFailed: return "execution_failed";
    case kExitEstimationIncomplete: return "estimation_incomplete";
    default: return "error";
  }
}

PipelineResult Finish(json report, int exit_code, const fs::path& out_dir) {
  report["exit_code"] = exit_code;
  report["status"] = StatusName(exit_code);
  WriteText(out_dir / "report.json", report.dump(2) + "\n");
  return {exit_code, report, FormatSummary(report)};
}

}  // namespace

ExecutionResult ExecutePlan(const bt::ValidatedPlan& plan, sim::GroundTruthWorld truth,
                            const KinematicChain& chain, const SceneMetadata& metadata,
                            const RuntimeConfig& runtime_config, std::uint64_t seed,
                            const Runtime::SensorSink& sink) {
  truth.params.seed = seed;
  sim::World world(std::move(truth), chain);
  ExecutionResult result;
  bt::Blackboard blackboard;
  try {
    Runtime runtime(world, runtime_config, metadata);
    if (sink) runtime.SetSensorSink(sink);
    const ActionRegistry registry = ActionRegistry::Default(chain.dof());
    RuntimeExecutor executor(registry, runtime);
    const bt::BTNode tree = bt::FromPlan(plan);
    result.status = bt::Tick(tree, blackboard, executor, &result.trace);
    FlushForceStream(runtime, blackboard);
  } catch (const std::exception& e) {
    result.status = bt::TickStatus::kFailure;
    result.trace.push_back({"0:engine", "engine", bt::TickStatus::kFailure, world.time(),
                            std::string("aborted: ") + e.what()});
  }
  result.blackboard = blackboard.ToJson();
  result.events = world.events();
  result.final_poses = world.ObservePoses();
  result.sim_time = world.time();
  result.ticks = std::lround(world.time() / world.dt());
  return result;
}

est::EstimationOptions EstimationOptionsFor(const RunConfig& config,
                                            const sim::GroundTruthWorld& truth) {
  est::EstimationOptions options;
  options.g = truth.params.gravity;
  options.friction = config.friction;
  options.friction.smoothing =
      config.smoothing.value_or(truth.params.noise_sigma_torque > 0.0 ? 9 : 1);
  return options;
}

std::unique_ptr<planner::PlannerClient> MakePlannerClient(
    const std::string& spec, const scene::RequiredParameters& phi,
    const std::vector<std::string>& detected_objects) {
  if (spec.rfind("mock:", 0) == 0) {
    return std::make_unique<planner::MockPlannerClient>(spec.substr(5), phi, detected_objects);
  }
  if (spec == "remote") {
    return std::make_unique<planner::RemotePlannerClient>(
        planner::RemoteOptions::FromEnvironment());
  }
  throw planner::PlannerError("planner must be 'mock:<scenario>' or 'remote', got '" + spec +
                              "'");
}

PlanningResult Plan(const RunConfig& config, const ActionRegistry& registry) {
  PlanningResult r;
  r.scene_text = ReadText(config.scene);
  r.scene = scene::ParseScene(r.scene_text);
  r.metadata = LoadMetadata(config.metadata);
  r.missing = planner::MissingParameters(r.scene, config.targets);

  planner::PromptBundle bundle{config.request, r.scene_text, config.image, r.metadata};
  r.prompt = planner::ComposePrompt(bundle, registry);

  const std::vector<std::string> detected =
      config.view ? planner::LoadViewManifest(config.view->string()) : std::vector<std::string>{};
  try {
    auto client = MakePlannerClient(config.planner, r.missing.phi, detected);
    r.exchange = client->Plan(r.prompt);
    const bt::PlanDocument raw = bt::ParsePlanDocument(planner::ExtractPlanJson(r.exchange->response));
    planner::GuardResult guarded = planner::HallucinationGuard(raw, r.metadata, registry);
    r.guard = guarded.report;
    r.plan = guarded.plan;
    if (r.guard.rejected) return r;
    planner::ValidationResult validation = planner::PlanValidator::Validate(*r.plan, registry);
    r.violations = validation.violations;
    r.validated = std::move(validation.plan);
  } catch (const planner::PlannerError& e) {
    r.error = e.what();
  } catch (const bt::PlanSchemaError& e) {
    r.error = std::string("plan schema: ") + e.what();
  }
  return r;
}

PipelineResult RunPipeline(const RunConfig& config, const fs::path& out_dir) {
  config.Validate();
  fs::create_directories(out_dir);
  const sim::GroundTruthWorld truth = sim::LoadWorldConfig(config.world);
  const KinematicChain chain = config.chain ? LoadChainConfig(*config.chain) : DefaultChain();
  const ActionRegistry registry = ActionRegistry::Default(chain.dof());
  const est::EstimationOptions estimation = EstimationOptionsFor(config, truth);

  json report = {{"version", 1},
                 {"request", config.request},
                 {"planner", config.planner},
                 {"seed", config.seed},
                 {"repeats", config.repeats},
                 {"prompt_version", std::string(planner::kSystemPromptVersion)},
                 {"estimation", EstimationJson(estimation)}};

  PlanningResult planning = Plan(config, registry);
  report["phi"] = PhiJson(planning.missing.phi);
  json diagnostics = planning.missing.diagnostics;
  WriteText(out_dir / "prompt.txt", planning.prompt.text);
  if (planning.exchange) {
    WriteText(out_dir / "planner_request.json", planning.exchange->request);
    WriteText(out_dir / "planner_response.txt", planning.exchange->response);
  }
  report["guard"] = planning.guard.ToJson();
  report["violations"] = planning.violations;
  report["error"] = planning.error;
  report["diagnostics"] = diagnostics;
  WriteText(out_dir / "guard.json", planning.guard.ToJson().dump(2) + "\n");
  if (planning.plan) {
    WriteText(out_dir / "plan.json", bt::ToJson(*planning.plan).dump(2) + "\n");
    report["plan"] = PlanSummary(*planning.plan);
  }
  if (!planning.error.empty() || !planning.validated) {
    return Finish(report, kExitRejected, out_dir);
  }

  std::ofstream trace_out(out_dir / "trace.jsonl");
  std::ofstream measurements_out(out_dir / "measurements.jsonl");
  measurements_out << json{{"kind", "header"},
                           {"version", 1},
                           {"seed", config.seed},
                           {"repeats", config.repeats},
                           {"estimation", EstimationJson(estimation)}}
                              .dump()
                   << "\n";

  std::vector<est::RunEstimates> runs;
  json runs_json = json::array();
  int exit_code = kExitOk;
  int completed = 0;
  for (int r = 0; r < config.repeats; ++r) {
    const std::uint64_t seed = config.seed + static_cast<std::uint64_t>(r);
    std::unique_ptr<std::ofstream> log_file;
    std::unique_ptr<sim::SensorLogWriter> log;
    if (config.sensor_log == SensorLogMode::kAll ||
        (config.sensor_log == SensorLogMode::kFirst && r == 0)) {
      const std::string name = config.sensor_log == SensorLogMode::kAll
                                   ? "sensor_log_" + std::to_string(r) + ".jsonl"
                                   : "sensor_log.jsonl";
      log_file = std::make_unique<std::ofstream>(out_dir / name);
      log = std::make_unique<sim::SensorLogWriter>(*log_file);
    }
    Runtime::SensorSink sink;
    if (log) sink = [&log](const sim::SensorRecord& rec) { log->Write(rec); };

    const ExecutionResult exec =
        ExecutePlan(*planning.validated, truth, chain, planning.metadata, config.runtime, seed, sink);
    for (const auto& entry : exec.trace) {
      json j = bt::ToJson(entry);
      j["repeat"] = r;
      trace_out << j.dump() << "\n";
    }
    const std::string status(bt::ToString(exec.status));
    measurements_out << json{{"kind", "repeat"},
                             {"repeat", r},
                             {"seed", seed},
                             {"status", status},
                             {"blackboard", exec.blackboard}}
                            .dump()
                     << "\n";
    json events = json::array();
    for (const auto& e : exec.events) {
      events.push_back({{"t", e.t}, {"kind", e.kind}, {"object", e.object}});
    }
    json run = {{"repeat", r},       {"seed", seed},          {"status", status},
                {"sim_time", exec.sim_time}, {"ticks", exec.ticks}, {"events", events}};
    json poses = json::object();
    for (const auto& o : exec.final_poses) poses[o.name] = PoseToJson(o.pose);
    run["final_poses"] = poses;
    if (exec.status != bt::TickStatus::kSuccess) {
      for (auto it = exec.trace.rbegin(); it != exec.trace.rend(); ++it) {
        if (!it->note.empty()) {
          run["failure"] = it->path + ": " + it->note;
          break;
        }
      }
      runs_json.push_back(run);
      exit_code = kExitExecutionFailed;
      break;
    }
    est::RunEstimates estimates;
    try {
      estimates = est::EstimateRun(est::ExtractMeasurements(exec.blackboard), estimation);
    } catch (const est::EstimationError& e) {
      estimates.diagnostics.push_back(e.what());
    }
    run["estimates"] = RecordsJson(estimates.records);
    run["diagnostics"] = estimates.diagnostics;
    run["vertical_load_flag"] = estimates.flagged;
    runs_json.push_back(run);
    runs.push_back(std::move(estimates));
    ++completed;
  }
  measurements_out << json{{"kind", "end"}, {"repeats_completed", completed}}.dump() << "\n";
  report["runs"] = runs_json;
  if (exit_code != kExitOk) return Finish(report, exit_code, out_dir);

  const std::vector<est::EstimateRecord> aggregated = est::AggregateRuns(runs);
  report["estimates"] = RecordsJson(aggregated);
  WriteText(out_dir / "estimates.json", est::EstimatesDocument(aggregated).dump(2) + "\n");
  try {
    const scene::MergeResult merged = scene::MergeEstimates(planning.scene, aggregated,
                                                            planning.missing.phi);
    WriteText(out_dir / "scene_completed.xml", scene::EmitXml(merged.scene));
    for (const auto& w : merged.warnings) diagnostics.push_back(w);
  } catch (const scene::SceneError& e) {
    diagnostics.push_back(e.what());
    exit_code = kExitEstimationIncomplete;
  }
  report["diagnostics"] = diagnostics;
  return Finish(report, exit_code, out_dir);
}

PipelineResult Replay(const fs::path& run_dir) {
  std::ifstream in(run_dir / "measurements.jsonl");
  if (!in) throw std::runtime_error("no measurements.jsonl in " + run_dir.string());
  std::optional<est::EstimationOptions> options;
  std::vector<est::RunEstimates> runs;
  bool ended = false;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const json record = json::parse(line);
    const std::string kind = record.at("kind");
    if (kind == "header") {
      options = EstimationFromJson(record.at("estimation"));
    } else if (kind == "repeat") {
      if (!options) throw std::runtime_error("measurements.jsonl: repeat before header");
      if (record.at("status") != bt::ToString(bt::TickStatus::kSuccess)) continue;
      runs.push_back(est::EstimateRun(est::ExtractMeasurements(record.at("blackboard")), *options));
    } else if (kind == "end") {
      ended = true;
    }
  }
  if (!ended) throw std::runtime_error("measurements.jsonl is truncated (no end record)");
  const std::vector<est::EstimateRecord> aggregated = est::AggregateRuns(runs);
  json report = {{"replayed_runs", runs.size()}, {"estimates", RecordsJson(aggregated)}};
  int exit_code = kExitOk;
  const fs::path stored = run_dir / "estimates.json";
  if (fs::exists(stored)) {
    const json expected = json::parse(ReadText(stored));
    const bool same = expected == est::EstimatesDocument(aggregated);
    report["matches_stored"] = same;
    if (!same) exit_code = kExitError;
  }
  report["exit_code"] = exit_code;
  report["status"] = exit_code == kExitOk ? "ok" : "mismatch";
  std::string summary = FormatEstimateTable(aggregated);
  if (report.contains("matches_stored")) {
    summary += report["matches_stored"].get<bool>() ? "matches estimates.json\n"
                                                    : "DIFFERS from estimates.json\n";
  }
  return {exit_code, report, summary};
}

}  // namespace real2sim::engine
