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

// r2s: command-line front end for the measurement pipeline.
//
//   r2s run --config fixtures/runs/scenario1.yaml --out runs/s1
//   r2s validate --plan plan.json --metadata metadata.json
//   r2s replay --run runs/s1
//   r2s print-prompt --config fixtures/runs/scenario1.yaml
//   r2s registry

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "real2sim/engine.h"

namespace {

namespace fs = std::filesystem;
using namespace real2sim;

struct Overrides {
  std::string config;
  std::string scene;
  std::string world;
  std::string planner;
  std::uint64_t seed = 0;
  int repeats = 0;
};

void AddConfigOptions(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config, "run configuration (YAML)")->required()->check(CLI::ExistingFile);
  cmd->add_option("--scene", o.scene, "scene description, overrides the config")->check(CLI::ExistingFile);
  cmd->add_option("--world", o.world, "ground-truth world, overrides the config")->check(CLI::ExistingFile);
  cmd->add_option("--planner", o.planner, "mock:<scenario> or remote");
  cmd->add_option("--seed", o.seed, "base seed; repeat r uses seed + r");
  cmd->add_option("--repeats", o.repeats, "number of executions")->check(CLI::PositiveNumber);
}

engine::RunConfig Resolve(const Overrides& o) {
  engine::RunConfig config = engine::LoadRunConfig(o.config);
  if (!o.scene.empty()) config.scene = o.scene;
  if (!o.world.empty()) config.world = o.world;
  if (!o.planner.empty()) config.planner = o.planner;
  if (o.seed != 0) config.seed = o.seed;
  if (o.repeats > 0) config.repeats = o.repeats;
  return config;
}

nlohmann::json ReadJson(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  return nlohmann::json::parse(in);
}

int Validate(const std::string& plan_path, const std::string& metadata_path) {
  const ActionRegistry registry = ActionRegistry::Default();
  const SceneMetadata metadata = LoadMetadata(metadata_path);
  nlohmann::json out;
  int code = engine::kExitOk;
  try {
    const bt::PlanDocument plan = bt::ParsePlanDocument(ReadJson(plan_path));
    const planner::GuardResult guarded = planner::HallucinationGuard(plan, metadata, registry);
    out["guard"] = guarded.report.ToJson();
    const auto validation = planner::PlanValidator::Validate(guarded.plan, registry);
    out["violations"] = validation.violations;
    if (guarded.report.rejected || !validation.ok()) code = engine::kExitRejected;
    if (!guarded.report.rejected) out["plan"] = bt::ToJson(guarded.plan);
  } catch (const bt::PlanSchemaError& e) {
    out["violations"] = {std::string("schema: ") + e.what()};
    code = engine::kExitRejected;
  }
  out["valid"] = code == engine::kExitOk;
  std::cout << out.dump(2) << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"real2sim: plan, execute and estimate missing scene parameters"};
  app.require_subcommand(1);

  Overrides run_opts;
  std::string out_dir = "r2s_run";
  auto* run = app.add_subcommand("run", "plan, execute and write a completed scene");
  AddConfigOptions(run, run_opts);
  run->add_option("--out", out_dir, "output directory");

  std::string plan_path, metadata_path;
  auto* validate = app.add_subcommand("validate", "check a plan file against the action set");
  validate->add_option("--plan", plan_path, "plan JSON")->required()->check(CLI::ExistingFile);
  validate->add_option("--metadata", metadata_path, "pose metadata JSON")
      ->required()->check(CLI::ExistingFile);

  std::string run_dir;
  auto* replay = app.add_subcommand("replay", "recompute estimates from an archived run");
  replay->add_option("--run", run_dir, "run output directory")->required()->check(CLI::ExistingDirectory);

  Overrides prompt_opts;
  auto* print_prompt = app.add_subcommand("print-prompt", "print the composed planner prompt");
  AddConfigOptions(print_prompt, prompt_opts);

  auto* registry = app.add_subcommand("registry", "print the action registry as JSON");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      const auto result = engine::RunPipeline(Resolve(run_opts), out_dir);
      std::cout << result.summary << "artifacts: " << fs::absolute(out_dir).string() << "\n";
      return result.exit_code;
    }
    if (*validate) return Validate(plan_path, metadata_path);
    if (*replay) {
      const auto result = engine::Replay(run_dir);
      std::cout << result.summary;
      return result.exit_code;
    }
    if (*print_prompt) {
      const engine::RunConfig config = Resolve(prompt_opts);
      std::ifstream scene(config.scene);
      std::stringstream text;
      text << scene.rdbuf();
      const planner::PromptBundle bundle{config.request, text.str(), config.image,
                                         LoadMetadata(config.metadata)};
      std::cout << planner::ComposePrompt(bundle, ActionRegistry::Default()).text;
      return 0;
    }
    if (*registry) {
      std::cout << ActionRegistry::Default().Document().dump(2) << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return engine::kExitError;
  }
  return 0;
}
