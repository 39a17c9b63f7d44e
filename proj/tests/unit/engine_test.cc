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

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "real2sim/engine.h"

namespace real2sim::engine {
namespace {

namespace fs = std::filesystem;

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

RunConfig FixtureConfig(const std::string& name) {
  return LoadRunConfig(fs::path(R2S_FIXTURE_DIR) / "runs" / (name + ".yaml"));
}

fs::path OutDir(const std::string& name) {
  const fs::path dir = fs::path(testing::TempDir()) / "r2s_engine_test" / name;
  fs::remove_all(dir);
  return dir;
}

void WriteFile(const fs::path& path, const std::string& text) {
  fs::create_directories(path.parent_path());
  std::ofstream(path) << text;
}

TEST(Engine, SameSeedGivesIdenticalReports) {
  RunConfig config = FixtureConfig("scenario1");
  config.repeats = 2;
  const PipelineResult a = RunPipeline(config, OutDir("det_a"));
  const PipelineResult b = RunPipeline(config, OutDir("det_b"));
  ASSERT_EQ(a.exit_code, kExitOk) << a.summary;
  const fs::path root = fs::path(testing::TempDir()) / "r2s_engine_test";
  EXPECT_EQ(ReadFile(root / "det_a/report.json"), ReadFile(root / "det_b/report.json"));
  EXPECT_EQ(a.report.dump(), b.report.dump());
  EXPECT_EQ(ReadFile(root / "det_a/measurements.jsonl"),
            ReadFile(root / "det_b/measurements.jsonl"));

  config.seed = 2;
  const PipelineResult c = RunPipeline(config, OutDir("det_c"));
  EXPECT_NE(a.report["estimates"].dump(), c.report["estimates"].dump());
}

TEST(Engine, WritesArtifactsAndReplays) {
  RunConfig config = FixtureConfig("scenario1_noiseless");
  const fs::path out = OutDir("artifacts");
  const PipelineResult r = RunPipeline(config, out);
  ASSERT_EQ(r.exit_code, kExitOk) << r.summary;
  for (const char* f : {"prompt.txt", "planner_request.json", "planner_response.txt",
                        "guard.json", "plan.json", "trace.jsonl", "measurements.jsonl",
                        "sensor_log.jsonl", "estimates.json", "scene_completed.xml",
                        "report.json"}) {
    EXPECT_TRUE(fs::exists(out / f)) << f;
  }
  const std::string completed = ReadFile(out / "scene_completed.xml");
  EXPECT_NE(completed.find("r2s:estimated param=mass"), std::string::npos);
  EXPECT_EQ(Replay(out).exit_code, kExitOk);

  // Tampering with the stored estimates is detected.
  auto estimates = nlohmann::json::parse(ReadFile(out / "estimates.json"));
  estimates["estimates"][0]["mean"] = estimates["estimates"][0]["mean"].get<double>() + 1e-9;
  WriteFile(out / "estimates.json", estimates.dump(2));
  EXPECT_EQ(Replay(out).exit_code, kExitError);
}

TEST(Engine, KnownHeightNeedsOnlyTheMass) {
  const PlanningResult p = Plan(FixtureConfig("known_height"), ActionRegistry::Default());
  const scene::RequiredParameters expected = {{"bottle", scene::ParamKind::kMass}};
  EXPECT_EQ(p.missing.phi, expected);
  ASSERT_TRUE(p.validated.has_value());
  EXPECT_EQ(bt::CountActions(p.validated->document().tree, "MoveDownUntilContact"), 0);
}

TEST(Engine, RejectsWhenNothingIsVisible) {
  RunConfig config = FixtureConfig("hallucination_with_pose");
  const fs::path out = OutDir("rejected");
  WriteFile(out.parent_path() / "empty_view.json", R"({"visible": []})");
  config.view = out.parent_path() / "empty_view.json";
  const PipelineResult r = RunPipeline(config, out);
  EXPECT_EQ(r.exit_code, kExitRejected);
  EXPECT_EQ(r.report["guard"]["rejected"], true);
  EXPECT_FALSE(fs::exists(out / "trace.jsonl"));
}

TEST(Engine, GuardedPlanStillRuns) {
  const PipelineResult r =
      RunPipeline(FixtureConfig("hallucination_without_pose"), OutDir("guarded"));
  EXPECT_EQ(r.exit_code, kExitOk) << r.summary;
  ASSERT_EQ(r.report["guard"]["removed"].size(), 1u);
  EXPECT_EQ(r.report["guard"]["removed"][0]["objects"][0], "yellow_bottle");
}

TEST(Engine, UnreachableTargetFailsExecution) {
  RunConfig config = FixtureConfig("known_height");
  const fs::path out = OutDir("unreachable");
  WriteFile(out.parent_path() / "far.json",
            R"({"objects": [{"name": "bottle", "pose": [2.5, 0, 0.865]}], "locations": []})");
  config.metadata = out.parent_path() / "far.json";
  config.runtime.timeout = 2.0;
  const PipelineResult r = RunPipeline(config, out);
  EXPECT_EQ(r.exit_code, kExitExecutionFailed) << r.summary;
  EXPECT_EQ(r.report["runs"][0]["status"], bt::ToString(bt::TickStatus::kFailure));
}

TEST(Engine, MissingEstimatorReportsIncomplete) {
  RunConfig config = FixtureConfig("friction_noiseless");
  config.planner = "mock:mass-only";
  const PipelineResult r = RunPipeline(config, OutDir("incomplete"));
  EXPECT_EQ(r.exit_code, kExitEstimationIncomplete) << r.summary;
  EXPECT_FALSE(fs::exists(OutDir("incomplete") / "scene_completed.xml"));
}

TEST(Engine, SmoothingFollowsNoise) {
  RunConfig config = FixtureConfig("scenario1");
  sim::GroundTruthWorld truth;
  truth.params.noise_sigma_torque = 0.0;
  EXPECT_EQ(EstimationOptionsFor(config, truth).friction.smoothing, 1);
  truth.params.noise_sigma_torque = 0.05;
  EXPECT_EQ(EstimationOptionsFor(config, truth).friction.smoothing, 9);
  config.smoothing = 3;
  EXPECT_EQ(EstimationOptionsFor(config, truth).friction.smoothing, 3);
}

TEST(Engine, UnknownPlannerSpec) {
  EXPECT_ANY_THROW(MakePlannerClient("oracle", {}, {}));
}

TEST(RunConfigTest, ParsesAndResolvesPaths) {
  const RunConfig c = ParseRunConfig(
      "request: r\nscene: s.xml\nworld: w.yaml\nmetadata: m.json\nrepeats: 3\n"
      "sensor_log: all\nruntime: {window: 50}\nestimation: {smoothing: 5}\n",
      "/base");
  EXPECT_EQ(c.scene, fs::path("/base/s.xml"));
  EXPECT_EQ(c.repeats, 3);
  EXPECT_EQ(c.sensor_log, SensorLogMode::kAll);
  EXPECT_EQ(c.runtime.window, 50);
  EXPECT_EQ(c.smoothing, 5);
  EXPECT_NO_THROW(c.Validate());
}

TEST(RunConfigTest, RejectsBadInput) {
  EXPECT_THROW(ParseRunConfig("reqest: typo\n", "/"), std::invalid_argument);
  EXPECT_THROW(ParseRunConfig("sensor_log: sometimes\n", "/"), std::invalid_argument);
  EXPECT_THROW(ParseRunConfig("runtime: {speed: 1}\n", "/"), std::invalid_argument);
  RunConfig c = ParseRunConfig("request: r\nscene: s\nworld: w\nmetadata: m\nrepeats: 0\n", "/");
  EXPECT_THROW(c.Validate(), std::invalid_argument);
  c = ParseRunConfig("scene: s\nworld: w\nmetadata: m\n", "/");
  EXPECT_THROW(c.Validate(), std::invalid_argument);
}

}  // namespace
}  // namespace real2sim::engine
