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

#ifndef REAL2SIM_PLANNER_CLIENT_H_
#define REAL2SIM_PLANNER_CLIENT_H_

#include <chrono>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "real2sim/prompt.h"
#include "real2sim/scene.h"

namespace real2sim::planner {

// Raw bytes on both sides of one planner call; archived with every run.
struct PlannerExchange {
  std::string request;
  std::string response;
};

class PlannerError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PlannerClient {
 public:
  virtual ~PlannerClient() = default;
  virtual std::string name() const = 0;
  // Throws PlannerError when no response can be obtained.
  virtual PlannerExchange Plan(const ComposedPrompt& prompt) = 0;
};

// Offline planner returning canned plans keyed by scenario id. Ids:
// "height+mass", "mass-only", "three-bottles", "friction", "occlusion",
// "hallucination".
class MockPlannerClient : public PlannerClient {
 public:
  // Throws PlannerError on an unknown scenario id.
  MockPlannerClient(std::string scenario, scene::RequiredParameters phi,
                    std::vector<std::string> detected_objects);

  std::string name() const override { return "mock:" + scenario_; }
  PlannerExchange Plan(const ComposedPrompt& prompt) override;

 private:
  std::string scenario_;
  scene::RequiredParameters phi_;
  std::vector<std::string> detected_;
};

struct RemoteOptions {
  std::string url;      // http://host:port/path
  std::string api_key;  // sent as a bearer token when non-empty
  std::string model;
  std::chrono::seconds timeout{120};

  // Reads R2S_PLANNER_URL, R2S_PLANNER_KEY and R2S_PLANNER_MODEL.
  static RemoteOptions FromEnvironment();
};

// POSTs {"model", "prompt", "image": {"name", "base64"}} as JSON. The reply
// may be the plan itself, {"plan": {...}} or {"content": "<text>"}.
class RemotePlannerClient : public PlannerClient {
 public:
  explicit RemotePlannerClient(RemoteOptions options);

  std::string name() const override { return "remote"; }
  PlannerExchange Plan(const ComposedPrompt& prompt) override;

 private:
  RemoteOptions options_;
};

// Pulls the plan JSON out of a planner reply: unwraps {"plan"} and
// {"content"} envelopes and markdown code fences. Throws PlannerError.
nlohmann::json ExtractPlanJson(const std::string& response);

// Reads {"visible": ["bottle", ...]}.
std::vector<std::string> LoadViewManifest(const std::string& path);

}  // namespace real2sim::planner

#endif  // REAL2SIM_PLANNER_CLIENT_H_
