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

#include "real2sim/planner_client.h"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <httplib.h>

#include "real2sim/mock_plans.h"

namespace real2sim::planner {
namespace {

std::string Env(const char* name) {
  const char* v = std::getenv(name);
  return v == nullptr ? std::string() : std::string(v);
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PlannerError("cannot read " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string StripFences(const std::string& text) {
  const size_t open = text.find("```");
  if (open == std::string::npos) return text;
  const size_t body = text.find('\n', open);
  const size_t close = text.find("```", body == std::string::npos ? open + 3 : body);
  if (body == std::string::npos || close == std::string::npos) return text;
  return text.substr(body + 1, close - body - 1);
}

}  // namespace

MockPlannerClient::MockPlannerClient(std::string scenario, scene::RequiredParameters phi,
                                     std::vector<std::string> detected_objects)
    : scenario_(std::move(scenario)), phi_(std::move(phi)), detected_(std::move(detected_objects)) {
  const auto& ids = MockScenarios();
  if (std::find(ids.begin(), ids.end(), scenario_) == ids.end()) {
    throw PlannerError("unknown mock scenario '" + scenario_ + "'");
  }
}

PlannerExchange MockPlannerClient::Plan(const ComposedPrompt& prompt) {
  const nlohmann::json request = {
      {"client", name()}, {"prompt", prompt.text}, {"image", prompt.image_ref}};
  const bt::PlanDocument plan = MockPlan(scenario_, phi_, detected_);
  return {request.dump(2) + "\n", bt::ToJson(plan).dump(2) + "\n"};
}

RemoteOptions RemoteOptions::FromEnvironment() {
  RemoteOptions options;
  options.url = Env("R2S_PLANNER_URL");
  options.api_key = Env("R2S_PLANNER_KEY");
  options.model = Env("R2S_PLANNER_MODEL");
  return options;
}

RemotePlannerClient::RemotePlannerClient(RemoteOptions options) : options_(std::move(options)) {
  if (options_.url.rfind("http://", 0) != 0) {
    throw PlannerError("planner URL must start with http:// (set R2S_PLANNER_URL)");
  }
}

PlannerExchange RemotePlannerClient::Plan(const ComposedPrompt& prompt) {
  const size_t slash = options_.url.find('/', 7);
  const std::string host = options_.url.substr(0, slash);
  const std::string path = slash == std::string::npos ? "/" : options_.url.substr(slash);

  nlohmann::json image = nullptr;
  if (!prompt.image_ref.empty()) {
    image = {{"name", prompt.image_ref},
             {"base64", httplib::detail::base64_encode(ReadFile(prompt.image_ref))}};
  }
  const nlohmann::json body = {{"model", options_.model}, {"prompt", prompt.text}, {"image", image}};
  PlannerExchange exchange{body.dump(2) + "\n", ""};

  httplib::Client client(host);
  const auto seconds = static_cast<time_t>(options_.timeout.count());
  client.set_connection_timeout(seconds);
  client.set_read_timeout(seconds);
  client.set_write_timeout(seconds);
  httplib::Headers headers;
  if (!options_.api_key.empty()) {
    headers.emplace("Authorization", "Bearer " + options_.api_key);
  }
  const auto result = client.Post(path, headers, body.dump(), "application/json");
  if (!result) {
    throw PlannerError("planner request to " + options_.url +
                       " failed: " + httplib::to_string(result.error()));
  }
  if (result->status != 200) {
    throw PlannerError("planner returned HTTP " + std::to_string(result->status));
  }
  exchange.response = result->body;
  return exchange;
}

nlohmann::json ExtractPlanJson(const std::string& response) {
  nlohmann::json parsed = nlohmann::json::parse(response, nullptr, false);
  if (!parsed.is_discarded() && parsed.is_object()) {
    if (parsed.contains("plan")) return parsed["plan"];
    if (!parsed.contains("content")) return parsed;
    if (!parsed["content"].is_string()) throw PlannerError("'content' must be a string");
    return ExtractPlanJson(parsed["content"].get<std::string>());
  }
  const std::string text = StripFences(response);
  const size_t first = text.find('{');
  const size_t last = text.rfind('}');
  if (first == std::string::npos || last == std::string::npos || last < first) {
    throw PlannerError("planner reply holds no JSON object");
  }
  parsed = nlohmann::json::parse(text.substr(first, last - first + 1), nullptr, false);
  if (parsed.is_discarded()) throw PlannerError("planner reply is not valid JSON");
  return parsed;
}

std::vector<std::string> LoadViewManifest(const std::string& path) {
  const auto doc = nlohmann::json::parse(ReadFile(path), nullptr, false);
  if (doc.is_discarded() || !doc.is_object() || !doc.contains("visible") ||
      !doc["visible"].is_array()) {
    throw PlannerError(path + ": expected {\"visible\": [names]}");
  }
  std::vector<std::string> out;
  for (const auto& v : doc["visible"]) {
    if (!v.is_string()) throw PlannerError(path + ": visible entries must be strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

}  // namespace real2sim::planner
