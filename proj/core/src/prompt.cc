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

#include "real2sim/prompt.h"

#include <fmt/format.h>

namespace real2sim::planner {
namespace {

size_t Count(std::string_view text, std::string_view needle) {
  size_t count = 0;
  for (size_t pos = text.find(needle); pos != std::string_view::npos;
       pos = text.find(needle, pos + needle.size())) {
    ++count;
  }
  return count;
}

std::string Num(double v) {
  // Rounded to 0.1 mm / 1e-4 for readability; exact values stay in metadata.
  std::string s = fmt::format("{:.4f}", v);
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s == "-0" ? "0" : s;
}

std::string RenderEntry(const MetadataEntry& e) {
  if (!e.pose) return "  " + e.name + ": " + e.placeholder + "  # known at execution time\n";
  const Pose& p = *e.pose;
  std::string out = "  " + e.name + ": [" + Num(p.position.x()) + ", " + Num(p.position.y()) +
                    ", " + Num(p.position.z());
  if (!p.orientation.isApprox(TopDownOrientation())) {
    const auto& q = p.orientation;
    out += ", " + Num(q.w()) + ", " + Num(q.x()) + ", " + Num(q.y()) + ", " + Num(q.z());
  }
  return out + "]\n";
}

void Replace(std::string& text, std::string_view placeholder, const std::string& value) {
  const size_t pos = text.find(placeholder);
  text.replace(pos, placeholder.size(), value);
}

}  // namespace

void CheckTemplate(std::string_view system_template) {
  for (const auto& placeholder : kPlaceholders) {
    const size_t n = Count(system_template, placeholder);
    if (n != 1) {
      throw PromptError(fmt::format("template placeholder {} occurs {} times (expected once)",
                                    placeholder, n));
    }
  }
}

std::string RenderMetadata(const SceneMetadata& metadata) {
  std::string out = "```yaml\nobjects:\n";
  if (metadata.objects.empty()) out += "  {}\n";
  for (const auto& e : metadata.objects) out += RenderEntry(e);
  out += "locations:\n";
  if (metadata.locations.empty()) out += "  {}\n";
  for (const auto& e : metadata.locations) out += RenderEntry(e);
  return out + "```";
}

std::string RenderActionList(const ActionRegistry& registry) {
  const nlohmann::json doc = registry.Document();
  std::string out = "Composites:\n";
  for (const auto& c : doc["composites"]) {
    out += fmt::format("- {}: {}\n", c["name"].get<std::string>(),
                       c["description"].get<std::string>());
  }
  out += "\nActions:\n| Action | Input | Output |\n|---|---|---|\n";
  for (const auto& spec : registry.specs()) {
    out += fmt::format("| {} | {} | {} |\n", spec.name, spec.input, spec.output);
  }
  out += "\nAction arguments:\n";
  for (const auto& a : doc["actions"]) {
    if (a["args"].empty()) continue;
    for (const auto& arg : a["args"]) {
      out += fmt::format("- {}.{} ({}{}): {}\n", a["name"].get<std::string>(),
                         arg["name"].get<std::string>(), arg["kind"].get<std::string>(),
                         arg["required"].get<bool>() ? "" : ", optional",
                         arg["description"].get<std::string>());
    }
  }
  out += "All other actions take no arguments; pass \"args\": {}.";
  return out;
}

ComposedPrompt ComposePrompt(const PromptBundle& bundle, const ActionRegistry& registry,
                             std::string_view system_template) {
  CheckTemplate(system_template);
  if (bundle.user_request.find_first_not_of(" \t\r\n") == std::string::npos) {
    throw PromptError("user request is required");
  }
  std::string text(system_template);
  Replace(text, "{OBJECT_METADATA}", RenderMetadata(bundle.metadata));
  Replace(text, "{ACTION_LIST}", RenderActionList(registry));
  // User-provided text goes in last so placeholder-like text inside it is
  // never substituted.
  const std::string description =
      bundle.sim_description.find_first_not_of(" \t\r\n") == std::string::npos
          ? std::string(kNoDescription)
          : "```xml\n" + bundle.sim_description +
                (bundle.sim_description.back() == '\n' ? "" : "\n") + "```";
  const size_t description_pos = text.find("{SIM_DESCRIPTION}");
  const size_t request_pos = text.find("{USER_REQUEST}");
  if (description_pos > request_pos) {
    text.replace(description_pos, 17, description);
    text.replace(request_pos, 14, bundle.user_request);
  } else {
    text.replace(request_pos, 14, bundle.user_request);
    text.replace(description_pos, 17, description);
  }
  return {text, bundle.image_ref};
}

}  // namespace real2sim::planner
