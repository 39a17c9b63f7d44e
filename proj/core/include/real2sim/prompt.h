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

#ifndef REAL2SIM_PROMPT_H_
#define REAL2SIM_PROMPT_H_

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>

#include "real2sim/actions.h"
#include "real2sim/metadata.h"

namespace real2sim::planner {

// Versioned system prompt, compiled in from assets/system_prompt_v1.txt.
extern const std::string_view kSystemPromptTemplate;
inline constexpr std::string_view kSystemPromptVersion = "v1";

inline constexpr std::array<std::string_view, 4> kPlaceholders = {
    "{SIM_DESCRIPTION}", "{USER_REQUEST}", "{OBJECT_METADATA}", "{ACTION_LIST}"};

inline constexpr std::string_view kNoDescription = "(no simulation description provided)";

struct PromptBundle {
  std::string user_request;     // R
  std::string sim_description;  // D, scene XML; empty means none
  std::string image_ref;        // I, path or opaque handle
  SceneMetadata metadata;
};

struct ComposedPrompt {
  std::string text;
  std::string image_ref;
};

class PromptError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Throws PromptError naming the first placeholder that does not occur
// exactly once.
void CheckTemplate(std::string_view system_template);

std::string RenderMetadata(const SceneMetadata& metadata);
std::string RenderActionList(const ActionRegistry& registry);

// Byte-deterministic. Throws PromptError on an empty request or a bad
// template.
ComposedPrompt ComposePrompt(const PromptBundle& bundle, const ActionRegistry& registry,
                             std::string_view system_template = kSystemPromptTemplate);

}  // namespace real2sim::planner

#endif  // REAL2SIM_PROMPT_H_
