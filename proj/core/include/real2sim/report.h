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

#ifndef REAL2SIM_REPORT_H_
#define REAL2SIM_REPORT_H_

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "real2sim/estimation.h"

namespace real2sim::engine {

// Fixed-width table of estimates for terminals.
std::string FormatEstimateTable(const std::vector<est::EstimateRecord>& records);

// Human summary of a report.json document.
std::string FormatSummary(const nlohmann::json& report);

}  // namespace real2sim::engine

#endif  // REAL2SIM_REPORT_H_
