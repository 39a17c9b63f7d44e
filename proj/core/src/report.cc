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

#include "real2sim/report.h"

#include <fmt/format.h>

namespace real2sim::engine {

std::string FormatEstimateTable(const std::vector<est::EstimateRecord>& records) {
  std::string out = fmt::format("{:<16} {:<15} {:>12} {:>12} {:>7}  {}\n", "target",
                                "parameter", "mean", "std", "n", "unit");
  for (const auto& r : records) {
    out += fmt::format("{:<16} {:<15} {:>12.6f} {:>12.6f} {:>7}  {}\n", r.target,
                       est::ToString(r.parameter), r.mean, r.std, r.n_samples,
                       est::Unit(r.parameter));
  }
  return out;
}

std::string FormatSummary(const nlohmann::json& report) {
  std::string out = fmt::format("status: {} (exit {})\n", report.value("status", "?"),
                                report.value("exit_code", -1));
  if (report.contains("phi")) {
    std::string phi;
    for (const auto& p : report["phi"]) {
      phi += (phi.empty() ? "" : ", ") + p["target"].get<std::string>() + "." +
             p["param"].get<std::string>();
    }
    out += "missing: " + (phi.empty() ? std::string("none") : phi) + "\n";
  }
  if (report.contains("guard") && !report["guard"]["removed"].empty()) {
    out += "guard: " + report["guard"]["explanation"].get<std::string>() + "\n";
  }
  for (const auto& v : report.value("violations", nlohmann::json::array())) {
    out += "violation: " + v.get<std::string>() + "\n";
  }
  if (report.contains("error") && !report["error"].get<std::string>().empty()) {
    out += "error: " + report["error"].get<std::string>() + "\n";
  }
  if (report.contains("runs")) {
    for (const auto& run : report["runs"]) {
      out += fmt::format("repeat {} seed {}: {} ({:.3f} s simulated)\n",
                         run["repeat"].get<int>(), run["seed"].get<std::uint64_t>(),
                         run["status"].get<std::string>(), run["sim_time"].get<double>());
    }
  }
  if (report.contains("estimates") && !report["estimates"].empty()) {
    std::vector<est::EstimateRecord> records;
    for (const auto& e : report["estimates"]) records.push_back(est::EstimateFromJson(e));
    out += FormatEstimateTable(records);
  }
  for (const auto& d : report.value("diagnostics", nlohmann::json::array())) {
    out += "note: " + d.get<std::string>() + "\n";
  }
  return out;
}

}  // namespace real2sim::engine
