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

#include "real2sim/measurements.h"

#include <algorithm>
#include <map>
#include <utility>

namespace real2sim::est {
namespace {

Wrench WrenchFromJson(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 6) throw EstimationError("wrench must have 6 entries");
  Vector6d v;
  for (int i = 0; i < 6; ++i) v[i] = j[i].get<double>();
  return Wrench::FromVector(v);
}

std::vector<Wrench> SeriesFromJson(const nlohmann::json& j) {
  if (!j.is_array()) throw EstimationError("wrench series must be a list");
  std::vector<Wrench> out;
  out.reserve(j.size());
  for (const auto& w : j) out.push_back(WrenchFromJson(w));
  return out;
}

bool StartsWith(const std::string& s, const std::string& prefix) {
  return s.compare(0, prefix.size(), prefix) == 0;
}

}  // namespace

MeasurementSet ExtractMeasurements(const nlohmann::json& blackboard) {
  MeasurementSet set;
  if (!blackboard.is_object()) throw EstimationError("blackboard snapshot must be an object");
  try {
    for (const auto& [key, list] : blackboard.items()) {
      if (!list.is_array()) continue;
      if (StartsWith(key, "mass/")) {
        for (const auto& r : list) {
          set.masses.push_back({key.substr(5), WrenchFromJson(r.at("bias")),
                                SeriesFromJson(r.at("samples")), r.value("empty_grasp", false),
                                r.value("leaf", "")});
        }
      } else if (StartsWith(key, "contact/")) {
        for (const auto& r : list) {
          set.contacts.push_back({key.substr(8), r.at("z_ee").get<double>(),
                                  r.at("d_offset").get<double>(), r.value("leaf", "")});
        }
      } else if (StartsWith(key, "push/")) {
        for (const auto& r : list) {
          PushMeasurement p;
          p.target = key.substr(5);
          p.baseline = WrenchFromJson(r.at("baseline"));
          if (r.contains("bias")) p.bias = WrenchFromJson(r.at("bias"));
          p.wrenches = SeriesFromJson(r.at("w"));
          p.v_cmd = r.at("v_cmd").get<std::vector<double>>();
          p.v_act = r.at("v_act").get<std::vector<double>>();
          p.leaf = r.value("leaf", "");
          set.pushes.push_back(std::move(p));
        }
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw EstimationError(std::string("malformed measurement record: ") + e.what());
  }
  return set;
}

PushTrace ToPushTrace(const PushMeasurement& push) {
  PushTrace trace;
  trace.v_cmd = push.v_cmd;
  trace.v_act = push.v_act;
  for (const auto& w : push.wrenches) {
    trace.force_parallel.push_back((w.force - push.bias.force).head<2>().norm());
    trace.vertical_delta.push_back(w.force.z() - push.baseline.force.z());
  }
  return trace;
}

RunEstimates EstimateRun(const MeasurementSet& measurements, const EstimationOptions& options) {
  RunEstimates run;
  std::map<std::string, std::vector<EstimateRecord>> masses;
  for (const auto& m : measurements.masses) {
    if (m.samples.empty()) {
      run.diagnostics.push_back("mass/" + m.target + ": no samples");
      continue;
    }
    auto record = EstimateMass(m.samples, m.bias, options.g, m.target, m.leaf);
    if (m.empty_grasp) run.diagnostics.push_back("mass/" + m.target + ": empty grasp");
    masses[m.target].push_back(record);
    run.records.push_back(std::move(record));
  }
  for (const auto& c : measurements.contacts) {
    run.records.push_back(EstimateSurfaceHeight(c.z_ee, c.d_offset, c.target, c.leaf));
  }
  for (const auto& p : measurements.pushes) {
    const auto it = masses.find(p.target);
    if (it == masses.end()) {
      run.diagnostics.push_back("push/" + p.target + ": no mass estimate for the pushed object");
      continue;
    }
    if (p.wrenches.empty()) {
      run.diagnostics.push_back("push/" + p.target + ": empty force stream");
      continue;
    }
    const EstimateRecord mass = Aggregate(it->second);
    if (!(mass.mean > 0.0)) {
      run.diagnostics.push_back("push/" + p.target + ": mass estimate is not positive");
      continue;
    }
    const FrictionEstimate f =
        EstimateFriction(ToPushTrace(p), mass, options.g, options.friction, p.target, p.leaf);
    if (f.static_mu) run.records.push_back(*f.static_mu);
    if (f.dynamic_mu) run.records.push_back(*f.dynamic_mu);
    run.flagged = run.flagged || f.vertical_load_flag;
    for (const auto& d : f.diagnostics) run.diagnostics.push_back("push/" + p.target + ": " + d);
  }
  return run;
}

std::vector<EstimateRecord> AggregateRuns(const std::vector<RunEstimates>& runs) {
  std::map<std::pair<std::string, int>, std::vector<EstimateRecord>> groups;
  for (const auto& run : runs) {
    for (const auto& r : run.records) {
      groups[{r.target, static_cast<int>(r.parameter)}].push_back(r);
    }
  }
  std::vector<EstimateRecord> out;
  for (const auto& [key, records] : groups) out.push_back(Aggregate(records));
  return out;
}

nlohmann::json EstimatesDocument(const std::vector<EstimateRecord>& records) {
  std::vector<EstimateRecord> sorted = records;
  std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    return std::make_pair(a.target, static_cast<int>(a.parameter)) <
           std::make_pair(b.target, static_cast<int>(b.parameter));
  });
  nlohmann::json list = nlohmann::json::array();
  for (const auto& r : sorted) list.push_back(ToJson(r));
  return {{"estimates", list}};
}

std::vector<EstimateRecord> ParseEstimatesDocument(const nlohmann::json& document) {
  std::vector<EstimateRecord> out;
  try {
    for (const auto& item : document.at("estimates")) out.push_back(EstimateFromJson(item));
  } catch (const nlohmann::json::exception& e) {
    throw EstimationError(std::string("malformed estimates document: ") + e.what());
  }
  return out;
}

}  // namespace real2sim::est
