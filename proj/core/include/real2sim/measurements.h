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

#ifndef REAL2SIM_MEASUREMENTS_H_
#define REAL2SIM_MEASUREMENTS_H_

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "real2sim/estimation.h"

namespace real2sim::est {

// Measurement records as written to the blackboard by the sensing actions.
struct MassMeasurement {
  std::string target;
  Wrench bias;
  std::vector<Wrench> samples;
  bool empty_grasp = false;
  std::string leaf;
};

struct ContactMeasurement {
  std::string target;
  double z_ee = 0.0;
  double d_offset = 0.0;
  std::string leaf;
};

struct PushMeasurement {
  std::string target;
  Wrench baseline;  // resting wrench just before the push
  Wrench bias;      // free-space reading before the grasp
  std::vector<Wrench> wrenches;
  std::vector<double> v_cmd;
  std::vector<double> v_act;
  std::string leaf;
};

struct MeasurementSet {
  std::vector<MassMeasurement> masses;
  std::vector<ContactMeasurement> contacts;
  std::vector<PushMeasurement> pushes;
};

// Reads "mass/<target>", "contact/<target>" and "push/<target>" entries from
// a blackboard snapshot. Other keys are ignored. Throws EstimationError on
// malformed records.
MeasurementSet ExtractMeasurements(const nlohmann::json& blackboard);

// Tangential force |(F - bias)_xy| and vertical change F_z - F0_z against
// the resting baseline. The resting wrench may already hold static friction
// from settling, so it is not used for the tangential part.
PushTrace ToPushTrace(const PushMeasurement& push);

struct EstimationOptions {
  double g = 9.81;
  FrictionOptions friction;
};

struct RunEstimates {
  std::vector<EstimateRecord> records;
  std::vector<std::string> diagnostics;
  bool flagged = false;
};

// All estimates obtainable from one execution. Friction uses this run's mass
// estimate for the same target.
RunEstimates EstimateRun(const MeasurementSet& measurements, const EstimationOptions& options);

// Groups by (target, parameter) and aggregates; output sorted by target,
// then parameter.
std::vector<EstimateRecord> AggregateRuns(const std::vector<RunEstimates>& runs);

// {"estimates": [...]} keyed by target and parameter.
nlohmann::json EstimatesDocument(const std::vector<EstimateRecord>& records);
std::vector<EstimateRecord> ParseEstimatesDocument(const nlohmann::json& document);

}  // namespace real2sim::est

#endif  // REAL2SIM_MEASUREMENTS_H_
