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

#ifndef REAL2SIM_ESTIMATION_H_
#define REAL2SIM_ESTIMATION_H_

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "real2sim/kinematics.h"

namespace real2sim::est {

enum class Parameter { kMass, kStaticMu, kDynamicMu, kSurfaceHeight };

std::string_view ToString(Parameter parameter);
// "kg", "m", or "" for dimensionless.
std::string_view Unit(Parameter parameter);
Parameter ParameterFromString(std::string_view text);

struct EstimateRecord {
  Parameter parameter = Parameter::kMass;
  std::string target;
  double mean = 0.0;
  double std = 0.0;
  int n_samples = 1;
  std::string source;  // BT leaf path(s)

  bool operator==(const EstimateRecord& other) const = default;
};

nlohmann::json ToJson(const EstimateRecord& record);
EstimateRecord EstimateFromJson(const nlohmann::json& j);

class EstimationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// m = mean((bias.Fz - Fz) / g); std is the sample std of the per-sample
// values.
EstimateRecord EstimateMass(const std::vector<Wrench>& hold_series, const Wrench& bias, double g,
                            std::string target = "", std::string source = "");

// Tangential force during a push, one entry per control tick.
struct PushTrace {
  std::vector<double> force_parallel;  // N
  std::vector<double> v_cmd;           // m/s, commanded horizontal speed
  std::vector<double> v_act;           // m/s, measured horizontal speed
  std::vector<double> vertical_delta;  // N, optional: Fz minus the pre-push baseline

  // Throws EstimationError when empty, ragged or non-finite.
  void Validate() const;
};

struct FrictionOptions {
  // Breakaway is the first tick whose measured speed reaches this fraction of
  // the commanded speed.
  double match_ratio = 0.5;
  // Trailing part of the sliding segment averaged for the dynamic value.
  double plateau_fraction = 0.5;
  // Trailing moving-average length applied before taking the peak.
  int smoothing = 1;
  // Traces whose mean vertical load change while sliding exceeds this
  // fraction of m g are flagged.
  double vertical_tolerance = 0.1;
};

struct FrictionEstimate {
  std::optional<EstimateRecord> static_mu;
  std::optional<EstimateRecord> dynamic_mu;
  std::optional<size_t> breakaway_index;
  bool vertical_load_flag = false;
  std::vector<std::string> diagnostics;
};

// mu = F_par / (m g) with m taken from the mass estimate. Static uses the
// peak up to breakaway, dynamic the plateau of the sliding segment.
// Throws EstimationError when mass.mean <= 0 or g <= 0.
FrictionEstimate EstimateFriction(const PushTrace& trace, const EstimateRecord& mass, double g,
                                  const FrictionOptions& options = {}, std::string target = "",
                                  std::string source = "");

// h = z_ee - d_offset.
EstimateRecord EstimateSurfaceHeight(double z_ee, double d_offset, std::string target = "",
                                     std::string source = "");

// Pooled mean (weighted by sample count); std is the sample standard
// deviation of the per-record means (0 for a single record). Throws
// EstimationError on an empty list or mixed parameter/target.
EstimateRecord Aggregate(const std::vector<EstimateRecord>& records);

}  // namespace real2sim::est

#endif  // REAL2SIM_ESTIMATION_H_
