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

#include "real2sim/estimation.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace real2sim::est {
namespace {

double Mean(const std::vector<double>& v, size_t begin, size_t end) {
  return std::accumulate(v.begin() + begin, v.begin() + end, 0.0) /
         static_cast<double>(end - begin);
}

double SampleStd(const std::vector<double>& v, size_t begin, size_t end) {
  const size_t n = end - begin;
  if (n < 2) return 0.0;
  const double m = Mean(v, begin, end);
  double ss = 0.0;
  for (size_t i = begin; i < end; ++i) ss += (v[i] - m) * (v[i] - m);
  return std::sqrt(ss / static_cast<double>(n - 1));
}

std::vector<double> TrailingAverage(const std::vector<double>& v, int window) {
  if (window <= 1) return v;
  std::vector<double> out(v.size());
  double sum = 0.0;
  for (size_t i = 0; i < v.size(); ++i) {
    sum += v[i];
    if (i >= static_cast<size_t>(window)) sum -= v[i - window];
    out[i] = sum / static_cast<double>(std::min<size_t>(i + 1, window));
  }
  return out;
}

}  // namespace

std::string_view ToString(Parameter parameter) {
  switch (parameter) {
    case Parameter::kMass: return "mass";
    case Parameter::kStaticMu: return "static_mu";
    case Parameter::kDynamicMu: return "dynamic_mu";
    case Parameter::kSurfaceHeight: return "surface_height";
  }
  return "mass";
}

std::string_view Unit(Parameter parameter) {
  switch (parameter) {
    case Parameter::kMass: return "kg";
    case Parameter::kSurfaceHeight: return "m";
    default: return "";
  }
}

Parameter ParameterFromString(std::string_view text) {
  for (Parameter p : {Parameter::kMass, Parameter::kStaticMu, Parameter::kDynamicMu,
                      Parameter::kSurfaceHeight}) {
    if (ToString(p) == text) return p;
  }
  throw EstimationError("unknown parameter '" + std::string(text) + "'");
}

nlohmann::json ToJson(const EstimateRecord& record) {
  return {{"target", record.target},
          {"parameter", std::string(ToString(record.parameter))},
          {"mean", record.mean},
          {"std", record.std},
          {"n_samples", record.n_samples},
          {"unit", std::string(Unit(record.parameter))},
          {"source", record.source}};
}

EstimateRecord EstimateFromJson(const nlohmann::json& j) {
  EstimateRecord r;
  r.parameter = ParameterFromString(j.at("parameter").get<std::string>());
  r.target = j.at("target").get<std::string>();
  r.mean = j.at("mean").get<double>();
  r.std = j.value("std", 0.0);
  r.n_samples = j.value("n_samples", 1);
  r.source = j.value("source", "");
  return r;
}

EstimateRecord EstimateMass(const std::vector<Wrench>& hold_series, const Wrench& bias, double g,
                            std::string target, std::string source) {
  if (hold_series.empty()) throw EstimationError("mass: empty hold series");
  if (!(g > 0.0)) throw EstimationError("mass: g must be > 0");
  if (!bias.IsFinite()) throw EstimationError("mass: non-finite bias");
  std::vector<double> masses;
  masses.reserve(hold_series.size());
  for (const auto& w : hold_series) {
    if (!w.IsFinite()) throw EstimationError("mass: non-finite sample");
    masses.push_back((bias.force.z() - w.force.z()) / g);
  }
  EstimateRecord r;
  r.parameter = Parameter::kMass;
  r.target = std::move(target);
  r.source = std::move(source);
  r.mean = Mean(masses, 0, masses.size());
  r.std = SampleStd(masses, 0, masses.size());
  r.n_samples = static_cast<int>(masses.size());
  return r;
}

void PushTrace::Validate() const {
  const size_t n = force_parallel.size();
  if (n == 0) throw EstimationError("push trace is empty");
  if (v_cmd.size() != n || v_act.size() != n ||
      (!vertical_delta.empty() && vertical_delta.size() != n)) {
    throw EstimationError("push trace series have different lengths");
  }
  auto finite = [](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
  };
  if (!finite(force_parallel) || !finite(v_cmd) || !finite(v_act) || !finite(vertical_delta)) {
    throw EstimationError("push trace contains non-finite values");
  }
}

FrictionEstimate EstimateFriction(const PushTrace& trace, const EstimateRecord& mass, double g,
                                  const FrictionOptions& options, std::string target,
                                  std::string source) {
  if (!(mass.mean > 0.0)) throw EstimationError("friction: mass estimate must be > 0");
  if (!(g > 0.0)) throw EstimationError("friction: g must be > 0");
  trace.Validate();
  const double normal = mass.mean * g;
  const double mass_rel = mass.std / mass.mean;
  const size_t n = trace.force_parallel.size();
  FrictionEstimate out;

  std::optional<size_t> breakaway;
  for (size_t i = 0; i < n; ++i) {
    if (trace.v_cmd[i] > 0.0 && trace.v_act[i] >= options.match_ratio * trace.v_cmd[i]) {
      breakaway = i;
      break;
    }
  }
  out.breakaway_index = breakaway;
  const std::vector<double> smooth = TrailingAverage(trace.force_parallel, options.smoothing);
  const size_t peak_end = breakaway ? *breakaway + 1 : n;
  const double peak = *std::max_element(smooth.begin(), smooth.begin() + peak_end);

  EstimateRecord stat;
  stat.parameter = Parameter::kStaticMu;
  stat.target = target;
  stat.source = source;
  stat.mean = peak / normal;
  stat.std = stat.mean * mass_rel;
  stat.n_samples = static_cast<int>(peak_end);
  out.static_mu = stat;

  if (!breakaway) {
    out.diagnostics.push_back("no breakaway: measured speed never matched the command; "
                              "dynamic friction not estimated");
    return out;
  }
  // Sliding segment: from breakaway to the last tick still under command.
  size_t slide_end = n;
  for (size_t i = n; i > *breakaway; --i) {
    if (trace.v_cmd[i - 1] > 0.0) {
      slide_end = i;
      break;
    }
  }
  const size_t length = slide_end - *breakaway;
  const size_t plateau_begin =
      *breakaway + static_cast<size_t>(std::floor(length * (1.0 - options.plateau_fraction)));
  if (plateau_begin >= slide_end) {
    out.diagnostics.push_back("sliding segment too short for a plateau");
    return out;
  }
  const double plateau = Mean(trace.force_parallel, plateau_begin, slide_end);
  const double spread = SampleStd(trace.force_parallel, plateau_begin, slide_end) / normal;
  EstimateRecord dyn;
  dyn.parameter = Parameter::kDynamicMu;
  dyn.target = std::move(target);
  dyn.source = std::move(source);
  dyn.mean = plateau / normal;
  dyn.std = std::hypot(spread, dyn.mean * mass_rel);
  dyn.n_samples = static_cast<int>(slide_end - plateau_begin);
  out.dynamic_mu = dyn;

  if (!trace.vertical_delta.empty()) {
    const double vertical = Mean(trace.vertical_delta, plateau_begin, slide_end);
    if (std::abs(vertical) > options.vertical_tolerance * normal) {
      out.vertical_load_flag = true;
      out.diagnostics.push_back("vertical load changed while sliding; normal force is not m g");
    }
  }
  return out;
}

EstimateRecord EstimateSurfaceHeight(double z_ee, double d_offset, std::string target,
                                     std::string source) {
  if (!std::isfinite(z_ee) || !std::isfinite(d_offset)) {
    throw EstimationError("surface height: non-finite contact record");
  }
  EstimateRecord r;
  r.parameter = Parameter::kSurfaceHeight;
  r.target = std::move(target);
  r.source = std::move(source);
  r.mean = z_ee - d_offset;
  r.std = 0.0;
  r.n_samples = 1;
  return r;
}

EstimateRecord Aggregate(const std::vector<EstimateRecord>& records) {
  if (records.empty()) throw EstimationError("aggregate: no records");
  for (const auto& r : records) {
    if (r.parameter != records.front().parameter || r.target != records.front().target) {
      throw EstimationError("aggregate: mixed parameters or targets");
    }
  }
  if (records.size() == 1) return records.front();
  double weighted = 0.0;
  int total = 0;
  std::vector<double> means;
  std::set<std::string> sources;
  for (const auto& r : records) {
    weighted += r.mean * r.n_samples;
    total += r.n_samples;
    means.push_back(r.mean);
    if (!r.source.empty()) sources.insert(r.source);
  }
  EstimateRecord out = records.front();
  out.mean = weighted / total;
  out.std = SampleStd(means, 0, means.size());
  out.n_samples = total;
  out.source.clear();
  for (const auto& s : sources) out.source += (out.source.empty() ? "" : ",") + s;
  return out;
}

}  // namespace real2sim::est
