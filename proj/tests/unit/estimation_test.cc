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

#include <filesystem>
#include <fstream>
#include <random>
#include <regex>
#include <set>

#include <gtest/gtest.h>

#include "real2sim/estimation.h"
#include "real2sim/measurements.h"

namespace real2sim::est {
namespace {

constexpr double kG = 9.81;

Wrench Fz(double fz) {
  Wrench w;
  w.force.z() = fz;
  return w;
}

TEST(Mass, RecoversKnownLoad) {
  const Wrench bias = Fz(0.3);
  std::vector<Wrench> series;
  // Symmetric deviations around m g = 0.254 g.
  for (int i = 0; i < 100; ++i) series.push_back(Fz(0.3 - 0.254 * kG + (i % 2 ? 0.1 : -0.1)));
  const EstimateRecord r = EstimateMass(series, bias, kG, "bottle", "leaf");
  EXPECT_NEAR(r.mean, 0.254, 1e-12);
  // Sample std of +-0.1/g with n = 100: 0.1/g * sqrt(100/99).
  EXPECT_NEAR(r.std, 0.1 / kG * std::sqrt(100.0 / 99.0), 1e-12);
  EXPECT_EQ(r.n_samples, 100);
  EXPECT_EQ(r.parameter, Parameter::kMass);
}

TEST(Mass, RejectsEmptyOrNonFinite) {
  EXPECT_THROW(EstimateMass({}, Wrench{}, kG), EstimationError);
  EXPECT_THROW(EstimateMass({Fz(std::nan(""))}, Wrench{}, kG), EstimationError);
}

// Ramp to F_s over 50 ticks while stuck, breakaway at tick 50, constant F_d
// while the command lasts (to tick 149), then 50 idle ticks.
PushTrace SyntheticPush(double fs, double fd) {
  PushTrace t;
  for (int i = 0; i < 200; ++i) {
    const bool commanded = i < 150;
    t.v_cmd.push_back(commanded ? 0.05 : 0.0);
    t.v_act.push_back(i >= 50 && commanded ? 0.05 : 0.0);
    t.force_parallel.push_back(i < 50 ? fs * (i + 1) / 50.0 : fd);
    t.vertical_delta.push_back(0.0);
  }
  return t;
}

TEST(Friction, RecoversPeakAndPlateau) {
  const double m = 0.598, n = m * kG;
  const PushTrace t = SyntheticPush(0.41 * n, 0.34 * n);
  EstimateRecord mass;
  mass.mean = m;
  const FrictionEstimate f = EstimateFriction(t, mass, kG, {}, "bottle");
  ASSERT_TRUE(f.static_mu && f.dynamic_mu);
  EXPECT_EQ(*f.breakaway_index, 50u);
  EXPECT_NEAR(f.static_mu->mean, 0.41, 1e-12);
  EXPECT_NEAR(f.dynamic_mu->mean, 0.34, 1e-12);
  EXPECT_EQ(f.static_mu->n_samples, 51);
  EXPECT_EQ(f.dynamic_mu->n_samples, 50);
  EXPECT_NEAR(f.dynamic_mu->std, 0.0, 1e-15);
  EXPECT_FALSE(f.vertical_load_flag);
}

TEST(Friction, SmoothingLowersARampPeakByOneStepPerExtraSample) {
  const double m = 1.0, n = m * kG;
  const PushTrace t = SyntheticPush(5.0, 3.0);
  EstimateRecord mass;
  mass.mean = m;
  FrictionOptions options;
  options.smoothing = 3;
  const FrictionEstimate f = EstimateFriction(t, mass, kG, options);
  // Trailing mean of the last three ramp samples: 5 - 0.1.
  EXPECT_NEAR(f.static_mu->mean * n, 5.0 - 0.1, 1e-12);
}

TEST(Friction, PropagatesMassUncertainty) {
  EstimateRecord mass;
  mass.mean = 0.5;
  mass.std = 0.01;
  const FrictionEstimate f = EstimateFriction(SyntheticPush(2.0, 1.5), mass, kG);
  EXPECT_NEAR(f.static_mu->std, f.static_mu->mean * 0.02, 1e-12);
  EXPECT_NEAR(f.dynamic_mu->std, f.dynamic_mu->mean * 0.02, 1e-12);
}

TEST(Friction, FlagsVerticalLoadChange) {
  const double m = 0.598;
  PushTrace t = SyntheticPush(2.4, 2.0);
  for (auto& v : t.vertical_delta) v = -0.2 * m * kG;
  EstimateRecord mass;
  mass.mean = m;
  const FrictionEstimate f = EstimateFriction(t, mass, kG);
  EXPECT_TRUE(f.vertical_load_flag);
}

TEST(Friction, NoBreakawayKeepsStaticBoundOnly) {
  PushTrace t = SyntheticPush(2.0, 2.0);
  for (auto& v : t.v_act) v = 0.0;
  EstimateRecord mass;
  mass.mean = 1.0;
  const FrictionEstimate f = EstimateFriction(t, mass, kG);
  EXPECT_FALSE(f.breakaway_index.has_value());
  EXPECT_FALSE(f.dynamic_mu.has_value());
  ASSERT_FALSE(f.diagnostics.empty());
}

TEST(Friction, RejectsRaggedTrace) {
  PushTrace t = SyntheticPush(2.0, 1.0);
  t.v_act.pop_back();
  EstimateRecord mass;
  mass.mean = 1.0;
  EXPECT_THROW(EstimateFriction(t, mass, kG), EstimationError);
  mass.mean = 0.0;
  EXPECT_THROW(EstimateFriction(SyntheticPush(2.0, 1.0), mass, kG), EstimationError);
}

TEST(Height, SubtractsFingertipOffset) {
  const EstimateRecord r = EstimateSurfaceHeight(0.775, 0.01, "table");
  EXPECT_DOUBLE_EQ(r.mean, 0.775 - 0.01);
  EXPECT_THROW(EstimateSurfaceHeight(std::nan(""), 0.01), EstimationError);
}

TEST(Aggregate, PooledMeanAndSpreadOfMeans) {
  EstimateRecord a, b, c;
  a.mean = 1.0, a.n_samples = 1;
  b.mean = 2.0, b.n_samples = 3;
  c.mean = 4.0, c.n_samples = 4;
  const EstimateRecord r = Aggregate({a, b, c});
  EXPECT_DOUBLE_EQ(r.mean, (1.0 + 6.0 + 16.0) / 8.0);
  // Sample std of {1, 2, 4}.
  EXPECT_NEAR(r.std, std::sqrt(((1 - 7.0 / 3) * (1 - 7.0 / 3) + (2 - 7.0 / 3) * (2 - 7.0 / 3) +
                                (4 - 7.0 / 3) * (4 - 7.0 / 3)) / 2.0),
              1e-12);
  EXPECT_EQ(r.n_samples, 8);
  b.target = "other";
  EXPECT_THROW(Aggregate({a, b}), EstimationError);
  EXPECT_THROW(Aggregate({}), EstimationError);
}

TEST(Records, JsonRoundTrip) {
  EstimateRecord r;
  r.parameter = Parameter::kDynamicMu;
  r.target = "bottle";
  r.mean = 0.34;
  r.std = 0.002;
  r.n_samples = 916;
  r.source = "0:root/1:push";
  EXPECT_EQ(EstimateFromJson(ToJson(r)), r);
  const auto doc = EstimatesDocument({r});
  EXPECT_EQ(ParseEstimatesDocument(doc), std::vector<EstimateRecord>{r});
}

TEST(Measurements, ExtractsBlackboardRecordsAndEstimates) {
  const double m = 0.4;
  nlohmann::json samples = nlohmann::json::array();
  for (int i = 0; i < 10; ++i) samples.push_back({0, 0, -m * kG, 0, 0, 0});
  const nlohmann::json bb = {
      {"mass/cup",
       {{{"bias", {0, 0, 0, 0, 0, 0}}, {"samples", samples}, {"empty_grasp", false},
         {"leaf", "0:root/5:MeasureMass"}, {"t", 1.0}}}},
      {"contact/table",
       {{{"z_ee", 0.775}, {"d_offset", 0.01}, {"leaf", "0:root/3:Down"}, {"t", 2.0},
         {"pose", {0, 0, 0.775, 0, 1, 0, 0}}}}},
      {"other", 5}};
  const MeasurementSet set = ExtractMeasurements(bb);
  ASSERT_EQ(set.masses.size(), 1u);
  ASSERT_EQ(set.contacts.size(), 1u);
  const RunEstimates run = EstimateRun(set, {});
  ASSERT_EQ(run.records.size(), 2u);
  EXPECT_NEAR(run.records[0].mean, m, 1e-12);
  EXPECT_NEAR(run.records[1].mean, 0.765, 1e-12);
  EXPECT_THROW(ExtractMeasurements({{"mass/cup", {{{"samples", 3}}}}}), EstimationError);
}

// The estimators only see recorded measurements; they never include the
// simulator or runtime headers.
TEST(Isolation, EstimationSourcesDoNotIncludeSimulatorHeaders) {
  const std::regex include(R"(#include\s+\"real2sim/(\w+)\.h\")");
  const std::set<std::string> forbidden = {"world", "world_config", "sensor_log", "runtime",
                                           "actions"};
  for (const char* file : {"core/src/estimation.cc", "core/src/measurements.cc",
                           "core/include/real2sim/estimation.h",
                           "core/include/real2sim/measurements.h"}) {
    std::ifstream in(std::filesystem::path(R2S_SOURCE_DIR) / file);
    ASSERT_TRUE(in) << file;
    std::string line;
    while (std::getline(in, line)) {
      std::smatch m;
      if (std::regex_search(line, m, include)) {
        EXPECT_EQ(forbidden.count(m[1]), 0u) << file << " includes " << m[1];
      }
    }
  }
}

}  // namespace
}  // namespace real2sim::est
