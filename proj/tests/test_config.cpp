// SPDX-License-Identifier: Apache-2.0
//
// stcm-sense: sensing bounds for space-time-coding metasurface assisted MIMO
// Copyright (C) 2026 The stcm-sense authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------


#include <gtest/gtest.h>

#include "stcm/config.hpp"

using namespace stcm;
using nlohmann::json;

namespace {

TEST(Config, DefaultsMatchBaselineScenario) {
  const ExperimentConfig c = default_config();
  EXPECT_EQ(c.link.bs.m_antennas, 16);
  EXPECT_EQ(c.link.panel.size(), 64);
  EXPECT_EQ(c.link.code.code_length(), 8);
  EXPECT_DOUBLE_EQ(c.link.code.period_T0, 2e-6);
  EXPECT_DOUBLE_EQ(c.link.fc, 10e9);
  EXPECT_NEAR(c.link.pilots.symbols.squaredNorm(), std::pow(10.0, 1.2) * 1e-3, 1e-15);
  EXPECT_NEAR(c.link.noise_power, 1e-15, 1e-27);
  EXPECT_NEAR(c.hypotheses.rcs_sqrts[1], std::pow(10.0, 0.05), 1e-12);
  EXPECT_NEAR(c.hypotheses.rcs_sqrts[2], std::pow(10.0, 0.85), 1e-12);
  EXPECT_DOUBLE_EQ(c.link.geometry.baseline(), 100.0);
  EXPECT_DOUBLE_EQ(c.p_fa, 1e-4);
  EXPECT_EQ(c.n_trials, 10000);
  EXPECT_EQ(c.link.harmonics.m_f, 4);
}

TEST(Config, CodeKinds) {
  const ExperimentConfig d = default_config();
  EXPECT_EQ(d.link.code.entries, default_coding_matrix(d.link.panel).entries);
  const ExperimentConfig p = load_config(json::parse(R"({"stcm": {"code": {"kind": "philox"}}})"));
  EXPECT_EQ(p.link.code.entries, philox_coding_matrix(p.link.panel, 8, 9070).entries);
  const ExperimentConfig c = load_config(json::parse(R"({"stcm": {"code": {"kind": "column_progressive", "shift": 2}}})"));
  EXPECT_EQ(c.link.code.entries, column_progressive_code(c.link.panel, 8, 2).entries);
}

TEST(Config, OverridesMergeOntoDefaults) {
  const ExperimentConfig c = load_config(json::parse(R"({"stcm": {"m_f": 5}, "seed": 99})"));
  EXPECT_EQ(c.link.harmonics.m_f, 5);
  EXPECT_EQ(c.seed, 99u);
  EXPECT_EQ(c.link.panel.n_x, 8);
  EXPECT_EQ(c.source["stcm"]["m_f"], 5);
}

TEST(Config, RejectsInvalid) {
  EXPECT_THROW(load_config(json::parse(R"({"bs": {"antennas": 12}})")), Error);
  EXPECT_THROW(load_config(json::parse(R"({"detection": {"p_fa": 0}})")), Error);
  EXPECT_THROW(load_config(json::parse(R"({"stcm": {"code": {"kind": "magic"}}})")), Error);
  EXPECT_THROW(load_config(json::parse(R"({"targets": {"priors": [0.5, 0.5, 0.5]}})")), Error);
  EXPECT_THROW(load_config(json::parse(R"({"grid_resolution_m": -1})")), Error);
  EXPECT_THROW(load_config(json::parse(R"({"bounds": {"layouts": ["triple"]}})")), Error);
  EXPECT_THROW(load_config(json::parse("[1, 2]")), Error);
  EXPECT_THROW(load_config_file("/nonexistent/config.json"), Error);
}

TEST(Config, FixedTargetLayouts) {
  const ExperimentConfig c = default_config();
  EXPECT_TRUE(fixed_targets(c, TargetLayout::Single).empty());
  const auto d = fixed_targets(c, TargetLayout::Double);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].position, Vec3(60, 0, 40));
  const auto t = fixed_targets(c, TargetLayout::Ten);
  ASSERT_EQ(t.size(), 9u);
  for (const ScatterPoint& p : t) {
    EXPECT_NEAR(p.position.norm(), 50.0, 1e-12);
    EXPECT_TRUE(c.link.geometry.bounds().contains(p.position));
  }
}

TEST(Config, SnrSweep) {
  const SnrSweep s{-20, 50, 5};
  const auto p = s.points();
  ASSERT_EQ(p.size(), 15u);
  EXPECT_EQ(p.front(), -20.0);
  EXPECT_EQ(p.back(), 50.0);
}

}  // namespace
