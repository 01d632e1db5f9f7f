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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "stcm/channel.hpp"
#include "stcm/classification.hpp"
#include "stcm/geometry.hpp"
#include "stcm/metasurface.hpp"

namespace stcm {

/// Fixed-target arrangement for the bound maps.
enum class TargetLayout { Single, Double, Ten };

std::string_view to_string(TargetLayout l);
TargetLayout target_layout_from_string(std::string_view name);

struct SnrSweep {
  double start_db = -20.0;
  double stop_db = 50.0;
  double step_db = 5.0;

  std::vector<double> points() const;
};

struct ExperimentConfig {
  LinkModel link;
  double ris_spacing = 0.0;  // same as panel unless overridden
  std::string ris_profile = "uniform";
  std::vector<TargetLayout> layouts{TargetLayout::Single, TargetLayout::Double, TargetLayout::Ten};
  Vec3 double_fixed_point{60.0, 0.0, 40.0};
  double ten_ring_radius = 50.0;
  double ten_span_deg = 72.0;
  double crb_rcs_dbsm = 0.0;

  double grid_resolution = 1.0;
  HypothesisSet hypotheses = default_hypotheses();
  double sigma_nu = 1.0;
  double p_fa = 1e-4;

  std::int64_t n_trials = 10000;
  SnrSweep snr;
  double classification_distance = 50.0;
  TruthModel truth = TruthModel::PathGain;

  std::uint64_t seed = 1;
  int threads = 0;  // 0: OpenMP default

  nlohmann::json source;  // fully-resolved configuration, for hashing
};

/// Built-in scenario defaults as JSON text; `--config` files patch these.
const char* default_config_json();

/// Parses a (possibly partial) JSON document on top of the defaults.
ExperimentConfig load_config(const nlohmann::json& overrides);
ExperimentConfig load_config_file(const std::string& path);
ExperimentConfig default_config();

/// Re-derives every dependent field after a change to `source`.
ExperimentConfig rebuild(const nlohmann::json& resolved);

/// Fixed nuisance targets for a layout (moving target excluded).
std::vector<ScatterPoint> fixed_targets(const ExperimentConfig& cfg, TargetLayout layout);

}  // namespace stcm
