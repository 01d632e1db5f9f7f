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
#include <vector>

#include "stcm/bounds.hpp"
#include "stcm/classification.hpp"
#include "stcm/config.hpp"
#include "stcm/detection.hpp"

namespace stcm {

/// Serial loops are the reference; Parallel must reproduce them bit for bit.
enum class Execution { Serial, Parallel };

class GridSpec {
 public:
  GridSpec(const PlaneBounds& bounds, double resolution);

  int nx() const { return nx_; }
  int nz() const { return nz_; }
  std::size_t size() const { return static_cast<std::size_t>(nx_) * static_cast<std::size_t>(nz_); }

  /// Row-major over z then x: index = iz * nx + ix.
  Vec3 point(std::size_t index) const;

 private:
  PlaneBounds bounds_;
  double resolution_;
  int nx_;
  int nz_;
};

struct GridMap {
  std::vector<double> value;
  std::vector<std::uint8_t> masked;

  std::size_t masked_count() const;
};

/// CRB of the moving target's angle (alpha for SB, xi for DB), rad^2.
GridMap crb_map(const GridSpec& grid, const LinkModel& link, const HarmonicResponse& stcm,
                const std::vector<ScatterPoint>& fixed, PathKind kind, double rcs_dbsm, Execution ex);

GridMap peb_map(const GridSpec& grid, const LinkModel& link, const HarmonicResponse& stcm,
                const std::vector<ScatterPoint>& fixed, double rcs_dbsm, Execution ex);

/// Single-target xi CRB with a fixed RIS profile in place of the STCM.
GridMap ris_crb_map(const GridSpec& grid, const LinkModel& link, const RisProfile& profile, double rcs_dbsm,
                    Execution ex);

/// Marginal detection probability for one SP type and combiner.
GridMap detection_map(const GridSpec& grid, const LinkModel& link, double sigma_i, double sigma_nu,
                      double p_fa, Combiner combiner, Execution ex);

struct ConfusionPoint {
  double snr_db = 0.0;
  int true_class = 1;
  ConfusionEstimate estimate;
  ClassArray exact{};
};

/// Monte Carlo per (SNR, truth) pair. Streams are addressed by
/// (seed, task index, trial), so thread count never changes the result.
std::vector<ConfusionPoint> classification_sweep(const ClassificationModel& base, const std::vector<double>& snr_db,
                                                 const std::vector<int>& true_classes, std::int64_t n_trials,
                                                 std::uint64_t seed, Execution ex);

/// Sets the OpenMP team size; 0 keeps the runtime default.
void set_threads(int n);
int max_threads();

}  // namespace stcm
