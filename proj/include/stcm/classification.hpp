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

#include <array>
#include <cstdint>
#include <vector>

#include "stcm/channel.hpp"
#include "stcm/common.hpp"
#include "stcm/geometry.hpp"

namespace stcm {

inline constexpr int kNumClasses = 3;
using ClassArray = std::array<double, kNumClasses>;

struct HypothesisSet {
  ClassArray priors{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  ClassArray rcs_sqrts{0.0, 0.0, 0.0};  // sigma_0 = 0 < sigma_1 < sigma_2
};

/// Throws InvalidConfig on bad priors or RCS ordering.
void validate(const HypothesisSet& h);

/// Human-like (1 dBsm) and object-like (17 dBsm) targets, uniform priors.
HypothesisSet default_hypotheses();

/// varsigma = G(d) sigma_i sigma_nu sqrt(2 / pi). Throws NonPositiveDistance.
double rayleigh_scale(double sigma_i, double distance, double sigma_nu, const PathLossModel& loss);

/// 2 r / v exp(-r^2 / v), v = 2 scale^2 + estimator_var.
double likelihood_conditional(double r, double scale, double estimator_var);
double log_likelihood_conditional(double r, double scale, double estimator_var);

struct ClassPosterior {
  ClassArray posteriors{};
  int map_label = 0;
  double statistic = 0.0;
  double estimator_std = 0.0;
};

ClassPosterior posterior(double r, const ClassArray& scales, const ClassArray& priors, double estimator_var);

/// MAP region of each class on s = |beta_hat|^2, as a union of [lo, hi)
/// intervals. Scores are affine in s, so the regions come from the upper
/// envelope of three lines.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

struct DecisionRegions {
  std::array<std::vector<Interval>, kNumClasses> regions;
  int label_at(double s) const;
};

DecisionRegions decision_regions(const ClassArray& scales, const ClassArray& priors, double estimator_var);

/// How the true channel coefficient is drawn under H_j.
enum class TruthModel {
  PathGain,       // beta = G sigma_j nu, nu ~ CN(0, sigma_nu^2)
  RayleighScale,  // beta ~ CN(0, 2 varsigma_j^2)
};

struct ClassificationModel {
  HypothesisSet hypotheses;
  double gain = 1.0;  // G(d)
  double sigma_nu = 1.0;
  double estimator_var = 1.0;
  TruthModel truth = TruthModel::PathGain;

  ClassArray scales() const;
  /// E|beta|^2 under H_j.
  double truth_power(int j) const;
};

/// Estimator variance giving mean SNR E|beta_j|^2 ||H||^2 / sigma^2 = snr,
/// with sigma^2 / ||H||^2 the estimator variance.
double estimator_var_for_snr(const ClassificationModel& m, int true_class, double snr_linear);

/// Pr(decision = i | H_j) by exact integration over the MAP regions.
ClassArray confusion_exact(const ClassificationModel& m, int true_class);

struct ConfusionEstimate {
  ClassArray p{};
  ClassArray std_error{};
  std::int64_t n_trials = 0;
};

/// Monte Carlo estimate; trial t draws from stream (seed, classification, stream_base + t).
ConfusionEstimate confusion_monte_carlo(const ClassificationModel& m, int true_class, std::int64_t n_trials,
                                        std::uint64_t seed, std::uint64_t stream_base = 0);

/// Full 3x3 matrix, row j = truth, column i = decision.
Eigen::Matrix3d confusion_matrix_exact(const ClassificationModel& m);

/// Product-likelihood fusion of two independent estimates of the same target.
ClassPosterior fuse(double r_direct, double r_stcm, const ClassArray& scales_direct, const ClassArray& scales_stcm,
                    double var_direct, double var_stcm, const ClassArray& priors);

}  // namespace stcm
