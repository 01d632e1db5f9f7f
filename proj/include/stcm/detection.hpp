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

#include <string_view>

#include "stcm/channel.hpp"
#include "stcm/common.hpp"

namespace stcm {

enum class Combiner { AllOnes, MatchedDespread };

std::string_view to_string(Combiner c);
Combiner combiner_from_string(std::string_view name);

struct DetectorConfig {
  double p_fa = 1e-4;
  Combiner combiner = Combiner::MatchedDespread;
};

struct DetectionStatistic {
  cdouble beta_hat;
  double gamma_tilde = 0.0;
  double noncentrality = 0.0;
};

/// First-order Marcum Q. Poisson-mixture series
///   Q1(a,b) = sum_k Pois(k; a^2/2) P(Pois(b^2/2) <= k),
/// evaluated in the log domain over a window around a^2/2. Every term lies in
/// [0, pmf], so the truncation error is bounded by the omitted Poisson mass,
/// which the window keeps below 1e-15.
double marcum_q1(double a, double b);

/// M x M combiner: all-ones, or X^H (matched de-spreading, needs S = M).
MatrixXc combiner_matrix(Combiner c, const MatrixXc& X);

/// vec(Z A(alpha) X).
VectorXc despread_regressor(double alpha, const UlaLayout& bs, const MatrixXc& X, Combiner c, double wavelength);

/// Per-entry noise power seen by the ML estimate after combining:
/// sigma^2 H^H (I (x) Z Z^H) H / ||H||^2. Equals sigma^2 for Z = I.
double combined_noise_power(const VectorXc& H, Combiner c, const MatrixXc& X, double noise_power);

/// H^H Y / ||H||^2. Throws ZeroRegressor.
cdouble ml_beta_estimate(const VectorXc& Y, const VectorXc& H);

/// -2 ln p_fa. Throws OutOfRange unless 0 < p_fa < 1.
double threshold_from_pfa(double p_fa);

/// `beta_true` fills the non-centrality 2 ||H||^2 |beta|^2 / sigma^2 when known.
DetectionStatistic detection_statistic(const VectorXc& Y, const VectorXc& H, double noise_power,
                                       cdouble beta_true = 0.0);

/// Q1(sqrt(mu), sqrt(gamma_th)), mu = 2 ||H||^2 |beta|^2 / sigma^2.
double pd_conditional(cdouble beta, double h_norm2, double noise_power, double gamma_th);

/// exp(-gamma_th sigma^2 / (4 ||H||^2 scale^2 + 2 sigma^2)).
double pd_marginal(double scale, double h_norm2, double noise_power, double gamma_th);

}  // namespace stcm
