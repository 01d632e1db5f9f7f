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

#include "stcm/detection.hpp"

#include <algorithm>
#include <string>

#include <fmt/format.h>

namespace stcm {

namespace {

// Half-width of the Poisson window in standard deviations, plus a floor for
// small means. exp(-w^2/2) with w = 12 is far below double resolution.
constexpr double kWindowSigmas = 12.0;
constexpr double kWindowFloor = 40.0;

double log_poisson(double k, double lambda) {
  if (lambda == 0.0) return k == 0.0 ? 0.0 : -std::numeric_limits<double>::infinity();
  return -lambda + k * std::log(lambda) - std::lgamma(k + 1.0);
}

}  // namespace

std::string_view to_string(Combiner c) {
  return c == Combiner::AllOnes ? "all_ones" : "matched_despread";
}

Combiner combiner_from_string(std::string_view name) {
  if (name == "all_ones" || name == "allones") return Combiner::AllOnes;
  if (name == "matched_despread" || name == "matched") return Combiner::MatchedDespread;
  throw Error(ErrorKind::InvalidConfig, "unknown combiner '" + std::string(name) + "'");
}

double marcum_q1(double a, double b) {
  if (a < 0.0 || b < 0.0) throw Error(ErrorKind::OutOfRange, "Marcum Q arguments must be non-negative");
  if (b == 0.0) return 1.0;
  const double x = 0.5 * a * a;
  const double y = 0.5 * b * b;
  if (x == 0.0) return std::exp(-y);

  const double hx = kWindowSigmas * std::sqrt(x) + kWindowFloor;
  const double hy = kWindowSigmas * std::sqrt(y) + kWindowFloor;
  const long k_lo = static_cast<long>(std::max(0.0, std::floor(x - hx)));
  const long k_hi = static_cast<long>(std::ceil(x + hx));
  // Whole window sits where the Pois(y) CDF has saturated.
  if (static_cast<double>(k_lo) > y + hy) return 1.0;
  if (static_cast<double>(k_hi) < y - hy) return 0.0;
  // P(Pois(y) <= k) is below 1e-30 for k < y - hy; start the running CDF there.
  const long c_lo = std::min(k_lo, static_cast<long>(std::max(0.0, std::floor(y - hy))));

  double cdf = 0.0;
  double sum = 0.0;
  for (long k = c_lo; k <= k_hi; ++k) {
    cdf += std::exp(log_poisson(static_cast<double>(k), y));
    if (k < k_lo) continue;
    sum += std::exp(log_poisson(static_cast<double>(k), x)) * std::min(cdf, 1.0);
  }
  return std::clamp(sum, 0.0, 1.0);
}

MatrixXc combiner_matrix(Combiner c, const MatrixXc& X) {
  const Eigen::Index M = X.rows();
  if (c == Combiner::AllOnes) return MatrixXc::Ones(M, M);
  if (X.cols() != M) throw Error(ErrorKind::DimensionMismatch, "matched de-spreading needs S = M");
  return X.adjoint();
}

VectorXc despread_regressor(double alpha, const UlaLayout& bs, const MatrixXc& X, Combiner c, double wavelength) {
  const VectorXc a = steering_vector(bs, alpha, wavelength);
  const MatrixXc Z = combiner_matrix(c, X);
  return vec((Z * a) * (a.transpose() * X));
}

double combined_noise_power(const VectorXc& H, Combiner c, const MatrixXc& X, double noise_power) {
  const MatrixXc Z = combiner_matrix(c, X);
  const Eigen::Index M = Z.rows();
  const Eigen::Index S = H.size() / M;
  const Eigen::Map<const MatrixXc> Hm(H.data(), M, S);
  const double h2 = H.squaredNorm();
  if (!(h2 > 0.0)) throw Error(ErrorKind::ZeroRegressor, "regressor is zero");
  return noise_power * (Z.adjoint() * Hm).squaredNorm() / h2;
}

cdouble ml_beta_estimate(const VectorXc& Y, const VectorXc& H) {
  if (Y.size() != H.size()) throw Error(ErrorKind::DimensionMismatch, "Y and H differ in length");
  const double h2 = H.squaredNorm();
  if (!(h2 > 0.0)) throw Error(ErrorKind::ZeroRegressor, "regressor is zero");
  return H.dot(Y) / h2;
}

double threshold_from_pfa(double p_fa) {
  if (!(p_fa > 0.0 && p_fa < 1.0)) {
    throw Error(ErrorKind::OutOfRange, fmt::format("p_fa = {} outside (0, 1)", p_fa));
  }
  return -2.0 * std::log(p_fa);
}

DetectionStatistic detection_statistic(const VectorXc& Y, const VectorXc& H, double noise_power,
                                       cdouble beta_true) {
  DetectionStatistic s;
  s.beta_hat = ml_beta_estimate(Y, H);
  s.gamma_tilde = 2.0 * H.squaredNorm() * std::norm(s.beta_hat) / noise_power;
  s.noncentrality = 2.0 * H.squaredNorm() * std::norm(beta_true) / noise_power;
  return s;
}

double pd_conditional(cdouble beta, double h_norm2, double noise_power, double gamma_th) {
  const double mu = 2.0 * h_norm2 * std::norm(beta) / noise_power;
  return marcum_q1(std::sqrt(mu), std::sqrt(gamma_th));
}

double pd_marginal(double scale, double h_norm2, double noise_power, double gamma_th) {
  return std::exp(-gamma_th * noise_power / (4.0 * h_norm2 * scale * scale + 2.0 * noise_power));
}

}  // namespace stcm
