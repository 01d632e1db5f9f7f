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


#include <boost/math/distributions/non_central_chi_squared.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gtest/gtest.h>

#include "stcm/config.hpp"
#include "stcm/detection.hpp"
#include "stcm/rng.hpp"

using namespace stcm;

namespace {

// Q1(a, b) = P(chi'^2_2(a^2) > b^2).
double marcum_oracle(double a, double b) {
  const boost::math::non_central_chi_squared dist(2.0, a * a);
  return boost::math::cdf(boost::math::complement(dist, b * b));
}

TEST(Marcum, AgreesWithNoncentralChiSquare) {
  for (double a : {0.0, 0.1, 1.0, 2.5, 5.0, 10.0, 30.0}) {
    for (double b : {0.05, 0.5, 1.0, 3.0, 4.3, 8.0, 12.0, 31.0}) {
      const double ref = marcum_oracle(a, b);
      const double q = marcum_q1(a, b);
      EXPECT_NEAR(q, ref, 1e-12 + 1e-9 * ref) << a << ' ' << b;
    }
  }
}

TEST(Marcum, Limits) {
  EXPECT_EQ(marcum_q1(3.0, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(marcum_q1(0.0, 2.0), std::exp(-2.0));
  EXPECT_NEAR(marcum_q1(200.0, 1.0), 1.0, 1e-15);
  EXPECT_NEAR(marcum_q1(1.0, 200.0), 0.0, 1e-15);
  EXPECT_THROW(marcum_q1(-1.0, 1.0), Error);
}

TEST(Detection, ThresholdHitsFalseAlarm) {
  const double g = threshold_from_pfa(1e-4);
  EXPECT_NEAR(pd_conditional(0.0, 5.0, 1.0, g), 1e-4, 1e-16);
  EXPECT_NEAR(pd_marginal(0.0, 5.0, 1.0, g), 1e-4, 1e-18);
  EXPECT_THROW(threshold_from_pfa(1.0), Error);
}

TEST(Detection, MarginalIsAverageOfConditional) {
  const double g = threshold_from_pfa(1e-4);
  const double h2 = 3.0, s2 = 0.7;
  for (double scale : {0.1, 0.6, 2.0}) {
    // |beta| Rayleigh with scale parameter `scale`.
    auto integrand = [&](double r) {
      return pd_conditional(r, h2, s2, g) * r / (scale * scale) * std::exp(-r * r / (2 * scale * scale));
    };
    const double ref = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, 0.0, 40.0 * scale, 10, 1e-12);
    EXPECT_NEAR(pd_marginal(scale, h2, s2, g), ref, 1e-9);
  }
}

TEST(Detection, StatisticMonteCarlo) {
  ExperimentConfig cfg = default_config();
  const double lambda = cfg.link.carrier_wavelength();
  const VectorXc H = despread_regressor(0.3, cfg.link.bs, cfg.link.pilots.symbols, Combiner::MatchedDespread, lambda);
  const double s2 = 1.0;
  const cdouble beta = cdouble(0.6, -0.4) * std::sqrt(s2 / H.squaredNorm());
  const double g = threshold_from_pfa(1e-2);
  RandomStream rs(9, StreamDomain::Test, 3);
  const int n = 20000;
  int hits = 0;
  for (int t = 0; t < n; ++t) {
    VectorXc Y = beta * H;
    for (Eigen::Index i = 0; i < Y.size(); ++i) Y(i) += rs.complex_normal(s2);
    hits += detection_statistic(Y, H, s2, beta).gamma_tilde > g;
  }
  const double pd = pd_conditional(beta, H.squaredNorm(), s2, g);
  EXPECT_NEAR(static_cast<double>(hits) / n, pd, 4 * std::sqrt(pd * (1 - pd) / n));
}

TEST(Detection, CombinerOrdering) {
  ExperimentConfig cfg = default_config();
  const double lambda = cfg.link.carrier_wavelength();
  const MatrixXc& X = cfg.link.pilots.symbols;
  for (double a : {-1.0, -0.3, 0.0, 0.45, 1.2}) {
    double snr[2];
    int i = 0;
    for (Combiner c : {Combiner::AllOnes, Combiner::MatchedDespread}) {
      const VectorXc H = despread_regressor(a, cfg.link.bs, X, c, lambda);
      snr[i++] = H.squaredNorm() / combined_noise_power(H, c, X, cfg.link.noise_power);
    }
    const VectorXc raw = vec(steering_vector(cfg.link.bs, a, lambda) *
                             (steering_vector(cfg.link.bs, a, lambda).transpose() * X));
    EXPECT_NEAR(snr[1], raw.squaredNorm() / cfg.link.noise_power, 1e-9 * snr[1]);
    EXPECT_GE(snr[1], snr[0] * (1 - 1e-12));
  }
  EXPECT_EQ(combiner_from_string(to_string(Combiner::AllOnes)), Combiner::AllOnes);
  EXPECT_THROW(combiner_from_string("nope"), Error);
}

TEST(Detection, ZeroRegressor) {
  EXPECT_THROW(ml_beta_estimate(VectorXc::Ones(3), VectorXc::Zero(3)), Error);
}

}  // namespace
