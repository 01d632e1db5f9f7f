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

#include "stcm/channel.hpp"
#include "stcm/config.hpp"

using namespace stcm;

namespace {

const double kLambda = kSpeedOfLight / 10e9;

TEST(Channel, SteeringVectorHalfWavelength) {
  const UlaLayout ula = make_ula(16, kLambda / 2);
  for (double a : {-1.1, -0.2, 0.0, 0.7}) {
    const VectorXc v = steering_vector(ula, a, kLambda);
    for (int i = 0; i < 16; ++i) {
      EXPECT_LT(std::abs(v(i) - std::exp(cdouble(0, kPi * (i - 7.5) * std::sin(a)))), 1e-12);
    }
  }
}

TEST(Channel, SteeringDerivative) {
  const UlaLayout ula = make_ula(16, kLambda / 2);
  const double h = 1e-6;
  for (double a : {-1.3, -0.4, 0.1, 0.8}) {
    const VectorXc fd = (steering_vector(ula, a + h, kLambda) - steering_vector(ula, a - h, kLambda)) / (2 * h);
    const VectorXc d = steering_derivative(ula, a, kLambda);
    EXPECT_LT((d - fd).norm() / d.norm(), 1e-8);
  }
}

TEST(Channel, DftPilots) {
  const double P = dbm_to_watt(12.0);
  const PilotMatrix X = dft_pilots(16, P);
  EXPECT_EQ(X.symbols.rows(), 16);
  EXPECT_EQ(X.symbols.cols(), 16);
  EXPECT_NEAR(X.symbols.squaredNorm(), P, 1e-15);
  const MatrixXc G = X.symbols * X.symbols.adjoint();
  EXPECT_LT((G - MatrixXc::Identity(16, 16) * (P / 16)).norm(), 1e-15);
  try {
    dft_pilots(12, P);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotPerfectSquare);
  }
}

TEST(Channel, SampleCovariance) {
  const PilotMatrix X = dft_pilots(16, 1.0);
  const MatrixXc R = sample_covariance(X.symbols);
  EXPECT_LT((R - MatrixXc::Identity(16, 16) / (16.0 * 15.0)).norm(), 1e-15);
  EXPECT_THROW(sample_covariance(MatrixXc::Ones(4, 1)), Error);
}

TEST(Channel, PathLoss) {
  PathLossModel pl;
  pl.wavelength = kLambda;
  EXPECT_NEAR(pl.gain(100.0), kLambda / (4 * kPi * 1e4), 1e-20);
  const cdouble g = path_gain(100.0, 2.0, cdouble(0, 1), pl);
  EXPECT_NEAR(std::abs(g), 2 * pl.gain(100.0), 1e-20);
  EXPECT_THROW(pl.gain(0.0), Error);

  const SceneGeometry geo;
  const Vec3 q(30, 0, 40);
  EXPECT_NEAR(sb_distance(q, geo), 100.0, 1e-12);
  EXPECT_NEAR(db_distance(q, geo), 100.0 + 50.0 + std::hypot(30.0, 60.0), 1e-12);
}

TEST(Channel, NoiseFreeEchoIsLinearInGains) {
  ExperimentConfig cfg = default_config();
  const LinkModel& link = cfg.link;
  const std::vector<ScatterPoint> scene = {make_scatter_point({-25, 0, 60}, ScatterKind::HumanLike, 1.0),
                                           make_scatter_point({40, 0, 30}, ScatterKind::ObjectLike, 17.0)};
  EchoOptions opt;
  opt.add_noise = false;
  const EchoBundle echo = synthesize_echo(scene, link, opt);
  ASSERT_EQ(echo.orders.size(), 9u);
  for (const EchoComponents& c : echo.components) EXPECT_EQ(c.noise.norm(), 0.0);

  for (const StackedSignal& st : {stack_sb(echo, scene, link), stack_db(echo, scene, link)}) {
    MatrixXc H(st.y.size(), 2);
    H << st.regressors[0], st.regressors[1];
    const VectorXc beta = H.colPivHouseholderQr().solve(st.y);
    EXPECT_LT((H * beta - st.y).norm(), 1e-9 * st.y.norm());
  }
  // Recovered SB gains are the path gains themselves.
  const StackedSignal sb = stack_sb(echo, scene, link);
  MatrixXc H(sb.y.size(), 2);
  H << sb.regressors[0], sb.regressors[1];
  const VectorXc beta = H.colPivHouseholderQr().solve(sb.y);
  for (int r = 0; r < 2; ++r) {
    const PathGains pg = path_gains(scene[r].position, link.geometry, scene[r].rcs_sqrt, 1.0, link.loss);
    EXPECT_LT(std::abs(beta(r) - pg.sb_gain), 1e-9 * std::abs(pg.sb_gain));
  }
}

TEST(Channel, EchoNoiseStatistics) {
  ExperimentConfig cfg = default_config();
  EchoOptions opt;
  opt.noise_seed = 17;
  const EchoBundle a = synthesize_echo({}, cfg.link, opt);
  const EchoBundle b = synthesize_echo({}, cfg.link, opt);
  double power = 0.0;
  Eigen::Index count = 0;
  for (std::size_t i = 0; i < a.components.size(); ++i) {
    EXPECT_EQ(a.components[i].noise, b.components[i].noise);
    power += a.components[i].noise.squaredNorm();
    count += a.components[i].noise.size();
  }
  EXPECT_NEAR(power / count / cfg.link.noise_power, 1.0, 0.05);
}

}  // namespace
