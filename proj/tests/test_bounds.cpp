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

#include "stcm/bounds.hpp"
#include "stcm/config.hpp"
#include "stcm/rng.hpp"

using namespace stcm;

namespace {

class Bounds : public ::testing::Test {
 protected:
  ExperimentConfig cfg = default_config();
  LinkModel& link = cfg.link;
  HarmonicResponse stcm = link.stcm_response();
  double lambda = link.carrier_wavelength();
  const MatrixXc& X() const { return link.pilots.symbols; }

  // Real-parameter FIM 2/sigma^2 Re(D^H D) with columns built by central
  // differences of the noise-free mean.
  template <class Mean>
  Eigen::Matrix3d numeric_fim(Mean mean, double angle, cdouble gain) const {
    const double h = 1e-6;
    const VectorXc u = mean(angle);
    Eigen::MatrixXcd D(u.size(), 3);
    D.col(0) = gain * (mean(angle + h) - mean(angle - h)) / (2 * h);
    D.col(1) = u;
    D.col(2) = kJ * u;
    return 2.0 / link.noise_power * (D.adjoint() * D).real();
  }
};

TEST_F(Bounds, SingleBounceAgainstNumericFim) {
  const cdouble g = path_gain(120.0, 1.0, 1.0, link.loss);
  for (double a : {-0.9, 0.2, 1.1}) {
    const Eigen::Matrix3d ref = numeric_fim([&](double x) { return sb_regressor(x, link.bs, X(), lambda); }, a, g);
    const FisherMatrix F = fim_sb_single(a, g, link.bs, X(), link.noise_power, lambda);
    EXPECT_LT((F.entries - ref).norm() / ref.norm(), 1e-7);
  }
}

TEST_F(Bounds, DoubleBounceAgainstNumericFim) {
  const cdouble g = path_gain(250.0, 1.0, 1.0, link.loss);
  const double a = 0.35;
  for (double xi : {-0.8, 0.1, 0.7}) {
    const Eigen::Matrix3d ref =
        numeric_fim([&](double x) { return db_regressor(a, x, link.bs, stcm, X(), lambda); }, xi, g);
    const FisherMatrix F = fim_db_single(xi, a, g, link.bs, stcm, X(), link.noise_power, lambda);
    EXPECT_LT((F.entries - ref).norm() / ref.norm(), 1e-7);
  }
}

TEST_F(Bounds, ClosedFormsMatchInversion) {
  RandomStream rs(5, StreamDomain::Test, 1);
  for (int i = 0; i < 100; ++i) {
    const Vec3 q(-80 + 160 * rs.uniform(), 0, 1 + 98 * rs.uniform());
    const AnglePair ang = angles_from_position(q, link.geometry);
    const PathGains pg = path_gains(q, link.geometry, 1.0, 1.0, link.loss);
    const double ca = crb_alpha_closed(ang.alpha, pg.sb_gain, link.bs, X(), link.noise_power, lambda);
    const double ia = fim_sb_single(ang.alpha, pg.sb_gain, link.bs, X(), link.noise_power, lambda).entries.inverse()(0, 0);
    EXPECT_LT(std::abs(ca - ia) / ia, 1e-9);
    const double cx = crb_xi_closed(ang.xi, ang.alpha, pg.db_gain, link.bs, stcm, X(), link.noise_power, lambda);
    const double ix =
        fim_db_single(ang.xi, ang.alpha, pg.db_gain, link.bs, stcm, X(), link.noise_power, lambda).entries.inverse()(0, 0);
    EXPECT_LT(std::abs(cx - ix) / ix, 1e-9);
  }
}

TEST_F(Bounds, ProductFormEqualsTwoTermStack) {
  const cdouble g = path_gain(210.0, 1.0, 1.0, link.loss);
  const FisherMatrix a = fim_db_single(0.4, -0.2, g, link.bs, stcm, X(), link.noise_power, lambda);
  const FisherMatrix b = fim_generic(db_derivatives(0.4, -0.2, g, link.bs, stcm, X(), lambda), link.noise_power);
  EXPECT_LT((a.entries - b.entries).norm() / b.entries.norm(), 1e-12);
}

TEST_F(Bounds, SchurComplementIsInverseDiagonal) {
  const cdouble g = path_gain(210.0, 1.0, 1.0, link.loss);
  const FisherMatrix F = fim_db_single(0.4, -0.2, g, link.bs, stcm, X(), link.noise_power, lambda);
  EXPECT_NEAR(1.0 / efim(F, 0), F.entries.inverse()(0, 0), 1e-9 * F.entries.inverse()(0, 0));
  const AngleBound b = angle_bound(F, 0);
  EXPECT_FALSE(b.masked);
  EXPECT_LT(b.condition, kMaskCondition);
}

TEST_F(Bounds, FactorizedMultiTargetMatchesReference) {
  std::vector<ScatterPoint> scene = {make_scatter_point({10, 0, 70}, ScatterKind::ObjectLike, 0.0)};
  for (const ScatterPoint& p : fixed_targets(cfg, TargetLayout::Ten)) scene.push_back(p);
  for (PathKind k : {PathKind::SB, PathKind::DB}) {
    const FisherMatrix a = fim_multi_target(scene, k, link, stcm);
    const FisherMatrix b = fim_multi_target_reference(scene, k, link, stcm);
    ASSERT_EQ(a.size(), 30);
    EXPECT_EQ(a.labels, b.labels);
    EXPECT_LT((a.entries - b.entries).norm() / b.entries.norm(), 1e-12);
    EXPECT_LT((a.entries - a.entries.transpose()).norm(), 1e-12 * a.entries.norm());
  }
}

TEST_F(Bounds, SingleTargetMultiEqualsSingle) {
  const Vec3 q(-30, 0, 45);
  const std::vector<ScatterPoint> scene = {make_scatter_point(q, ScatterKind::ObjectLike, 0.0)};
  const AnglePair ang = angles_from_position(q, link.geometry);
  const PathGains pg = path_gains(q, link.geometry, 1.0, 1.0, link.loss);
  const AngleBound b = angle_bound(fim_multi_target(scene, PathKind::DB, link, stcm), 0);
  const double c = crb_xi_closed(ang.xi, ang.alpha, pg.db_gain, link.bs, stcm, X(), link.noise_power, lambda);
  EXPECT_NEAR(b.crb, c, 1e-9 * c);
}

TEST_F(Bounds, SameAlphaTargetsAreMasked) {
  const Vec3 fixed = cfg.double_fixed_point;
  const std::vector<ScatterPoint> nuisance = {make_scatter_point(fixed, ScatterKind::ObjectLike, 0.0)};
  for (double s : {0.25, 0.5, 1.5}) {
    std::vector<ScatterPoint> scene = {make_scatter_point(s * fixed, ScatterKind::ObjectLike, 0.0)};
    scene.insert(scene.end(), nuisance.begin(), nuisance.end());
    const FisherMatrix F = fim_multi_target(scene, PathKind::SB, link, stcm);
    EXPECT_GT(F.condition_number(), 1e10);
    EXPECT_TRUE(angle_bound(F, 0).masked);
    EXPECT_THROW(efim(F, 0), Error);
    EXPECT_TRUE(peb(scene, link, stcm).masked);
  }
}

TEST_F(Bounds, PebFromInformation) {
  const Vec3 q(25, 0, 35);
  const Eigen::Matrix2d T = jacobian_angles_to_position(q, link.geometry);
  const double ja = 1e6, jx = 4e3;
  // Invert by hand: F_q = T^T diag(ja, jx) T.
  const double a = ja * T(0, 0) * T(0, 0) + jx * T(1, 0) * T(1, 0);
  const double b = ja * T(0, 0) * T(0, 1) + jx * T(1, 0) * T(1, 1);
  const double d = ja * T(0, 1) * T(0, 1) + jx * T(1, 1) * T(1, 1);
  const double ref = std::sqrt((a + d) / (a * d - b * b));
  EXPECT_NEAR(peb_from_information(ja, jx, T), ref, 1e-12 * ref);
  EXPECT_THROW(peb_from_information(0.0, jx, T), Error);

  const std::vector<ScatterPoint> scene = {make_scatter_point(q, ScatterKind::ObjectLike, 0.0)};
  const PebResult r = peb(scene, link, stcm);
  ASSERT_FALSE(r.masked);
  EXPECT_NEAR(r.peb, peb_from_information(r.alpha.efim, r.xi.efim, T), 1e-12 * r.peb);
  // The position bound can never beat either angle bound mapped through distance.
  EXPECT_GT(r.peb * r.peb, 0.0);
}

TEST_F(Bounds, JointBroadsideIsMasked) {
  const std::vector<ScatterPoint> scene = {make_scatter_point({0, 0, 50}, ScatterKind::ObjectLike, 0.0)};
  EXPECT_TRUE(peb(scene, link, stcm).masked);
}

TEST_F(Bounds, RisAngleIsNotIdentifiable) {
  const RisProfile w = uniform_ris_profile(link.panel);
  for (double deg : {-60.0, -5.0, 30.0}) {
    const Vec3 q = position_from_angles({deg2rad(0.5 * deg + 3), deg2rad(deg)}, link.geometry);
    const AnglePair ang = angles_from_position(q, link.geometry);
    const PathGains pg = path_gains(q, link.geometry, 1.0, 1.0, link.loss);
    const RisBound b = crb_ris(ang.xi, ang.alpha, pg.db_gain, w, link.panel, link.bs, X(), link.noise_power, link.fc);
    EXPECT_TRUE(b.xi.masked);
    EXPECT_TRUE(std::isfinite(b.gain_crb));
    EXPECT_GT(b.gain_crb, 0.0);
  }
}

TEST_F(Bounds, NoHarmonicsNoDoubleBounceInformation) {
  ExperimentConfig c0 = cfg;
  c0.link.harmonics.m_f = 0;
  const HarmonicResponse r0 = c0.link.stcm_response();
  const std::vector<ScatterPoint> scene = {make_scatter_point({20, 0, 50}, ScatterKind::ObjectLike, 0.0)};
  EXPECT_TRUE(angle_bound(fim_multi_target(scene, PathKind::DB, c0.link, r0), 0).masked);
}

TEST(FisherMatrix, ScaledConditionNumber) {
  Eigen::Matrix2d F;
  F << 1e20, 0, 0, 1e-5;
  EXPECT_DOUBLE_EQ(scaled_condition_number(F), 1.0);
  F << 1, 1, 1, 1;
  EXPECT_GT(scaled_condition_number(F), 1e15);
  F << 1, 0, 0, -1;
  EXPECT_TRUE(std::isinf(scaled_condition_number(F)));
}

}  // namespace
